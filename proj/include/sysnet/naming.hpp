#pragma once

#include <sysnet/evolution.hpp>
#include <sysnet/preprocess.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sysnet {

/// Rewrites an id-form rules file in name form. Every id token becomes its
/// entity name; "->" and everything from the first '#' on a line (the
/// #SUP/#CONF/#STAB annotations) pass through verbatim. Unknown ids are an
/// error naming the id and line.
void decode_rules(const std::filesystem::path& rules_id, const EntityIndex& index,
                  const std::filesystem::path& out);

/// The inverse transform: name tokens back to ids. decode followed by
/// encode with the same index reproduces the input byte for byte.
void encode_rules(const std::filesystem::path& rules_name, const EntityIndex& index,
                  const std::filesystem::path& out);

struct SummaryInputs {
  SnpReport report;
  std::filesystem::path ners_name_file;
  std::filesystem::path sners_name_file;
  std::vector<std::string> state_labels;
  std::optional<double> previous_snp;  // enables the new-state assessment
  double tolerance = 0.5;
  std::size_t top_sners = 10;
};

/// Builds the human-readable summary. The counts in the SnpReport must match
/// the line counts of the name-form files (a mismatch means the pipeline
/// produced inconsistent artifacts and is an error).
std::string summarize(const SummaryInputs& in);

void write_report(const SummaryInputs& in, const std::filesystem::path& out);

}  // namespace sysnet

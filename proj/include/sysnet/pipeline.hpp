#pragma once

#include <sysnet/evolution.hpp>
#include <sysnet/miner.hpp>
#include <sysnet/naming.hpp>
#include <sysnet/preprocess.hpp>

#include <filesystem>
#include <optional>
#include <vector>

namespace sysnet {

struct PipelineOptions {
  Thresholds thresholds;
  MineOptions mine;
  unsigned jobs = 1;
  std::size_t top_sners = 10;
  std::optional<double> previous_snp;
  double tolerance = 0.5;
};

struct PipelineResult {
  std::vector<StateRules> per_state;
  EvolutionRuleSet ners;
  std::vector<EvolutionRule> sners;
  SnpReport report;
};

/// Mines every state (in parallel when opts.jobs > 1), merges the per-state
/// rules into NERs, filters SNERs and computes the SNP row. State labels
/// must be unique.
PipelineResult run_pipeline(const std::vector<SysNetDb>& states, const PipelineOptions& opts);

/// Writes the full output tree under out_dir:
///   netRules/net_Rules_<i>_ID.txt   per-state rules
///   NERs_ID.txt, SNERs_ID.txt       id form
///   NERs_Name.txt, SNERs_Name.txt   name form (via the index)
///   snp.csv                         the SNP metric row
///   report.txt                      human-readable summary
void write_pipeline_outputs(const PipelineResult& result, const EntityIndex& index,
                            const std::filesystem::path& out_dir, const PipelineOptions& opts);

}  // namespace sysnet

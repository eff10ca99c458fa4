#include <sysnet/naming.hpp>

#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace sysnet {
namespace {

using TokenFn = std::function<std::string(const std::string&, std::size_t)>;

// Rewrites every rule token of every line, preserving whitespace and
// annotations (from the first '#'-initial token) verbatim.
void transform_rule_file(const std::filesystem::path& in_file,
                         const std::filesystem::path& out_file, const TokenFn& fn) {
  std::ifstream in(in_file);
  if (!in.is_open()) throw IoError("cannot open " + in_file.string());
  std::ofstream out(out_file);
  if (!out.is_open()) throw IoError("cannot write " + out_file.string());

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string result;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        std::size_t j = i;
        while (j < line.size() && std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        result.append(line, i, j - i);
        i = j;
        continue;
      }
      if (line[i] == '#') {  // annotation: rest of line verbatim
        result.append(line, i, std::string::npos);
        break;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      std::string token = line.substr(i, j - i);
      result += (token == "->") ? token : fn(token, lineno);
      i = j;
    }
    out << result << '\n';
  }
  if (!out) throw IoError("write failed: " + out_file.string());
}

}  // namespace

void decode_rules(const std::filesystem::path& rules_id, const EntityIndex& index,
                  const std::filesystem::path& out) {
  transform_rule_file(rules_id, out, [&](const std::string& token, std::size_t lineno) {
    for (char c : token) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError(rules_id.string() + ":" + std::to_string(lineno) +
                         ": expected entity id, got '" + token + "'");
    }
    std::uint64_t id = std::stoull(token);
    if (id == 0 || id > index.size())
      throw ParseError(rules_id.string() + ":" + std::to_string(lineno) + ": unknown entity id " +
                       token);
    return index.name_of(static_cast<EntityId>(id));
  });
}

void encode_rules(const std::filesystem::path& rules_name, const EntityIndex& index,
                  const std::filesystem::path& out) {
  transform_rule_file(rules_name, out, [&](const std::string& token, std::size_t lineno) {
    auto id = index.lookup(token);
    if (!id)
      throw ParseError(rules_name.string() + ":" + std::to_string(lineno) +
                       ": unknown entity name '" + token + "'");
    return std::to_string(*id);
  });
}

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in.is_open()) throw IoError("cannot open " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string format_fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, v);
  return buf;
}

}  // namespace

std::string summarize(const SummaryInputs& in) {
  auto ner_lines = read_lines(in.ners_name_file);
  auto sner_lines = read_lines(in.sners_name_file);
  if (ner_lines.size() != in.report.ner_count)
    throw ValidationError("report/file mismatch: " + std::to_string(in.report.ner_count) +
                          " NERs reported but " + std::to_string(ner_lines.size()) +
                          " lines in " + in.ners_name_file.string());
  if (sner_lines.size() != in.report.sner_count)
    throw ValidationError("report/file mismatch: " + std::to_string(in.report.sner_count) +
                          " SNERs reported but " + std::to_string(sner_lines.size()) +
                          " lines in " + in.sners_name_file.string());

  const SnpReport& r = in.report;
  std::ostringstream out;
  out << "SysNet-Analytics report\n";
  out << "thresholds (minSupCount-minConf-minStabCount): " << r.thresholds.triple() << '\n';
  out << "states (N): " << r.n_states << '\n';
  if (!in.state_labels.empty()) {
    out << "labels:";
    for (const auto& l : in.state_labels) out << ' ' << l;
    out << '\n';
  }
  out << "minStab: " << r.min_stab().decimal(2) << '\n';
  out << "NER count: " << r.ner_count << '\n';
  out << "SNER count: " << r.sner_count << '\n';
  out << "SNER fraction: " << r.sner_fraction().decimal(3) << '\n';
  out << "SNP: " << r.snp().decimal(2) << '\n';

  std::size_t shown = std::min(in.top_sners, sner_lines.size());
  out << "top SNERs by stability (" << shown << " of " << sner_lines.size() << "):\n";
  for (std::size_t i = 0; i < shown; ++i) out << "  " << sner_lines[i] << '\n';

  if (in.previous_snp) {
    double current = r.snp().value();
    StateChange change = classify_new_state(*in.previous_snp, current, in.tolerance);
    out << "previous SNP: " << format_fixed(*in.previous_snp, 2) << '\n';
    out << "SNP delta: " << format_fixed(current - *in.previous_snp, 2) << " (tolerance "
        << format_fixed(in.tolerance, 2) << ")\n";
    out << "assessment: " << state_change_description(change) << '\n';
  }
  return out.str();
}

void write_report(const SummaryInputs& in, const std::filesystem::path& out_file) {
  std::string text = summarize(in);
  std::ofstream out(out_file);
  if (!out.is_open()) throw IoError("cannot write " + out_file.string());
  out << text;
  if (!out) throw IoError("write failed: " + out_file.string());
}

}  // namespace sysnet

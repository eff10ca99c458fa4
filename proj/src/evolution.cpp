#include <sysnet/evolution.hpp>

#include <algorithm>
#include <fstream>
#include <unordered_set>

namespace sysnet {

std::vector<const EvolutionRule*> EvolutionRuleSet::ordered() const {
  std::vector<const EvolutionRule*> list;
  list.reserve(rules_.size());
  for (const auto& [rule, er] : rules_) list.push_back(&er);
  std::sort(list.begin(), list.end(), [](const EvolutionRule* a, const EvolutionRule* b) {
    if (a->stability_count != b->stability_count) return a->stability_count > b->stability_count;
    return a->rule < b->rule;
  });
  return list;
}

EvolutionRuleSet merge(const std::vector<StateRules>& per_state) {
  if (per_state.empty()) throw ValidationError("merge: at least one state required");
  std::unordered_set<std::string> labels;
  for (const StateRules& sr : per_state) {
    if (!labels.insert(sr.label).second)
      throw ValidationError("merge: duplicate state label '" + sr.label + "'");
  }

  std::unordered_map<Rule, EvolutionRule, RuleHash> rules;
  for (const StateRules& sr : per_state) {
    for (const MinedRule& mr : sr.rules) {
      auto [it, inserted] = rules.try_emplace(mr.rule);
      if (inserted) it->second.rule = mr.rule;
      // a rule counts at most once per state even if a list carries duplicates
      it->second.per_state.emplace(sr.label,
                                   StateSupport{mr.support_count, mr.antecedent_count});
    }
  }
  for (auto& [rule, er] : rules) {
    er.stability_count = static_cast<std::uint32_t>(er.per_state.size());
  }
  return EvolutionRuleSet(static_cast<std::uint32_t>(per_state.size()), std::move(rules));
}

std::vector<EvolutionRule> filter_sners(const EvolutionRuleSet& ers,
                                        std::uint32_t min_stab_count) {
  if (min_stab_count < 1 || min_stab_count > ers.n_states())
    throw ValidationError("min_stab_count must lie in 1.." + std::to_string(ers.n_states()));
  std::vector<EvolutionRule> sners;
  for (const EvolutionRule* er : ers.ordered()) {
    if (er->stability_count >= min_stab_count) sners.push_back(*er);
  }
  return sners;
}

Ratio snp_metric_exact(std::uint32_t min_stab_count, std::uint32_t n_states,
                       std::size_t sner_count, std::size_t ner_count) {
  if (n_states < 1) throw ValidationError("snp: n_states must be >= 1");
  if (min_stab_count < 1 || min_stab_count > n_states)
    throw ValidationError("snp: min_stab_count must lie in 1.." + std::to_string(n_states));
  if (sner_count > ner_count)
    throw ValidationError("snp: sner_count exceeds ner_count");
  if (ner_count == 0) return Ratio::of(0, 1);
  return Ratio::of(static_cast<std::int64_t>(min_stab_count) * static_cast<std::int64_t>(sner_count) * 100,
                   static_cast<std::int64_t>(n_states) * static_cast<std::int64_t>(ner_count));
}

double snp_metric(std::uint32_t min_stab_count, std::uint32_t n_states, std::size_t sner_count,
                  std::size_t ner_count) {
  return snp_metric_exact(min_stab_count, n_states, sner_count, ner_count).value();
}

StateChange classify_new_state(double pm_n, double pm_n_plus_1, double tol) {
  if (pm_n < 0.0 || pm_n > 100.0 || pm_n_plus_1 < 0.0 || pm_n_plus_1 > 100.0)
    throw ValidationError("persistence metrics must lie in [0,100]");
  if (tol < 0.0) throw ValidationError("tolerance must be non-negative");
  double delta = pm_n_plus_1 - pm_n;
  if (delta > tol) return StateChange::MoreStableSeries;
  if (delta < -tol) return StateChange::LessStableSeries;
  return StateChange::SimilarState;
}

std::string_view state_change_description(StateChange change) {
  switch (change) {
    case StateChange::MoreStableSeries:
      return "changes are significantly done to construct the new state";
    case StateChange::LessStableSeries:
      return "the new state has not changed much as compared to the old states";
    case StateChange::SimilarState:
      return "the new state is like the old states";
  }
  return "";
}

namespace {

void write_evolution_lines(std::ofstream& out, const std::vector<const EvolutionRule*>& list,
                           std::uint32_t n_states) {
  for (const EvolutionRule* er : list) {
    for (EntityId id : er->rule.antecedent) out << id << ' ';
    out << "->";
    for (EntityId id : er->rule.consequent) out << ' ' << id;
    out << " #STABCOUNT: " << er->stability_count
        << " #STAB: " << er->stability(n_states).decimal(2) << '\n';
  }
}

}  // namespace

void write_ner_file(const EvolutionRuleSet& ers, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out.is_open()) throw IoError("cannot write " + file.string());
  write_evolution_lines(out, ers.ordered(), ers.n_states());
  if (!out) throw IoError("write failed: " + file.string());
}

void write_sner_file(const std::vector<EvolutionRule>& sners, std::uint32_t n_states,
                     const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out.is_open()) throw IoError("cannot write " + file.string());
  std::vector<const EvolutionRule*> list;
  list.reserve(sners.size());
  for (const EvolutionRule& er : sners) list.push_back(&er);
  write_evolution_lines(out, list, n_states);
  if (!out) throw IoError("write failed: " + file.string());
}

std::string snp_csv_header() {
  return "minSupCount,minConf,minStabCount,N,minStab,SNER_count,NER_count,SNER_fraction,SNP";
}

std::string snp_csv_row(const SnpReport& report) {
  const Thresholds& t = report.thresholds;
  return std::to_string(t.min_sup_count) + "," + t.min_conf.compact() + "," +
         std::to_string(t.min_stab_count) + "," + std::to_string(report.n_states) + "," +
         report.min_stab().decimal(2) + "," + std::to_string(report.sner_count) + "," +
         std::to_string(report.ner_count) + "," + report.sner_fraction().decimal(3) + "," +
         report.snp().decimal(2);
}

void write_snp_csv(const SnpReport& report, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out.is_open()) throw IoError("cannot write " + file.string());
  out << snp_csv_header() << '\n' << snp_csv_row(report) << '\n';
  if (!out) throw IoError("write failed: " + file.string());
}

}  // namespace sysnet

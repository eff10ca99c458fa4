#pragma once

#include <sysnet/core.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sysnet {

/// Occurrence counts of a rule in one state where it was interesting.
struct StateSupport {
  std::uint32_t support_count = 0;
  std::uint32_t antecedent_count = 0;

  Ratio confidence() const { return Ratio::of(support_count, antecedent_count); }

  friend bool operator==(const StateSupport&, const StateSupport&) = default;
};

/// A distinct rule interesting in one or more states of a series.
struct EvolutionRule {
  Rule rule;
  std::uint32_t stability_count = 0;             // states where interesting
  std::map<std::string, StateSupport> per_state;  // keyed by state label

  /// stability_count / N.
  Ratio stability(std::uint32_t n_states) const {
    return Ratio::of(stability_count, n_states);
  }

  friend bool operator==(const EvolutionRule&, const EvolutionRule&) = default;
};

/// The mined rules of one state, paired with its label.
struct StateRules {
  std::string label;
  std::vector<MinedRule> rules;
};

/// All distinct rules of a series with their stability counts.
class EvolutionRuleSet {
 public:
  EvolutionRuleSet(std::uint32_t n_states,
                   std::unordered_map<Rule, EvolutionRule, RuleHash> rules)
      : n_states_(n_states), rules_(std::move(rules)) {}

  std::uint32_t n_states() const { return n_states_; }
  std::size_t ner_count() const { return rules_.size(); }
  const std::unordered_map<Rule, EvolutionRule, RuleHash>& rules() const { return rules_; }

  /// Deterministic listing: descending stability_count, then canonical form.
  std::vector<const EvolutionRule*> ordered() const;

 private:
  std::uint32_t n_states_ = 0;
  std::unordered_map<Rule, EvolutionRule, RuleHash> rules_;
};

/// Folds per-state rule lists into the distinct-rule set. A rule's
/// stability_count is the number of lists containing it (at most once per
/// state); the result does not depend on list order.
EvolutionRuleSet merge(const std::vector<StateRules>& per_state);

/// Rules with stability_count >= min_stab_count, ordered by descending
/// stability_count then canonical form. min_stab_count must lie in 1..N.
std::vector<EvolutionRule> filter_sners(const EvolutionRuleSet& ers,
                                        std::uint32_t min_stab_count);

/// (min_stab_count/n_states) * (sner_count/ner_count) * 100, in [0, 100].
/// Zero when ner_count is zero (empty sweep cells are not an error).
double snp_metric(std::uint32_t min_stab_count, std::uint32_t n_states, std::size_t sner_count,
                  std::size_t ner_count);

/// Exact form of the same quantity, used for serialization and sorting.
Ratio snp_metric_exact(std::uint32_t min_stab_count, std::uint32_t n_states,
                       std::size_t sner_count, std::size_t ner_count);

/// How a series' persistence moved when a state was appended.
enum class StateChange {
  SimilarState,      // |delta| <= tol
  MoreStableSeries,  // metric rose by more than tol
  LessStableSeries,  // metric fell by more than tol
};

StateChange classify_new_state(double pm_n, double pm_n_plus_1, double tol);
std::string_view state_change_description(StateChange change);

/// One SNP measurement: the Table-style row for a threshold triple.
struct SnpReport {
  Thresholds thresholds;
  std::uint32_t n_states = 0;
  std::size_t sner_count = 0;
  std::size_t ner_count = 0;

  Ratio min_stab() const { return Ratio::of(thresholds.min_stab_count, n_states); }
  Ratio sner_fraction() const {
    return ner_count == 0 ? Ratio::of(0, 1)
                          : Ratio::of(static_cast<std::int64_t>(sner_count),
                                      static_cast<std::int64_t>(ner_count));
  }
  Ratio snp() const {
    return snp_metric_exact(thresholds.min_stab_count, n_states, sner_count, ner_count);
  }
};

// NER/SNER files: "<X ids> -> <Y ids> #STABCOUNT: <int> #STAB: <decimal>".
void write_ner_file(const EvolutionRuleSet& ers, const std::filesystem::path& file);
void write_sner_file(const std::vector<EvolutionRule>& sners, std::uint32_t n_states,
                     const std::filesystem::path& file);

std::string snp_csv_header();
std::string snp_csv_row(const SnpReport& report);
void write_snp_csv(const SnpReport& report, const std::filesystem::path& file);

}  // namespace sysnet

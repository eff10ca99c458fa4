#include <sysnet/pipeline.hpp>

#include <sysnet/parallel.hpp>

namespace sysnet {

PipelineResult run_pipeline(const std::vector<SysNetDb>& states, const PipelineOptions& opts) {
  if (states.empty()) throw ValidationError("pipeline: at least one state required");
  opts.thresholds.validate();
  if (opts.thresholds.min_stab_count > states.size())
    throw ValidationError("min_stab_count " + std::to_string(opts.thresholds.min_stab_count) +
                          " exceeds the number of states " + std::to_string(states.size()));

  std::vector<StateRules> per_state(states.size());
  parallel_for(states.size(), opts.jobs, [&](std::size_t i) {
    per_state[i].label = states[i].state_label;
    per_state[i].rules = mine_state(states[i], opts.thresholds, opts.mine);
  });

  EvolutionRuleSet ners = merge(per_state);
  std::vector<EvolutionRule> sners = filter_sners(ners, opts.thresholds.min_stab_count);
  SnpReport report{opts.thresholds, ners.n_states(), sners.size(), ners.ner_count()};
  return PipelineResult{std::move(per_state), std::move(ners), std::move(sners), report};
}

void write_pipeline_outputs(const PipelineResult& result, const EntityIndex& index,
                            const std::filesystem::path& out_dir, const PipelineOptions& opts) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "netRules");

  for (std::size_t i = 0; i < result.per_state.size(); ++i) {
    write_rules_file(result.per_state[i].rules,
                     out_dir / "netRules" / ("net_Rules_" + std::to_string(i + 1) + "_ID.txt"));
  }
  write_ner_file(result.ners, out_dir / "NERs_ID.txt");
  write_sner_file(result.sners, result.ners.n_states(), out_dir / "SNERs_ID.txt");
  decode_rules(out_dir / "NERs_ID.txt", index, out_dir / "NERs_Name.txt");
  decode_rules(out_dir / "SNERs_ID.txt", index, out_dir / "SNERs_Name.txt");
  write_snp_csv(result.report, out_dir / "snp.csv");

  SummaryInputs summary;
  summary.report = result.report;
  summary.ners_name_file = out_dir / "NERs_Name.txt";
  summary.sners_name_file = out_dir / "SNERs_Name.txt";
  for (const StateRules& sr : result.per_state) summary.state_labels.push_back(sr.label);
  summary.previous_snp = opts.previous_snp;
  summary.tolerance = opts.tolerance;
  summary.top_sners = opts.top_sners;
  write_report(summary, out_dir / "report.txt");
}

}  // namespace sysnet

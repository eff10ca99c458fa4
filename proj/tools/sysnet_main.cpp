// sysnet: mine network evolution rules and stable rules from a series of
// directed network snapshots, and score persistence with the SNP metric.

#include <CLI11.hpp>

#include <sysnet/parallel.hpp>
#include <sysnet/pipeline.hpp>
#include <sysnet/synthgen.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace sysnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

std::string stem_of(const std::string& filename) {
  return fs::path(filename).stem().string();
}

struct Series {
  std::vector<SysNetDb> states;
  EntityIndex index;
};

// Loads a preprocess/gen output directory: SysNetDbs/SysNetDb_<i>_ID.txt in
// numeric order, IndexFile.txt, and state labels from manifest.txt when
// present (falling back to S<i>).
Series load_series(const fs::path& db_dir) {
  fs::path index_file = db_dir / "IndexFile.txt";
  if (!fs::exists(index_file)) throw IoError("missing index file " + index_file.string());

  fs::path dbs_dir = db_dir / "SysNetDbs";
  if (!fs::is_directory(dbs_dir)) throw IoError("missing database directory " + dbs_dir.string());

  std::regex pattern("SysNetDb_([0-9]+)_ID\\.txt");
  std::map<std::uint64_t, fs::path> numbered;
  for (const auto& entry : fs::directory_iterator(dbs_dir)) {
    if (!entry.is_regular_file()) continue;
    std::smatch m;
    std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) {
      numbered.emplace(std::stoull(m[1].str()), entry.path());
    }
  }
  if (numbered.empty()) throw IoError("no states found under " + dbs_dir.string());

  std::vector<std::string> labels;
  fs::path manifest = db_dir / "manifest.txt";
  if (fs::exists(manifest)) {
    for (const std::string& name : read_manifest(manifest)) labels.push_back(stem_of(name));
    if (labels.size() != numbered.size())
      throw ValidationError("manifest lists " + std::to_string(labels.size()) +
                            " states but found " + std::to_string(numbered.size()) +
                            " database files");
  } else {
    for (std::size_t i = 1; i <= numbered.size(); ++i) labels.push_back("S" + std::to_string(i));
  }

  Series series;
  series.index = read_index(index_file);
  std::size_t i = 0;
  for (const auto& [number, path] : numbered) {
    series.states.push_back(read_db(path, labels[i++]));
  }
  return series;
}

// "2,4..6" -> {2,4,5,6}
std::vector<std::uint32_t> parse_uint_list(const std::string& text) {
  std::vector<std::uint32_t> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      values.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    } else {
      std::uint32_t lo = static_cast<std::uint32_t>(std::stoul(item.substr(0, dots)));
      std::uint32_t hi = static_cast<std::uint32_t>(std::stoul(item.substr(dots + 2)));
      if (hi < lo) throw ValidationError("bad range '" + item + "'");
      for (std::uint32_t v = lo; v <= hi; ++v) values.push_back(v);
    }
  }
  // drop duplicates, keep first occurrence
  std::vector<std::uint32_t> out;
  for (std::uint32_t v : values) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

std::vector<Ratio> parse_conf_list(const std::string& text) {
  std::vector<Ratio> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    Ratio r = Ratio::from_decimal(item);
    if (std::find(values.begin(), values.end(), r) == values.end()) values.push_back(r);
  }
  return values;
}

struct PreprocessArgs {
  std::string in_dir;
  std::string manifest;
  std::string grouping = "per-source";
  std::string out_dir;
};

int cmd_preprocess(const PreprocessArgs& args) {
  GroupingStrategy grouping;
  if (args.grouping == "per-source") {
    grouping = GroupingStrategy::PerSource;
  } else if (args.grouping == "pairs") {
    grouping = GroupingStrategy::ExplicitPairs;
  } else {
    throw ValidationError("unknown grouping '" + args.grouping + "' (per-source|pairs)");
  }

  std::vector<std::string> snapshot_names;
  if (!args.manifest.empty()) {
    snapshot_names = read_manifest(args.manifest);
    if (snapshot_names.empty()) throw ValidationError("manifest lists no states");
  } else {
    for (const auto& entry : fs::directory_iterator(args.in_dir)) {
      if (!entry.is_regular_file()) continue;
      std::string name = entry.path().filename().string();
      if (!name.empty() && name[0] != '.') snapshot_names.push_back(name);
    }
    std::sort(snapshot_names.begin(), snapshot_names.end());
  }
  if (snapshot_names.empty()) throw ValidationError("no states found in " + args.in_dir);

  std::vector<std::string> labels;
  std::vector<std::vector<NamedPair>> states;
  for (const std::string& name : snapshot_names) {
    states.push_back(ingest_state(fs::path(args.in_dir) / name, grouping));
    labels.push_back(stem_of(name));
  }
  for (std::size_t i = 1; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[i] == labels[j])
        throw ValidationError("duplicate state label '" + labels[i] + "'");
    }
  }

  EncodedSeries encoded = encode_series(states, labels);

  fs::path out(args.out_dir);
  fs::create_directories(out / "SysNetDbs");
  for (std::size_t i = 0; i < encoded.states.size(); ++i) {
    write_db(encoded.states[i],
             out / "SysNetDbs" / ("SysNetDb_" + std::to_string(i + 1) + "_ID.txt"));
  }
  write_index(encoded.index, out / "IndexFile.txt");
  write_manifest(snapshot_names, out / "manifest.txt");

  std::cout << "states: " << encoded.states.size() << "\n";
  std::cout << "entities: " << encoded.index.size() << "\n";
  for (const SysNetDb& db : encoded.states) {
    std::cout << "state " << db.state_label << ": M=" << db.size() << "\n";
  }
  return kExitOk;
}

struct MineArgs {
  std::string db_dir;
  std::string out_dir;
  std::uint32_t min_sup_count = 1;
  std::string min_conf = "0";
  std::uint32_t min_stab_count = 1;
  std::uint32_t max_antecedent = 0;
  std::uint32_t max_consequent = 0;
  unsigned jobs = 1;
  std::size_t top_sners = 10;
  double prev_snp = -1.0;  // negative = not supplied
  double tolerance = 0.5;
};

int cmd_mine(const MineArgs& args) {
  Series series = load_series(args.db_dir);

  PipelineOptions opts;
  opts.thresholds = Thresholds{args.min_sup_count, Ratio::from_decimal(args.min_conf),
                               args.min_stab_count};
  opts.mine.max_antecedent = args.max_antecedent;
  opts.mine.max_consequent = args.max_consequent;
  opts.jobs = args.jobs;
  opts.top_sners = args.top_sners;
  if (args.prev_snp >= 0.0) opts.previous_snp = args.prev_snp;
  opts.tolerance = args.tolerance;

  PipelineResult result = run_pipeline(series.states, opts);
  write_pipeline_outputs(result, series.index, args.out_dir, opts);

  std::cout << opts.thresholds.triple() << ": NER_count=" << result.report.ner_count
            << " SNER_count=" << result.report.sner_count
            << " SNP=" << result.report.snp().decimal(2) << "\n";
  return kExitOk;
}

struct SweepArgs {
  std::string db_dir;
  std::string sup_list;
  std::string conf_list;
  std::string stab_list;
  std::string sort = "asc";
  std::string out_file;
  unsigned jobs = 1;
};

int cmd_sweep(const SweepArgs& args) {
  if (args.sort != "asc" && args.sort != "desc")
    throw ValidationError("--sort must be asc or desc");
  Series series = load_series(args.db_dir);
  std::uint32_t n = static_cast<std::uint32_t>(series.states.size());

  auto sups = parse_uint_list(args.sup_list);
  auto confs = parse_conf_list(args.conf_list);
  auto stabs = parse_uint_list(args.stab_list);
  if (sups.empty() || confs.empty() || stabs.empty())
    throw ValidationError("empty threshold grid");
  for (std::uint32_t s : stabs) {
    if (s < 1 || s > n)
      throw ValidationError("min_stab_count " + std::to_string(s) + " outside 1.." +
                            std::to_string(n));
  }

  std::ostringstream csv;
  csv << snp_csv_header() << '\n';
  for (std::uint32_t sup : sups) {
    for (const Ratio& conf : confs) {
      // per-state rules depend only on (sup, conf); mine once per block
      Thresholds block{sup, conf, 1};
      block.validate();
      std::vector<StateRules> per_state(series.states.size());
      parallel_for(series.states.size(), args.jobs, [&](std::size_t i) {
        per_state[i].label = series.states[i].state_label;
        per_state[i].rules = mine_state(series.states[i], block);
      });
      EvolutionRuleSet ners = merge(per_state);

      std::vector<SnpReport> rows;
      for (std::uint32_t stab : stabs) {
        auto sners = filter_sners(ners, stab);
        rows.push_back(SnpReport{Thresholds{sup, conf, stab}, n, sners.size(), ners.ner_count()});
      }
      std::stable_sort(rows.begin(), rows.end(), [&](const SnpReport& a, const SnpReport& b) {
        return args.sort == "asc" ? a.snp() < b.snp() : b.snp() < a.snp();
      });
      for (const SnpReport& row : rows) csv << snp_csv_row(row) << '\n';
    }
  }

  if (args.out_file.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(args.out_file);
    if (!out.is_open()) throw IoError("cannot write " + args.out_file);
    out << csv.str();
  }
  return kExitOk;
}

struct GenArgs {
  std::string spec_file;
  std::string out_dir;
};

int cmd_gen(const GenArgs& args) {
  PlantSpec spec = parse_plant_spec(args.spec_file);
  std::vector<SysNetDb> states = generate(spec);

  EntityId max_id = 0;
  for (const SysNetDb& db : states) {
    for (const ConnectionPair& cp : db.pairs) {
      if (!cp.left.empty()) max_id = std::max(max_id, cp.left.back());
      if (!cp.right.empty()) max_id = std::max(max_id, cp.right.back());
    }
  }
  EntityIndex index;
  for (EntityId id = 1; id <= max_id; ++id) index.get_or_add("e" + std::to_string(id));

  fs::path out(args.out_dir);
  fs::create_directories(out / "SysNetDbs");
  for (std::size_t i = 0; i < states.size(); ++i) {
    write_db(states[i], out / "SysNetDbs" / ("SysNetDb_" + std::to_string(i + 1) + "_ID.txt"));
  }
  write_index(index, out / "IndexFile.txt");

  std::cout << "states: " << states.size() << "\n";
  std::cout << "entities: " << index.size() << "\n";
  for (const SysNetDb& db : states) {
    std::cout << "state " << db.state_label << ": M=" << db.size() << "\n";
  }
  return kExitOk;
}

struct DecodeArgs {
  std::string rules_file;
  std::string index_file;
  std::string out_file;
  bool reverse = false;
};

int cmd_decode(const DecodeArgs& args) {
  EntityIndex index = read_index(args.index_file);
  if (args.reverse) {
    encode_rules(args.rules_file, index, args.out_file);
  } else {
    decode_rules(args.rules_file, index, args.out_file);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SysNet-Analytics: evolution and stable rule mining over network state series"};
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* pre_cmd = app.add_subcommand(
      "preprocess", "Encode snapshot files into SysNetDb databases and an entity index");
  pre_cmd->add_option("--in", pre.in_dir, "Directory of snapshot files")->required();
  pre_cmd->add_option("--manifest", pre.manifest,
                      "Manifest file fixing series order (default: lexicographic)");
  pre_cmd->add_option("--grouping", pre.grouping, "per-source|pairs (default per-source)");
  pre_cmd->add_option("--out", pre.out_dir, "Output directory")->required();

  MineArgs mine;
  auto* mine_cmd =
      app.add_subcommand("mine", "Mine NERs and SNERs and compute the SNP metric");
  mine_cmd->add_option("--db", mine.db_dir, "Preprocess output directory")->required();
  mine_cmd->add_option("--out", mine.out_dir, "Output directory")->required();
  mine_cmd->add_option("--min-sup-count", mine.min_sup_count, "Minimum support count (>= 1)")
      ->required();
  mine_cmd->add_option("--min-conf", mine.min_conf, "Minimum confidence in [0,1]")->required();
  mine_cmd->add_option("--min-stab-count", mine.min_stab_count, "Minimum stability count (>= 1)")
      ->required();
  mine_cmd->add_option("--max-antecedent", mine.max_antecedent, "Cap on |X| (0 = unbounded)");
  mine_cmd->add_option("--max-consequent", mine.max_consequent, "Cap on |Y| (0 = unbounded)");
  mine_cmd->add_option("--jobs", mine.jobs, "Worker threads (default 1)");
  mine_cmd->add_option("--top-sners", mine.top_sners, "SNERs listed in the report (default 10)");
  mine_cmd->add_option("--prev-snp", mine.prev_snp,
                       "Previous SNP value; adds the new-state assessment to the report");
  mine_cmd->add_option("--tol", mine.tolerance, "Assessment tolerance (default 0.5)");

  SweepArgs sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Evaluate the SNP metric over a grid of threshold triples");
  sweep_cmd->add_option("--db", sweep.db_dir, "Preprocess output directory")->required();
  sweep_cmd->add_option("--min-sup-count", sweep.sup_list, "List/range, e.g. 2,4..6")->required();
  sweep_cmd->add_option("--min-conf", sweep.conf_list, "List, e.g. 0.5,0.6")->required();
  sweep_cmd->add_option("--min-stab-count", sweep.stab_list, "List/range, e.g. 1..3")->required();
  sweep_cmd->add_option("--sort", sweep.sort, "Row order by SNP within a block: asc|desc");
  sweep_cmd->add_option("--out", sweep.out_file, "CSV output file (default: stdout)");
  sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads (default 1)");

  GenArgs gen;
  auto* gen_cmd =
      app.add_subcommand("gen", "Generate a synthetic state series with planted stable rules");
  gen_cmd->add_option("--spec", gen.spec_file, "Plant spec file")->required();
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")->required();

  DecodeArgs decode;
  auto* decode_cmd =
      app.add_subcommand("decode", "Rewrite a rules file between id form and name form");
  decode_cmd->add_option("--rules", decode.rules_file, "Rules file to transform")->required();
  decode_cmd->add_option("--index", decode.index_file, "Entity index file")->required();
  decode_cmd->add_option("--out", decode.out_file, "Output file")->required();
  decode_cmd->add_flag("--reverse", decode.reverse, "Encode names back to ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pre_cmd->parsed()) return cmd_preprocess(pre);
    if (mine_cmd->parsed()) return cmd_mine(mine);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep);
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (decode_cmd->parsed()) return cmd_decode(decode);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

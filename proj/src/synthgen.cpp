#include <sysnet/synthgen.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace sysnet {
namespace {

std::string loc(const std::filesystem::path& file, std::size_t lineno) {
  return file.string() + ":" + std::to_string(lineno);
}

std::uint64_t parse_uint(const std::string& tok, const std::string& where) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    throw ParseError(where + ": expected a non-negative integer, got '" + tok + "'");
  return std::stoull(tok);
}

}  // namespace

EntityId PlantSpec::effective_noise_start() const {
  if (noise_vocab_start != 0) return noise_vocab_start;
  EntityId max_id = 0;
  for (const PlantedRule& pr : planted) {
    for (EntityId id : pr.rule.antecedent) max_id = std::max(max_id, id);
    for (EntityId id : pr.rule.consequent) max_id = std::max(max_id, id);
  }
  return max_id + 1;
}

void PlantSpec::validate() const {
  if (n_states < 1) throw ValidationError("plant spec: states must be >= 1");
  std::unordered_set<EntityId> planted_ids;
  for (const PlantedRule& pr : planted) {
    Rule canon = canonicalize(pr.rule);
    if (canon != pr.rule) throw ValidationError("plant spec: planted rule not canonical");
    if (pr.copies < 1) throw ValidationError("plant spec: copies must be >= 1");
    if (pr.states_present.empty())
      throw ValidationError("plant spec: planted rule lists no states");
    for (std::size_t i = 0; i < pr.states_present.size(); ++i) {
      std::uint32_t s = pr.states_present[i];
      if (s < 1 || s > n_states)
        throw ValidationError("plant spec: state " + std::to_string(s) + " outside 1.." +
                              std::to_string(n_states));
      if (i > 0 && pr.states_present[i - 1] >= s)
        throw ValidationError("plant spec: state list must be strictly ascending");
    }
    for (const IdSet* side : {&pr.rule.antecedent, &pr.rule.consequent}) {
      for (EntityId id : *side) {
        if (!planted_ids.insert(id).second &&
            // an id may repeat within one rule (both sides), not across rules
            !(std::binary_search(pr.rule.antecedent.begin(), pr.rule.antecedent.end(), id) &&
              side == &pr.rule.consequent))
          throw ValidationError("plant spec: vocabulary overlap between planted rules (id " +
                                std::to_string(id) + ")");
      }
    }
  }
  if (noise_pairs_per_state > 0 && noise_vocab_size == 0)
    throw ValidationError("plant spec: noise pairs requested but noise vocabulary is empty");
  if (noise_vocab_size > 0) {
    EntityId start = effective_noise_start();
    if (start == 0) throw ValidationError("plant spec: noise vocabulary may not include id 0");
    for (EntityId id = start; id < start + noise_vocab_size; ++id) {
      if (planted_ids.count(id))
        throw ValidationError("plant spec: vocabulary overlap between noise and planted (id " +
                              std::to_string(id) + ")");
    }
  }
}

PlantSpec parse_plant_spec(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in.is_open()) throw IoError("cannot open " + file.string());

  PlantSpec spec;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "states") {
      std::string v;
      ls >> v;
      spec.n_states = static_cast<std::uint32_t>(parse_uint(v, loc(file, lineno)));
    } else if (key == "seed") {
      std::string v;
      ls >> v;
      spec.seed = parse_uint(v, loc(file, lineno));
    } else if (key == "noise-pairs") {
      std::string v;
      ls >> v;
      spec.noise_pairs_per_state = static_cast<std::uint32_t>(parse_uint(v, loc(file, lineno)));
    } else if (key == "noise-vocab") {
      std::string v;
      ls >> v;
      spec.noise_vocab_size = static_cast<std::uint32_t>(parse_uint(v, loc(file, lineno)));
    } else if (key == "noise-start") {
      std::string v;
      ls >> v;
      spec.noise_vocab_start = static_cast<EntityId>(parse_uint(v, loc(file, lineno)));
    } else if (key == "plant") {
      // plant <X ids> -> <Y ids> @ <s1,s2,...> x <copies>
      PlantedRule pr;
      std::string tok;
      IdSet* side = &pr.rule.antecedent;
      bool at_states = false, at_copies = false;
      while (ls >> tok) {
        if (tok == "->") {
          side = &pr.rule.consequent;
        } else if (tok == "@") {
          at_states = true;
          std::string states_tok;
          if (!(ls >> states_tok)) throw ParseError(loc(file, lineno) + ": missing state list");
          std::istringstream ss(states_tok);
          std::string item;
          while (std::getline(ss, item, ',')) {
            pr.states_present.push_back(
                static_cast<std::uint32_t>(parse_uint(item, loc(file, lineno))));
          }
        } else if (tok == "x") {
          at_copies = true;
          std::string copies_tok;
          if (!(ls >> copies_tok)) throw ParseError(loc(file, lineno) + ": missing copy count");
          pr.copies = static_cast<std::uint32_t>(parse_uint(copies_tok, loc(file, lineno)));
        } else {
          if (at_states || at_copies)
            throw ParseError(loc(file, lineno) + ": unexpected token '" + tok + "'");
          side->push_back(static_cast<EntityId>(parse_uint(tok, loc(file, lineno))));
        }
      }
      if (!at_states || !at_copies)
        throw ParseError(loc(file, lineno) + ": plant line needs '@ <states> x <copies>'");
      pr.rule = canonicalize(pr.rule);
      std::sort(pr.states_present.begin(), pr.states_present.end());
      spec.planted.push_back(std::move(pr));
    } else {
      throw ParseError(loc(file, lineno) + ": unknown directive '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

std::vector<SysNetDb> generate(const PlantSpec& spec) {
  spec.validate();
  EntityId noise_start = spec.effective_noise_start();
  std::vector<SysNetDb> states;
  states.reserve(spec.n_states);
  for (std::uint32_t s = 1; s <= spec.n_states; ++s) {
    SysNetDb db;
    db.state_label = "S" + std::to_string(s);
    for (const PlantedRule& pr : spec.planted) {
      if (!std::binary_search(pr.states_present.begin(), pr.states_present.end(), s)) continue;
      for (std::uint32_t c = 0; c < pr.copies; ++c) {
        db.pairs.push_back(ConnectionPair{pr.rule.antecedent, pr.rule.consequent});
      }
    }
    // per-state stream so states can be generated independently;
    // modulo keeps draws identical across standard library implementations
    std::mt19937_64 rng(spec.seed + s);
    for (std::uint32_t p = 0; p < spec.noise_pairs_per_state; ++p) {
      EntityId l = noise_start + static_cast<EntityId>(rng() % spec.noise_vocab_size);
      EntityId r = noise_start + static_cast<EntityId>(rng() % spec.noise_vocab_size);
      db.pairs.push_back(ConnectionPair{{l}, {r}});
    }
    states.push_back(std::move(db));
  }
  return states;
}

}  // namespace sysnet

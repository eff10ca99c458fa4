#include <sysnet/miner.hpp>

#include <algorithm>
#include <fstream>

namespace sysnet {
namespace {

bool is_subset(const IdSet& sub, const IdSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

void check_canonical(const IdSet& ids, const char* what) {
  if (ids.empty()) throw ValidationError(std::string(what) + " must be non-empty");
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i - 1] >= ids[i])
      throw ValidationError(std::string(what) + " must be strictly ascending");
  }
}

}  // namespace

VerticalIndex::VerticalIndex(const SysNetDb& db) : pair_count_(db.size()) {
  auto record = [this](std::unordered_map<EntityId, Bitset>& side, EntityId id, std::size_t pos) {
    auto [it, inserted] = side.try_emplace(id, Bitset(pair_count_));
    it->second.set(pos);
  };
  for (std::size_t pos = 0; pos < db.pairs.size(); ++pos) {
    for (EntityId id : db.pairs[pos].left) record(left_, id, pos);
    for (EntityId id : db.pairs[pos].right) record(right_, id, pos);
  }
  for (const auto& [id, tids] : left_) {
    left_vocab_.push_back(id);
    left_freq_[id] = static_cast<std::uint32_t>(tids.count());
  }
  for (const auto& [id, tids] : right_) {
    right_vocab_.push_back(id);
    right_freq_[id] = static_cast<std::uint32_t>(tids.count());
  }
  std::sort(left_vocab_.begin(), left_vocab_.end());
  std::sort(right_vocab_.begin(), right_vocab_.end());
}

const Bitset* VerticalIndex::left_tids(EntityId id) const {
  auto it = left_.find(id);
  return it == left_.end() ? nullptr : &it->second;
}

const Bitset* VerticalIndex::right_tids(EntityId id) const {
  auto it = right_.find(id);
  return it == right_.end() ? nullptr : &it->second;
}

std::uint32_t VerticalIndex::left_freq(EntityId id) const {
  auto it = left_freq_.find(id);
  return it == left_freq_.end() ? 0 : it->second;
}

std::uint32_t VerticalIndex::right_freq(EntityId id) const {
  auto it = right_freq_.find(id);
  return it == right_freq_.end() ? 0 : it->second;
}

std::uint32_t support_count(const SysNetDb& db, const Rule& rule) {
  check_canonical(rule.antecedent, "antecedent");
  check_canonical(rule.consequent, "consequent");
  std::uint32_t count = 0;
  for (const ConnectionPair& cp : db.pairs) {
    if (is_subset(rule.antecedent, cp.left) && is_subset(rule.consequent, cp.right)) ++count;
  }
  return count;
}

std::uint32_t antecedent_count(const SysNetDb& db, const IdSet& antecedent) {
  check_canonical(antecedent, "antecedent");
  std::uint32_t count = 0;
  for (const ConnectionPair& cp : db.pairs) {
    if (is_subset(antecedent, cp.left)) ++count;
  }
  return count;
}

Ratio confidence(const SysNetDb& db, const Rule& rule) {
  std::uint32_t ant = antecedent_count(db, rule.antecedent);
  if (ant == 0)
    throw ValidationError("confidence undefined: antecedent never occurs on a left side");
  return Ratio::of(support_count(db, rule), ant);
}

namespace {

// Pattern-growth search. A rule (X, Y) is reached exactly once: seeded as
// ({min X}, {min Y}), grown right with the remaining Y ids in ascending
// order, then grown left with the remaining X ids in ascending order. Left
// growth never re-enables right growth, and every added id must exceed the
// current maximum of its side, so no rule is produced twice.
class Grower {
 public:
  Grower(const VerticalIndex& vi, const Thresholds& t, const MineOptions& opts,
         std::vector<MinedRule>& out)
      : vi_(vi), t_(t), opts_(opts), m_(static_cast<std::uint32_t>(vi.pair_count())), out_(out) {}

  void run() {
    for (EntityId a : vi_.left_vocab()) {
      if (vi_.left_freq(a) < t_.min_sup_count) continue;
      const Bitset& lt = *vi_.left_tids(a);
      for (EntityId b : vi_.right_vocab()) {
        if (vi_.right_freq(b) < t_.min_sup_count) continue;
        Bitset tids;
        std::uint32_t sup =
            static_cast<std::uint32_t>(Bitset::and_assign(lt, *vi_.right_tids(b), tids));
        if (sup < t_.min_sup_count) continue;
        grow(Rule{{a}, {b}}, tids, sup, lt, vi_.left_freq(a), /*allow_right=*/true);
      }
    }
  }

 private:
  void grow(const Rule& rule, const Bitset& tids, std::uint32_t sup, const Bitset& ant_tids,
            std::uint32_t ant_count, bool allow_right) {
    if (Ratio::of(sup, ant_count) >= t_.min_conf)
      out_.push_back(MinedRule{rule, sup, ant_count, m_});

    if (allow_right && (opts_.max_consequent == 0 || rule.consequent.size() < opts_.max_consequent)) {
      const IdSet& vocab = vi_.right_vocab();
      auto from = std::upper_bound(vocab.begin(), vocab.end(), rule.consequent.back());
      for (auto it = from; it != vocab.end(); ++it) {
        if (vi_.right_freq(*it) < t_.min_sup_count) continue;
        Bitset next;
        std::uint32_t next_sup =
            static_cast<std::uint32_t>(Bitset::and_assign(tids, *vi_.right_tids(*it), next));
        if (next_sup < t_.min_sup_count) continue;
        Rule grown = rule;
        grown.consequent.push_back(*it);
        grow(grown, next, next_sup, ant_tids, ant_count, /*allow_right=*/true);
      }
    }

    if (opts_.max_antecedent == 0 || rule.antecedent.size() < opts_.max_antecedent) {
      const IdSet& vocab = vi_.left_vocab();
      auto from = std::upper_bound(vocab.begin(), vocab.end(), rule.antecedent.back());
      for (auto it = from; it != vocab.end(); ++it) {
        if (vi_.left_freq(*it) < t_.min_sup_count) continue;
        Bitset next;
        std::uint32_t next_sup =
            static_cast<std::uint32_t>(Bitset::and_assign(tids, *vi_.left_tids(*it), next));
        if (next_sup < t_.min_sup_count) continue;
        Bitset next_ant;
        std::uint32_t next_ant_count = static_cast<std::uint32_t>(
            Bitset::and_assign(ant_tids, *vi_.left_tids(*it), next_ant));
        Rule grown = rule;
        grown.antecedent.push_back(*it);
        grow(grown, next, next_sup, next_ant, next_ant_count, /*allow_right=*/false);
      }
    }
  }

  const VerticalIndex& vi_;
  const Thresholds& t_;
  const MineOptions& opts_;
  std::uint32_t m_;
  std::vector<MinedRule>& out_;
};

void sort_rules(std::vector<MinedRule>& rules) {
  std::sort(rules.begin(), rules.end(),
            [](const MinedRule& a, const MinedRule& b) { return rule_size_lex_less(a.rule, b.rule); });
}

// Non-empty subsets of vocab in ascending-mask order; vocab is ascending, so
// every emitted set is canonical.
std::vector<IdSet> all_subsets(const IdSet& vocab) {
  std::vector<IdSet> subsets;
  std::uint32_t k = static_cast<std::uint32_t>(vocab.size());
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    IdSet set;
    for (std::uint32_t j = 0; j < k; ++j) {
      if (mask & (1u << j)) set.push_back(vocab[j]);
    }
    subsets.push_back(std::move(set));
  }
  return subsets;
}

}  // namespace

std::vector<MinedRule> mine_state(const SysNetDb& db, const Thresholds& thresholds,
                                  const MineOptions& opts) {
  thresholds.validate();
  if (db.pairs.empty()) return {};
  VerticalIndex vi(db);
  std::vector<MinedRule> out;
  Grower(vi, thresholds, opts, out).run();
  sort_rules(out);
  return out;
}

std::vector<MinedRule> mine_state_bruteforce(const SysNetDb& db, const Thresholds& thresholds,
                                             const MineOptions& opts) {
  thresholds.validate();
  if (db.pairs.empty()) return {};

  IdSet left_vocab, right_vocab;
  for (const ConnectionPair& cp : db.pairs) {
    left_vocab.insert(left_vocab.end(), cp.left.begin(), cp.left.end());
    right_vocab.insert(right_vocab.end(), cp.right.begin(), cp.right.end());
  }
  normalize_id_set(left_vocab);
  normalize_id_set(right_vocab);
  if (!opts.override_guard &&
      (left_vocab.size() > opts.bruteforce_guard || right_vocab.size() > opts.bruteforce_guard))
    throw ValidationError("bruteforce guard exceeded (" +
                          std::to_string(std::max(left_vocab.size(), right_vocab.size())) +
                          " distinct ids on a side)");

  std::uint32_t m = static_cast<std::uint32_t>(db.size());
  std::vector<MinedRule> out;
  auto consequents = all_subsets(right_vocab);
  for (const IdSet& x : all_subsets(left_vocab)) {
    std::uint32_t ant = antecedent_count(db, x);
    if (ant == 0) continue;  // support 0 and confidence undefined
    for (const IdSet& y : consequents) {
      Rule rule{x, y};
      std::uint32_t sup = support_count(db, rule);
      if (sup < thresholds.min_sup_count) continue;
      if (Ratio::of(sup, ant) < thresholds.min_conf) continue;
      out.push_back(MinedRule{std::move(rule), sup, ant, m});
    }
  }
  sort_rules(out);
  return out;
}

void write_rules_file(const std::vector<MinedRule>& rules, const std::filesystem::path& file,
                      int conf_decimals) {
  std::ofstream out(file);
  if (!out.is_open()) throw IoError("cannot write " + file.string());
  for (const MinedRule& mr : rules) {
    for (EntityId id : mr.rule.antecedent) out << id << ' ';
    out << "->";
    for (EntityId id : mr.rule.consequent) out << ' ' << id;
    out << " #SUP: " << mr.support_count << " #CONF: " << mr.confidence().decimal(conf_decimals)
        << '\n';
  }
  if (!out) throw IoError("write failed: " + file.string());
}

}  // namespace sysnet

#pragma once

#include <sysnet/bitset.hpp>
#include <sysnet/core.hpp>

#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <vector>

namespace sysnet {

/// Occurrence bitmaps for one database: for every entity id, the set of pair
/// positions where it appears on the left (resp. right) side. Bit i of a
/// tidset corresponds to pairs[i].
class VerticalIndex {
 public:
  explicit VerticalIndex(const SysNetDb& db);

  /// nullptr when the id never occurs on that side.
  const Bitset* left_tids(EntityId id) const;
  const Bitset* right_tids(EntityId id) const;

  /// Ids occurring at least once on that side, ascending.
  const IdSet& left_vocab() const { return left_vocab_; }
  const IdSet& right_vocab() const { return right_vocab_; }

  std::uint32_t left_freq(EntityId id) const;
  std::uint32_t right_freq(EntityId id) const;

  std::size_t pair_count() const { return pair_count_; }

 private:
  std::size_t pair_count_ = 0;
  std::unordered_map<EntityId, Bitset> left_;
  std::unordered_map<EntityId, Bitset> right_;
  IdSet left_vocab_;
  IdSet right_vocab_;
  std::unordered_map<EntityId, std::uint32_t> left_freq_;
  std::unordered_map<EntityId, std::uint32_t> right_freq_;
};

/// Number of pairs (L, R) with X ⊆ L and Y ⊆ R. Direct scan; rule must be
/// canonical.
std::uint32_t support_count(const SysNetDb& db, const Rule& rule);

/// Number of pairs with X ⊆ L. X must be non-empty and ascending.
std::uint32_t antecedent_count(const SysNetDb& db, const IdSet& antecedent);

/// support_count / antecedent_count. Throws ValidationError when the
/// antecedent never occurs (confidence undefined).
Ratio confidence(const SysNetDb& db, const Rule& rule);

struct MineOptions {
  std::uint32_t max_antecedent = 0;  // 0 = unbounded
  std::uint32_t max_consequent = 0;
  // mine_state_bruteforce refuses sides with more distinct ids than this
  // unless override_guard is set; its enumeration is exponential.
  std::uint32_t bruteforce_guard = 20;
  bool override_guard = false;
};

/// All interesting rules of one state: support_count >= min_sup_count and
/// confidence >= min_conf, X drawn from left sides and Y from right sides.
/// Pattern-growth search over tidset intersections; pruning uses support
/// only (confidence is not anti-monotone). Output is duplicate-free and
/// sorted by (|X|+|Y|, canonical form). An empty database yields an empty
/// result.
std::vector<MinedRule> mine_state(const SysNetDb& db, const Thresholds& thresholds,
                                  const MineOptions& opts = {});

/// Test oracle: enumerates every non-empty X over the left vocabulary and Y
/// over the right vocabulary and applies the definitions directly. Same
/// output contract as mine_state. Exponential; guarded by
/// MineOptions::bruteforce_guard.
std::vector<MinedRule> mine_state_bruteforce(const SysNetDb& db, const Thresholds& thresholds,
                                             const MineOptions& opts = {});

/// Per-state rules file: "<X ids> -> <Y ids> #SUP: <int> #CONF: <decimal>".
void write_rules_file(const std::vector<MinedRule>& rules, const std::filesystem::path& file,
                      int conf_decimals = 2);

}  // namespace sysnet

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sysnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data; messages carry file and line where available.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A contract violation (bad arguments, broken invariant).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Entity identifier. Ids are dense positive integers assigned in
/// first-encounter order; 0 is never a valid id.
using EntityId = std::uint32_t;

/// Duplicate-free set of entity ids kept in strictly ascending order.
using IdSet = std::vector<EntityId>;

/// Sorts and deduplicates in place.
void normalize_id_set(IdSet& ids);

/// Non-negative exact rational, kept in lowest terms. Support, confidence,
/// stability and the SNP metric are all ratios of small integers; keeping
/// them exact makes threshold comparisons immune to rounding.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio of(std::int64_t num, std::int64_t den);
  /// Parses a non-negative decimal literal such as "0.6" or "1".
  static Ratio from_decimal(std::string_view text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  /// Fixed-point rendering with the given number of places, rounding
  /// halves away from zero. decimal(2) of 2/3 is "0.67".
  std::string decimal(int places) const;

  /// Shortest exact decimal when the value terminates ("0.6", "1"),
  /// otherwise falls back to six places.
  std::string compact() const;

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    auto lhs = static_cast<__int128>(a.num) * b.den;
    auto rhs = static_cast<__int128>(b.num) * a.den;
    return lhs <=> rhs;
  }
};

/// One connection pair (L, R): source entities on the left, target entities
/// on the right. Both sides are non-empty id sets; an id may appear on both
/// sides (self connections are allowed).
struct ConnectionPair {
  IdSet left;
  IdSet right;

  friend bool operator==(const ConnectionPair&, const ConnectionPair&) = default;
};

/// The database of connection pairs for one state of the series.
struct SysNetDb {
  std::string state_label;
  std::vector<ConnectionPair> pairs;

  /// M, the total number of connection pairs.
  std::size_t size() const { return pairs.size(); }

  friend bool operator==(const SysNetDb&, const SysNetDb&) = default;
};

/// A rule X -> Y in canonical form: antecedent and consequent each stored
/// strictly ascending. Two rules are equal iff their canonical forms are.
struct Rule {
  IdSet antecedent;
  IdSet consequent;

  friend bool operator==(const Rule&, const Rule&) = default;
  // Canonical-form order: antecedent lexicographic, then consequent.
  friend auto operator<=>(const Rule&, const Rule&) = default;
};

/// Returns the canonical form (both sides sorted ascending, duplicates
/// dropped). Idempotent. Throws ValidationError if either side is empty.
Rule canonicalize(Rule rule);

/// Emission order of mined rule lists: by |X|+|Y|, then canonical form.
bool rule_size_lex_less(const Rule& a, const Rule& b);

struct RuleHash {
  std::size_t operator()(const Rule& rule) const;
};

/// A rule found interesting in one state, with its occurrence counts there.
struct MinedRule {
  Rule rule;
  std::uint32_t support_count = 0;     // pairs where X ⊆ L and Y ⊆ R
  std::uint32_t antecedent_count = 0;  // pairs where X ⊆ L
  std::uint32_t db_size = 0;           // M of the owning state

  Ratio support() const { return Ratio::of(support_count, db_size); }
  Ratio confidence() const { return Ratio::of(support_count, antecedent_count); }

  friend bool operator==(const MinedRule&, const MinedRule&) = default;
};

/// The threshold triple. All comparisons against thresholds are inclusive:
/// support_count >= min_sup_count, confidence >= min_conf,
/// stability_count >= min_stab_count.
struct Thresholds {
  std::uint32_t min_sup_count = 1;
  Ratio min_conf = Ratio::of(0, 1);
  std::uint32_t min_stab_count = 1;

  /// Report form "minSupCount-minConf-minStabCount", e.g. "4-0.6-5".
  std::string triple() const;

  /// Throws ValidationError unless min_sup_count >= 1, min_conf in [0,1]
  /// and min_stab_count >= 1.
  void validate() const;
};

}  // namespace sysnet

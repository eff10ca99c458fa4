#include <doctest.h>

#include <sysnet/core.hpp>

#include <random>
#include <unordered_set>

using namespace sysnet;

TEST_CASE("ratio: exact construction and comparison") {
  CHECK(Ratio::of(2, 4) == Ratio::of(1, 2));
  CHECK(Ratio::of(0, 5) == Ratio::of(0, 1));
  CHECK(Ratio::of(1, 3) < Ratio::of(1, 2));
  CHECK(Ratio::of(2, 3) > Ratio::of(1, 2));
  CHECK(Ratio::of(1, 2) >= Ratio::of(1, 2));
  CHECK_THROWS_AS(Ratio::of(1, 0), ValidationError);
  CHECK_THROWS_AS(Ratio::of(-1, 2), ValidationError);
}

TEST_CASE("ratio: decimal parsing") {
  CHECK(Ratio::from_decimal("0.6") == Ratio::of(3, 5));
  CHECK(Ratio::from_decimal("0.5") == Ratio::of(1, 2));
  CHECK(Ratio::from_decimal("1") == Ratio::of(1, 1));
  CHECK(Ratio::from_decimal("0") == Ratio::of(0, 1));
  CHECK(Ratio::from_decimal("0.25") == Ratio::of(1, 4));
  CHECK_THROWS_AS(Ratio::from_decimal("abc"), ParseError);
  CHECK_THROWS_AS(Ratio::from_decimal(""), ParseError);
  CHECK_THROWS_AS(Ratio::from_decimal("1.2.3"), ParseError);
}

TEST_CASE("ratio: fixed rendering rounds half away from zero") {
  CHECK(Ratio::of(2, 3).decimal(2) == "0.67");
  CHECK(Ratio::of(1, 2).decimal(2) == "0.50");
  CHECK(Ratio::of(1, 8).decimal(2) == "0.13");  // 0.125 rounds up
  CHECK(Ratio::of(1000, 33).decimal(2) == "30.30");
  CHECK(Ratio::of(100, 1).decimal(2) == "100.00");
  CHECK(Ratio::of(0, 1).decimal(2) == "0.00");
  CHECK(Ratio::of(5, 1).decimal(0) == "5");
}

TEST_CASE("ratio: compact rendering") {
  CHECK(Ratio::of(3, 5).compact() == "0.6");
  CHECK(Ratio::of(1, 2).compact() == "0.5");
  CHECK(Ratio::of(1, 1).compact() == "1");
  CHECK(Ratio::of(0, 1).compact() == "0");
  CHECK(Ratio::of(1, 4).compact() == "0.25");
}

TEST_CASE("canonicalize sorts and deduplicates") {
  CHECK(canonicalize(Rule{{3, 1}, {2}}) == Rule{{1, 3}, {2}});
  CHECK(canonicalize(Rule{{1}, {2}}) == Rule{{1}, {2}});
  CHECK(canonicalize(Rule{{2, 1, 2}, {5, 5}}) == Rule{{1, 2}, {5}});
  CHECK_THROWS_AS((canonicalize(Rule{{}, {2}})), ValidationError);
  CHECK_THROWS_AS((canonicalize(Rule{{1}, {}})), ValidationError);
}

TEST_CASE("canonicalize is idempotent on random rules") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Rule raw;
    std::size_t nx = 1 + rng() % 5, ny = 1 + rng() % 5;
    for (std::size_t i = 0; i < nx; ++i) raw.antecedent.push_back(1 + rng() % 10);
    for (std::size_t i = 0; i < ny; ++i) raw.consequent.push_back(1 + rng() % 10);
    Rule once = canonicalize(raw);
    CHECK(canonicalize(once) == once);
  }
}

TEST_CASE("rule equality and hashing agree") {
  RuleHash hash;
  CHECK(hash(Rule{{1, 3}, {2}}) == hash(Rule{{1, 3}, {2}}));
  // sides are not interchangeable
  CHECK(Rule{{1}, {2, 3}} != Rule{{1, 2}, {3}});
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Rule a = canonicalize(Rule{{1 + rng() % 6, 1 + rng() % 6}, {1 + rng() % 6}});
    Rule b = canonicalize(Rule{{1 + rng() % 6, 1 + rng() % 6}, {1 + rng() % 6}});
    if (a == b) CHECK(hash(a) == hash(b));
  }
}

TEST_CASE("rule ordering: size first, then canonical form") {
  CHECK(rule_size_lex_less(Rule{{9}, {9}}, Rule{{1, 2}, {3}}));
  CHECK(rule_size_lex_less(Rule{{1}, {2}}, Rule{{1}, {3}}));
  CHECK(rule_size_lex_less(Rule{{1}, {2}}, Rule{{2}, {1}}));
  CHECK_FALSE(rule_size_lex_less(Rule{{1}, {2}}, Rule{{1}, {2}}));
}

TEST_CASE("mined rule: support and confidence accessors") {
  MinedRule mr{Rule{{1}, {2}}, 2, 3, 4};
  CHECK(mr.support() == Ratio::of(1, 2));
  CHECK(mr.confidence() == Ratio::of(2, 3));
  // 0 <= support <= confidence <= 1 for any counts with sup <= ant <= M
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t m = 1 + rng() % 20;
    std::uint32_t ant = 1 + rng() % m;
    std::uint32_t sup = rng() % (ant + 1);
    MinedRule r{Rule{{1}, {2}}, sup, ant, m};
    CHECK(r.support() >= Ratio::of(0, 1));
    CHECK(r.support() <= r.confidence());
    CHECK(r.confidence() <= Ratio::of(1, 1));
  }
}

TEST_CASE("threshold triple formatting") {
  CHECK(Thresholds{4, Ratio::from_decimal("0.6"), 5}.triple() == "4-0.6-5");
  CHECK(Thresholds{2, Ratio::from_decimal("0.5"), 2}.triple() == "2-0.5-2");
  CHECK(Thresholds{1, Ratio::from_decimal("1"), 1}.triple() == "1-1-1");
}

TEST_CASE("threshold validation") {
  CHECK_THROWS_AS((Thresholds{0, Ratio::of(1, 2), 1}.validate()), ValidationError);
  CHECK_THROWS_AS((Thresholds{1, Ratio::of(3, 2), 1}.validate()), ValidationError);
  CHECK_THROWS_AS((Thresholds{1, Ratio::of(1, 2), 0}.validate()), ValidationError);
  CHECK_NOTHROW(Thresholds{1, Ratio::of(0, 1), 1}.validate());
  CHECK_NOTHROW(Thresholds{1, Ratio::of(1, 1), 1}.validate());
}

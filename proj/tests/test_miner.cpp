#include <doctest.h>

#include <sysnet/miner.hpp>

#include <random>
#include <set>

using namespace sysnet;

namespace {

SysNetDb make_db(std::vector<ConnectionPair> pairs, std::string label = "s") {
  SysNetDb db;
  db.state_label = std::move(label);
  db.pairs = std::move(pairs);
  return db;
}

// Random database within the bruteforce guard: ids on each side drawn from a
// small pool so subset rules actually repeat.
SysNetDb random_db(std::mt19937& rng, std::size_t max_pairs = 8, EntityId left_pool = 6,
                   EntityId right_pool = 6) {
  std::vector<ConnectionPair> pairs;
  std::size_t n = 1 + rng() % max_pairs;
  for (std::size_t i = 0; i < n; ++i) {
    ConnectionPair cp;
    for (std::size_t k = 0, kk = 1 + rng() % 3; k < kk; ++k)
      cp.left.push_back(1 + rng() % left_pool);
    for (std::size_t k = 0, kk = 1 + rng() % 3; k < kk; ++k)
      cp.right.push_back(1 + rng() % right_pool);
    normalize_id_set(cp.left);
    normalize_id_set(cp.right);
    pairs.push_back(std::move(cp));
  }
  return make_db(std::move(pairs));
}

Thresholds random_thresholds(std::mt19937& rng) {
  static const Ratio confs[] = {Ratio::of(0, 1),  Ratio::of(1, 4), Ratio::of(3, 10),
                                Ratio::of(1, 2),  Ratio::of(2, 3), Ratio::of(3, 4),
                                Ratio::of(1, 1)};
  return Thresholds{1 + rng() % 4, confs[rng() % 7], 1};
}

}  // namespace

TEST_CASE("support_count follows occurrence semantics") {
  SysNetDb db = make_db({{{1}, {2}}, {{1}, {2}}, {{1}, {3}}});
  CHECK(support_count(db, Rule{{1}, {2}}) == 2);
  CHECK(support_count(db, Rule{{1}, {3}}) == 1);
  CHECK(support_count(db, Rule{{1}, {2, 3}}) == 0);

  // empty database supports nothing
  CHECK(support_count(make_db({}), Rule{{1}, {2}}) == 0);

  // side membership matters: 3 occurs on the left only
  SysNetDb db2 = make_db({{{1, 3}, {2}}});
  CHECK(support_count(db2, Rule{{1, 3}, {2}}) == 1);
  CHECK(support_count(db2, Rule{{1}, {3}}) == 0);
}

TEST_CASE("antecedent_count scans left sides only") {
  SysNetDb db = make_db({{{1}, {2}}, {{1}, {3}}});
  CHECK(antecedent_count(db, {1}) == 2);
  CHECK(antecedent_count(db, {9}) == 0);
  SysNetDb db2 = make_db({{{1, 2}, {3}}});
  CHECK(antecedent_count(db2, {1, 2}) == 1);
}

TEST_CASE("confidence is exact and guards division by zero") {
  SysNetDb db = make_db({{{1}, {2}}, {{1}, {2}}});
  CHECK(confidence(db, Rule{{1}, {2}}) == Ratio::of(1, 1));
  SysNetDb db2 = make_db({{{1}, {2}}, {{1}, {3}}});
  CHECK(confidence(db2, Rule{{1}, {2}}) == Ratio::of(1, 2));
  CHECK_THROWS_AS((confidence(db2, Rule{{7}, {2}})), ValidationError);
}

TEST_CASE("mine_state: single pair") {
  SysNetDb db = make_db({{{1}, {2}}});
  auto rules = mine_state(db, Thresholds{1, Ratio::of(1, 2), 1});
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].rule == Rule{{1}, {2}});
  CHECK(rules[0].support_count == 1);
  CHECK(rules[0].confidence() == Ratio::of(1, 1));
}

TEST_CASE("mine_state: thresholds filter (frozen via oracle)") {
  SysNetDb db = make_db({{{1}, {2}}, {{1}, {2}}, {{1}, {3}}});
  Thresholds t{2, Ratio::of(1, 2), 1};
  std::vector<MinedRule> expected{{Rule{{1}, {2}}, 2, 3, 3}};  // conf 2/3

  auto oracle = mine_state_bruteforce(db, t);
  CHECK(oracle == expected);
  auto mined = mine_state(db, t);
  CHECK(mined == expected);
  CHECK(mined[0].confidence() == Ratio::of(2, 3));
}

TEST_CASE("mine_state: nothing can qualify above M") {
  SysNetDb db = make_db({{{1}, {2}}, {{3}, {4}}});
  auto rules = mine_state(db, Thresholds{3, Ratio::of(0, 1), 1});
  CHECK(rules.empty());
}

TEST_CASE("mine_state: empty database yields empty result") {
  CHECK(mine_state(make_db({}), Thresholds{1, Ratio::of(1, 2), 1}).empty());
  CHECK(mine_state_bruteforce(make_db({}), Thresholds{1, Ratio::of(1, 2), 1}).empty());
}

TEST_CASE("mine_state: same id on both sides is a legal rule") {
  SysNetDb db = make_db({{{1}, {1}}, {{1}, {1, 2}}});
  auto rules = mine_state(db, Thresholds{2, Ratio::of(1, 1), 1});
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].rule == Rule{{1}, {1}});
  CHECK(rules[0].support_count == 2);
}

TEST_CASE("mine_state: multi-id growth (frozen via oracle)") {
  // both expansions exercised: {1,2} -> {3} and {1} -> {3,4}
  SysNetDb db = make_db({
      {{1, 2}, {3, 4}},
      {{1, 2}, {3, 4}},
      {{1}, {3}},
  });
  Thresholds t{2, Ratio::of(0, 1), 1};
  auto oracle = mine_state_bruteforce(db, t);
  auto mined = mine_state(db, t);
  CHECK(mined == oracle);
  std::vector<MinedRule> expected{
      {Rule{{1}, {3}}, 3, 3, 3},    {Rule{{1}, {4}}, 2, 3, 3},    {Rule{{2}, {3}}, 2, 2, 3},
      {Rule{{2}, {4}}, 2, 2, 3},    {Rule{{1}, {3, 4}}, 2, 3, 3}, {Rule{{1, 2}, {3}}, 2, 2, 3},
      {Rule{{1, 2}, {4}}, 2, 2, 3}, {Rule{{2}, {3, 4}}, 2, 2, 3}, {Rule{{1, 2}, {3, 4}}, 2, 2, 3},
  };
  CHECK(mined == expected);
}

TEST_CASE("mine_state honors antecedent/consequent caps") {
  SysNetDb db = make_db({{{1, 2}, {3, 4}}, {{1, 2}, {3, 4}}});
  Thresholds t{1, Ratio::of(0, 1), 1};
  MineOptions caps;
  caps.max_antecedent = 1;
  caps.max_consequent = 1;
  for (const MinedRule& mr : mine_state(db, t, caps)) {
    CHECK(mr.rule.antecedent.size() <= 1);
    CHECK(mr.rule.consequent.size() <= 1);
  }
  // capped output is exactly the oracle output restricted to the caps
  auto oracle = mine_state_bruteforce(db, t);
  std::size_t expected = 0;
  for (const MinedRule& mr : oracle) {
    if (mr.rule.antecedent.size() <= 1 && mr.rule.consequent.size() <= 1) ++expected;
  }
  CHECK(mine_state(db, t, caps).size() == expected);
}

TEST_CASE("bruteforce guard") {
  std::vector<ConnectionPair> pairs;
  for (EntityId id = 1; id <= 25; ++id) pairs.push_back({{id}, {id}});
  SysNetDb db = make_db(std::move(pairs));
  CHECK_THROWS_AS((mine_state_bruteforce(db, Thresholds{1, Ratio::of(1, 1), 1})),
                  ValidationError);
  MineOptions open;
  open.override_guard = true;
  CHECK_NOTHROW(mine_state_bruteforce(db, Thresholds{2, Ratio::of(1, 1), 1}, open));
}

TEST_CASE("property: oracle equivalence on random databases") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    SysNetDb db = random_db(rng);
    Thresholds t = random_thresholds(rng);
    CAPTURE(trial);
    CHECK(mine_state(db, t) == mine_state_bruteforce(db, t));
  }
}

TEST_CASE("property: support anti-monotonicity under growth") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    SysNetDb db = random_db(rng);
    Rule base = canonicalize(Rule{{1 + rng() % 6}, {1 + rng() % 6}});
    EntityId extra = 1 + rng() % 6;

    Rule grown_left = base;
    grown_left.antecedent.push_back(extra);
    grown_left = canonicalize(grown_left);
    CHECK(support_count(db, grown_left) <= support_count(db, base));

    Rule grown_right = base;
    grown_right.consequent.push_back(extra);
    grown_right = canonicalize(grown_right);
    CHECK(support_count(db, grown_right) <= support_count(db, base));
  }
}

TEST_CASE("property: raising a threshold never adds rules") {
  std::mt19937 rng(47);
  auto rule_set = [](const std::vector<MinedRule>& rules) {
    std::set<Rule> set;
    for (const MinedRule& mr : rules) set.insert(mr.rule);
    return set;
  };
  for (int trial = 0; trial < 60; ++trial) {
    SysNetDb db = random_db(rng);
    Thresholds lo = random_thresholds(rng);
    auto base = rule_set(mine_state(db, lo));

    Thresholds sup_up = lo;
    sup_up.min_sup_count += 1 + rng() % 2;
    auto raised_sup = rule_set(mine_state(db, sup_up));
    for (const Rule& r : raised_sup) CHECK(base.count(r) == 1);
    CHECK(raised_sup.size() <= base.size());

    Thresholds conf_up = lo;
    conf_up.min_conf = Ratio::of(lo.min_conf.num + lo.min_conf.den, 2 * lo.min_conf.den);
    if (conf_up.min_conf <= Ratio::of(1, 1)) {
      auto raised_conf = rule_set(mine_state(db, conf_up));
      for (const Rule& r : raised_conf) CHECK(base.count(r) == 1);
      CHECK(raised_conf.size() <= base.size());
    }
  }
}

TEST_CASE("property: every emitted rule satisfies the thresholds exactly") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    SysNetDb db = random_db(rng);
    Thresholds t = random_thresholds(rng);
    auto mined = mine_state(db, t);
    std::set<Rule> seen;
    for (const MinedRule& mr : mined) {
      CHECK(seen.insert(mr.rule).second);  // no duplicates
      CHECK(support_count(db, mr.rule) == mr.support_count);
      CHECK(antecedent_count(db, mr.rule.antecedent) == mr.antecedent_count);
      CHECK(mr.support_count >= t.min_sup_count);
      CHECK(confidence(db, mr.rule) >= t.min_conf);
    }
  }
}

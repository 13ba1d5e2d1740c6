#include <gtest/gtest.h>

#include <random>

#include "dio/oracle.hpp"
#include "dio/propagation.hpp"
#include "support/oracles.hpp"

using namespace dio;

namespace {

EnSystem random_system(std::mt19937_64& rng, std::uint32_t n, int count) {
  std::uniform_int_distribution<std::uint32_t> idx(1, n);
  std::vector<EnEquation> eqs;
  for (int e = 0; e < count; ++e) {
    switch (rng() % 5) {
      case 0: eqs.push_back(EnEquation::one(idx(rng))); break;
      case 1:
      case 2: eqs.push_back(EnEquation::add(idx(rng), idx(rng), idx(rng))); break;
      default: eqs.push_back(EnEquation::mul(idx(rng), idx(rng), idx(rng))); break;
    }
  }
  return EnSystem(n, eqs);
}

}  // namespace

TEST(Propagation, BasicRules) {
  EnSystem s(4, {EnEquation::one(1), EnEquation::add(1, 1, 2), EnEquation::mul(2, 3, 4)});
  auto r = propagate(s, {{4, 10}}, Domain::kIntegers);
  EXPECT_EQ(r.outcome, PropagationResult::Outcome::kComplete);
  EXPECT_EQ(r.values.at(3), 5);
  auto bad = propagate(s, {{4, 7}}, Domain::kIntegers);
  EXPECT_EQ(bad.outcome, PropagationResult::Outcome::kContradiction);
  EXPECT_EQ(bad.conflict, EnEquation::mul(2, 3, 4));
}

TEST(Propagation, ZeroFactorLeavesOtherFactorOpen) {
  EnSystem s(3, {EnEquation::mul(1, 2, 3)});
  auto r = propagate(s, {{1, 0}}, Domain::kIntegers);
  EXPECT_EQ(r.outcome, PropagationResult::Outcome::kStuck);
  EXPECT_EQ(r.values.at(3), 0);
  EXPECT_EQ(r.undetermined, std::vector<std::uint32_t>{2});
}

TEST(Propagation, DegeneratePatterns) {
  EXPECT_EQ(propagate(EnSystem(1, {EnEquation::add(1, 1, 1)}), {}, Domain::kIntegers).values.at(1), 0);
  EXPECT_EQ(propagate(EnSystem(1, {EnEquation::add(1, 1, 1)}), {}, Domain::kNaturals).values.at(1), 0);
  // x * x = y: the root is ambiguous over the integers unless it is zero.
  EnSystem sq(2, {EnEquation::mul(1, 1, 2)});
  EXPECT_EQ(propagate(sq, {{2, 9}}, Domain::kIntegers).outcome, PropagationResult::Outcome::kStuck);
  EXPECT_EQ(propagate(sq, {{2, 9}}, Domain::kNaturals).values.at(1), 3);
  EXPECT_EQ(propagate(sq, {{2, 0}}, Domain::kIntegers).values.at(1), 0);
  EXPECT_EQ(propagate(sq, {{2, 8}}, Domain::kIntegers).outcome, PropagationResult::Outcome::kContradiction);
  EXPECT_EQ(propagate(sq, {{2, -1}}, Domain::kIntegers).outcome, PropagationResult::Outcome::kContradiction);
  // x + y = x forces y = 0.
  EXPECT_EQ(propagate(EnSystem(2, {EnEquation::add(1, 2, 1)}), {}, Domain::kIntegers).values.at(2), 0);
  // Negative values are contradictions over the naturals.
  EnSystem sub(3, {EnEquation::add(1, 2, 3)});
  EXPECT_EQ(propagate(sub, {{1, 5}, {3, 2}}, Domain::kNaturals).outcome,
            PropagationResult::Outcome::kContradiction);
  EXPECT_EQ(propagate(sub, {{1, 5}, {3, 2}}, Domain::kIntegers).values.at(2), -3);
}

// Every deduction agrees with every actual solution that extends the seed.
TEST(Propagation, SoundAgainstBruteForce) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 400; ++trial) {
    std::uint32_t n = 2 + trial % 3;
    auto s = random_system(rng, n, 3);
    Domain dom = trial % 2 ? Domain::kIntegers : Domain::kNaturals;
    long long lo = dom == Domain::kIntegers ? -3 : 0;
    std::uint32_t seeded = 1 + rng() % n;
    long long seed_value = lo + static_cast<long long>(rng() % 4);
    auto r = propagate(s, {{seeded, seed_value}}, dom);
    for (const auto& x : oracle::grid(n, lo, 3)) {
      if (x[seeded - 1] != seed_value) continue;
      std::map<std::uint32_t, long long> v;
      for (std::uint32_t i = 1; i <= n; ++i) v[i] = x[i - 1];
      if (!oracle::satisfies(s, v)) continue;
      ASSERT_NE(r.outcome, PropagationResult::Outcome::kContradiction) << serialize(s);
      for (const auto& [i, val] : r.values) ASSERT_EQ(val, v[i]) << serialize(s);
    }
  }
}

TEST(Propagation, ConfluentUnderShuffling) {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 300; ++trial) {
    std::uint32_t n = 6;
    auto s = random_system(rng, n, 8);
    Assignment seed{{1, static_cast<long long>(rng() % 5)}};
    auto base = propagate(s, seed, Domain::kIntegers);
    if (base.outcome == PropagationResult::Outcome::kContradiction) continue;
    for (std::uint64_t shuffle = 1; shuffle <= 5; ++shuffle) {
      auto r = propagate(s, seed, Domain::kIntegers, shuffle);
      ASSERT_EQ(r.outcome, base.outcome);
      ASSERT_EQ(r.values, base.values);
    }
  }
}

TEST(Propagation, UndoRestoresState) {
  EnSystem s(3, {EnEquation::add(1, 2, 3)});
  Propagator prop(s, Domain::kIntegers);
  ASSERT_TRUE(prop.run_all());
  auto m = prop.mark();
  ASSERT_TRUE(prop.assign(1, 2));
  ASSERT_TRUE(prop.assign(2, 3));
  EXPECT_EQ(*prop.value(3), 5);
  prop.undo(m);
  EXPECT_FALSE(prop.determined(1));
  EXPECT_FALSE(prop.determined(3));
  ASSERT_TRUE(prop.assign(3, 1));
  EXPECT_FALSE(prop.assign(1, 1) && prop.assign(2, 1));
  prop.undo(m);
  EXPECT_FALSE(prop.failed());
}

TEST(Search, CountsMatchBruteForce) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    std::uint32_t n = 3;
    auto s = random_system(rng, n, 2);
    std::size_t brute = 0;
    for (const auto& x : oracle::grid(n, -2, 2)) {
      std::map<std::uint32_t, long long> v{{1, x[0]}, {2, x[1]}, {3, x[2]}};
      brute += oracle::satisfies(s, v);
    }
    Propagator prop(s, Domain::kIntegers);
    std::size_t found = 0;
    if (prop.run_all()) {
      std::vector<BigInt> vals{-2, -1, 0, 1, 2};
      auto res = search_solutions(
          prop, {}, [&](std::uint32_t) { return vals; }, 1'000'000,
          [&](const Propagator& p) {
            bool in_box = true;
            for (std::uint32_t i = 1; i <= n; ++i) in_box &= abs(*p.value(i)) <= 2;
            found += in_box;
            return true;
          });
      EXPECT_FALSE(res.truncated);
    }
    EXPECT_EQ(found, brute) << serialize(s);
  }
}

#include <gtest/gtest.h>

#include "dio/error.hpp"
#include "dio/family.hpp"
#include "support/oracles.hpp"

using namespace dio;

TEST(Family, CardinalityFormula) {
  std::vector<std::uint32_t> one{1};
  EXPECT_EQ(card_T(BigInt(2), one), 25);
  std::vector<std::uint32_t> two{1, 1};
  EXPECT_EQ(card_T_nonnegative(BigInt(4), two), 625);
  EXPECT_EQ(card_T(BigInt(0), two), 1);
  FamilyDescriptor d{2, -1, 1, {2, 1}};
  EXPECT_EQ(card_T(d), 729);
  EXPECT_TRUE(card_within(d, 729));
  EXPECT_FALSE(card_within(d, 728));
}

TEST(Family, EnumerationMatchesBruteForce) {
  for (auto [lo, hi] : std::vector<std::pair<int, int>>{{-1, 1}, {0, 2}, {-2, 2}, {0, 0}}) {
    for (auto bounds : std::vector<std::vector<std::uint32_t>>{{1}, {2}, {1, 1}, {0, 1}, {1, 0, 1}}) {
      FamilyDescriptor d{bounds.size(), lo, hi, bounds};
      if (!card_within(d, 20000)) continue;
      auto members = enumerate_T(d, 20000);
      ASSERT_EQ(BigInt(members.size()), card_T(d));
      std::set<oracle::Dense> got;
      for (const auto& m : members) got.insert(oracle::from_poly(m));
      EXPECT_EQ(got, oracle::brute_family(lo, hi, bounds));
    }
  }
}

TEST(Family, CapIsEnforced) {
  FamilyDescriptor d{2, -2, 2, {1, 1}};
  try {
    enumerate_T(d, 624);
    FAIL();
  } catch (const FamilyTooLarge& e) {
    EXPECT_EQ(e.card(), 625);
    EXPECT_EQ(e.cap(), 624);
    EXPECT_EQ(e.code(), ErrorCode::kFamilyTooLarge);
  }
  EXPECT_EQ(enumerate_T(d, 625).size(), 625u);
}

TEST(Family, RanksAreABijection) {
  FamilyDescriptor d{2, -1, 2, {1, 2}};
  Family f(d, 1'000'000);
  ASSERT_EQ(BigInt(f.size()), card_T(d));
  for (std::size_t r = 0; r < f.size(); ++r) {
    auto c = f.coefficients(r);
    ASSERT_EQ(f.rank_of(c), r);
    ASSERT_EQ(f.rank_of(f.polynomial(r)), r);
  }
  auto outside = Polynomial::variable(2, 1).pow(2);
  EXPECT_FALSE(f.rank_of(outside));
  EXPECT_FALSE(f.rank_of(Polynomial::constant(2, 3)));
}

TEST(Family, ProductSlots) {
  FamilyDescriptor d{2, 0, 1, {1, 1}};
  Family f(d, 1000);
  for (std::size_t a = 0; a < f.slots(); ++a) {
    for (std::size_t b = 0; b < f.slots(); ++b) {
      auto prod = f.grid()[a] * f.grid()[b];
      bool inside = prod[0] <= 1 && prod[1] <= 1;
      auto slot = f.product_slot(a, b);
      ASSERT_EQ(slot.has_value(), inside);
      if (slot) EXPECT_EQ(f.grid()[*slot], prod);
    }
  }
}

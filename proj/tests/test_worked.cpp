#include <gtest/gtest.h>

#include "dio/eqn_io.hpp"
#include "dio/error.hpp"
#include "dio/family.hpp"
#include "dio/oracle.hpp"
#include "dio/pipeline.hpp"
#include "dio/propagation.hpp"
#include "dio/reducer.hpp"

using namespace dio;

namespace {

Polynomial P(const char* text, std::size_t arity) { return parse_polynomial(text, arity); }
std::vector<BigInt> pt(std::initializer_list<long long> v) { return {v.begin(), v.end()}; }
RepresentationFile rep_of(const char* w) { return parse_representation(std::string("REP r=2\n") + w + "\n"); }

}  // namespace

TEST(Worked, PolynomialBasics) {
  EXPECT_EQ(eval(Polynomial(2), pt({5, 7})), 0);
  EXPECT_EQ(eval(P("x1 - x2", 2), pt({3, 3})), 0);
  EXPECT_EQ(eval(P("2*x1^2*x2 - 3", 2), pt({2, 5})), 37);
  EXPECT_EQ(degree_in(P("x1 - x2", 2), 1), 1u);
  EXPECT_EQ(degree_in(P("2*x1^2*x2", 2), 2), 1u);
  EXPECT_EQ(degree_in(Polynomial(2), 1), 0u);
  EXPECT_EQ(max_abs_coeff(P("2*x1 - 2*x2", 2)), 2);
  EXPECT_EQ(max_abs_coeff(P("x1 - x2^2*5", 2)), 5);
  EXPECT_EQ(max_abs_coeff(Polynomial(2)), 0);
  EXPECT_EQ(P("x1 - x2", 2).scaled(2), P("2*x1 - 2*x2", 2));
  EXPECT_EQ(P("x1 - x2", 2) + P("3*x1 + 3*x2", 2), P("4*x1 + 2*x2", 2));
  EXPECT_EQ(P("x1 - 1", 1).squared(), P("x1^2 - 2*x1 + 1", 1));
  EXPECT_EQ(parse_equation("x1*x1 = x2").normalized, P("x1^2 - x2", 2));
  EXPECT_EQ(format_polynomial(P("x1 - x2", 2)), "x1 - x2");
}

TEST(Worked, Systems) {
  EXPECT_EQ(validate(EnSystem(2, {EnEquation::add(1, 2, 3)})).size(), 1u);
  EXPECT_TRUE(validate(EnSystem(3, {EnEquation::one(1), EnEquation::add(1, 1, 2)})).empty());
  EXPECT_TRUE(validate(EnSystem(1, {EnEquation::mul(1, 1, 1)})).empty());
  EXPECT_TRUE(check_assignment(EnSystem(1, {EnEquation::one(1)}), {{1, 1}}, Domain::kIntegers).satisfied());
  EnSystem dbl(1, {EnEquation::add(1, 1, 1)});
  EXPECT_TRUE(check_assignment(dbl, {{1, 0}}, Domain::kIntegers).satisfied());
  EXPECT_EQ(check_assignment(dbl, {{1, 2}}, Domain::kIntegers).status, AssignmentCheck::Status::kViolated);
  EXPECT_TRUE(check_assignment(EnSystem(2, {EnEquation::mul(1, 1, 2)}), {{1, 3}, {2, 9}}, Domain::kNaturals)
                  .satisfied());
  EXPECT_EQ(serialize(EnSystem(1, {EnEquation::one(1)})), "ENSYS 1\nn 1\nONE 1\n");
  EXPECT_THROW(deserialize("ENSYS 1\nn 3\nADD 1 2 9\n"), Error);
}

TEST(Worked, Families) {
  std::vector<std::uint32_t> b33{3, 3};
  EXPECT_EQ(card_T(BigInt(0), b33), 1);
  auto consts = enumerate_T({1, -1, 1, {0}}, 100);
  ASSERT_EQ(consts.size(), 3u);
  auto lin = enumerate_T({1, -2, 2, {1}}, 100);
  EXPECT_EQ(lin.size(), 25u);
  EXPECT_NE(std::find(lin.begin(), lin.end(), P("2*x1", 1)), lin.end());
  EXPECT_NE(std::find(lin.begin(), lin.end(), Polynomial::constant(1, -2)), lin.end());
  EXPECT_THROW(enumerate_T({2, -5, 5, {9, 9}}, 1'000'000), FamilyTooLarge);
}

TEST(Worked, HalvedPinsZero) {
  auto d = P("3*x1", 1);
  auto red = build_halved_z(d);
  EXPECT_EQ(red.system.n(), 49u);
  auto proj = solution_projection(red.system, 1, Box::cube(1, -5, 5), Domain::kIntegers);
  EXPECT_EQ(proj, (std::vector<std::vector<BigInt>>{{0}}));
}

TEST(Worked, MasterValues) {
  auto m = build_master_z(P("x1 - x2", 2));
  EXPECT_EQ(eval(m, pt({5, 5, 2, 1, 0, 0, 2, 1, 0, 0})), 0);
  for (long long a = -2; a <= 2; ++a) EXPECT_GT(eval(m, pt({-1, -1, a, a, 1, 0, 0, 0, 0, 1})), 0);
}

TEST(Worked, Thresholds) {
  EXPECT_EQ(threshold(3, Domain::kIntegers), 10u);
  EXPECT_EQ(threshold(10, Domain::kIntegers), 24u);
  EXPECT_THROW(threshold(2, Domain::kNaturals), Error);
  auto psi = build_psi(rep_of("x1 - x2"), Domain::kNaturals);
  EXPECT_EQ(psi.system, EnSystem(3, {EnEquation::add(3, 2, 1), EnEquation::add(3, 3, 3)}, psi.system.names()));
  auto odd = assemble(psi, 11);
  EXPECT_EQ(odd.layout.padding_count, 1u);
  auto r = propagate(odd.system, {}, Domain::kNaturals);
  EXPECT_EQ(r.values.at(2), 11);
}

TEST(Worked, Propagation) {
  auto sys = assemble(build_psi(rep_of("x1 - x2"), Domain::kNaturals), 10);
  auto r = propagate(sys.system, {}, Domain::kNaturals);
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_EQ(r.values.at(sys.layout.t(k)), k);
  EXPECT_EQ(r.values.at(sys.layout.w), 10);
  EXPECT_EQ(r.values.at(sys.layout.y), 0);
  EXPECT_EQ(r.values.at(2), 10);
  auto c = propagate(EnSystem(3, {EnEquation::mul(1, 2, 3)}), {{3, 6}, {1, 4}}, Domain::kIntegers);
  EXPECT_EQ(c.outcome, PropagationResult::Outcome::kContradiction);
}

TEST(Worked, Roots) {
  EXPECT_EQ(enumerate_roots(P("x1 - x2", 2), Box::cube(2, -2, 2), Domain::kIntegers).size(), 5u);
  EXPECT_TRUE(enumerate_roots(P("x1^2 + 1", 1), Box::cube(1, -10, 10), Domain::kIntegers).empty());
  auto divisors = enumerate_roots(P("x1*x2 - 6", 2), Box::cube(2, 1, 6), Domain::kNaturals);
  EXPECT_EQ(divisors, (std::vector<std::vector<BigInt>>{{1, 6}, {2, 3}, {3, 2}, {6, 1}}));
}

TEST(Worked, Lifts) {
  auto red = build_compact_z(P("x1 - x2", 2));
  auto q = std::get<IntegerAnchor>(red.certificate.anchor).q;
  auto on = lift(red.certificate, pt({3, 3}));
  EXPECT_EQ(on.at(1), 3);
  EXPECT_EQ(on.at(q), 0);
  auto off = lift(red.certificate, pt({4, 1}));
  EXPECT_EQ(off.at(q), 3);
  auto chk = check_assignment(red.system, off, Domain::kIntegers);
  EXPECT_EQ(chk.violated, EnEquation::add(q, q, q));
  auto full = build_full_n(P("x1 - x2", 2));
  auto a = lift(full.certificate, pt({2, 2}));
  EXPECT_EQ(a.at(4), 12);
  EXPECT_EQ(a.at(5), 12);
}

TEST(Worked, Equivalence) {
  auto d = P("x1 - x2", 2);
  auto c = build_compact_z(d);
  auto r1 = check_equivalence(d, c.system, c.certificate, Box::cube(2, -3, 3), Domain::kIntegers);
  EXPECT_TRUE(r1.passed());
  EXPECT_EQ(r1.base_roots, 7u);
  auto f = build_full_n(d);
  auto r2 = check_equivalence(d, f.system, f.certificate, Box::cube(2, 0, 3), Domain::kNaturals);
  EXPECT_TRUE(r2.passed());
  EXPECT_EQ(r2.base_roots, 4u);
  auto e = P("x1^2 + 1", 1);
  auto ce = build_compact_z(e);
  auto r3 = check_equivalence(e, ce.system, ce.certificate, Box::cube(1, -5, 5), Domain::kIntegers);
  EXPECT_EQ(r3.base_roots, 0u);
  EXPECT_EQ(r3.refuted_by_propagation, 11u);
}

TEST(Worked, FourSquares) {
  EXPECT_EQ(foursquare_decompose(0), (std::array<BigInt, 4>{0, 0, 0, 0}));
  EXPECT_EQ(foursquare_decompose(7), (std::array<BigInt, 4>{1, 1, 1, 2}));
  EXPECT_EQ(foursquare_decompose(5), (std::array<BigInt, 4>{0, 0, 1, 2}));
}

TEST(Worked, Pinning) {
  struct Case {
    const char* w;
    Domain dom;
    std::size_t n;  // 0 means the threshold
    long long expected;
  };
  for (const auto& c : {Case{"x1 - x2", Domain::kNaturals, 12, 12}, Case{"x1 - x2^2", Domain::kNaturals, 14, 196},
                        Case{"x1 - x2^2", Domain::kNaturals, 11, 121}, Case{"x1 - 5", Domain::kIntegers, 0, 5},
                        Case{"x1", Domain::kIntegers, 0, 0}}) {
    auto rep = rep_of(c.w);
    auto psi = build_psi(rep, c.dom);
    std::size_t n = c.n ? c.n : threshold(psi.s, c.dom);
    if (n < threshold(psi.s, c.dom)) {
      // Below the threshold the system does not exist.
      EXPECT_THROW(assemble(psi, n), Error);
      continue;
    }
    auto sys = assemble(psi, n);
    auto report = verify_pinning(sys, n, c.expected, c.dom, {}, &rep);
    EXPECT_TRUE(report.passed(n)) << c.w << " n=" << n;
    EXPECT_TRUE(report.witness_ok) << c.w;
  }
}

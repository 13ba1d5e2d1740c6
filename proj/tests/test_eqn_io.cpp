#include <gtest/gtest.h>

#include <random>

#include "dio/eqn_io.hpp"
#include "dio/error.hpp"
#include "support/oracles.hpp"

using namespace dio;

TEST(Parse, Basics) {
  auto p = parse_polynomial("2*x1^2*x2 - 3*x2 + 7");
  EXPECT_EQ(p.arity(), 2u);
  std::vector<BigInt> pt{2, 5};
  EXPECT_EQ(eval(p, pt), 2 * 4 * 5 - 15 + 7);
  EXPECT_EQ(format_polynomial(p), "2*x1^2*x2 - 3*x2 + 7");
}

TEST(Parse, ParenthesesAndPowers) {
  auto p = parse_polynomial("(x1 + 1)^2 - (x1 - 1)^2");
  EXPECT_EQ(format_polynomial(p), "4*x1");
  EXPECT_EQ(format_polynomial(parse_polynomial("-(x1 - x2)")), "-x1 + x2");
  EXPECT_EQ(format_polynomial(parse_polynomial("x1^0")), "1");
  EXPECT_EQ(format_polynomial(parse_polynomial("0*x3")), "0");
  EXPECT_EQ(parse_polynomial("0*x3").arity(), 3u);
}

TEST(Parse, ExplicitArity) {
  auto p = parse_polynomial("x1", 3);
  EXPECT_EQ(p.arity(), 3u);
  EXPECT_THROW(parse_polynomial("x4", 3), Error);
}

TEST(Parse, Equation) {
  auto e = parse_equation("x1^2 = x2 + 1");
  EXPECT_EQ(format_polynomial(e.normalized), "x1^2 - x2 - 1");
  EXPECT_EQ(e.lhs.arity(), e.rhs.arity());
  try {
    parse_equation("x1 + x2");
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_NE(std::string(err.what()).find("missing equals sign"), std::string::npos);
  }
  EXPECT_THROW(parse_equation("x1 = x2 = x3"), ParseError);
}

TEST(Parse, ErrorsCarryOffsets) {
  try {
    parse_polynomial("x1 + + x2");
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.offset(), 5u);
    EXPECT_EQ(err.code(), ErrorCode::kSyntax);
  }
  for (const char* bad : {"x0", "x01", "2x1", "x1 x2", "y1", "x1^", "(x1", "x1)", "", "x1^-1", "x1^99999999999"}) {
    EXPECT_THROW(parse_polynomial(bad), ParseError) << bad;
  }
}

TEST(Parse, SignedLiterals) {
  EXPECT_EQ(format_polynomial(parse_polynomial("007*x1")), "7*x1");
  EXPECT_EQ(format_polynomial(parse_polynomial("-3 + x1")), "x1 - 3");
  EXPECT_EQ(format_polynomial(parse_polynomial("x1 * -2")), "-2*x1");
  EXPECT_EQ(format_polynomial(parse_polynomial("123456789012345678901234567890*x1")),
            "123456789012345678901234567890*x1");
}

// format then parse is the identity on canonical polynomials.
TEST(Parse, FormatRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t p = 1 + trial % 4;
    auto d = oracle::random_dense(rng, p, 3, 9, 6, false);
    auto poly = oracle::to_poly(p, d);
    auto text = format_polynomial(poly);
    auto back = parse_polynomial(text, p);
    ASSERT_EQ(back, poly) << text;
    ASSERT_EQ(format_polynomial(back), text);
  }
}

TEST(Representation, RoundTrip) {
  auto rep = parse_representation("# f(k) = k^2\nREP r=3\n# existential x3 unused\nx1 - x2^2 + 0*x3\n");
  EXPECT_EQ(rep.r, 3u);
  EXPECT_EQ(rep.w.arity(), 3u);
  auto text = format_representation(rep);
  auto again = parse_representation(text);
  EXPECT_EQ(again.w, rep.w);
  EXPECT_EQ(format_representation(again), text);
}

TEST(Representation, Rejects) {
  EXPECT_THROW(parse_representation("x1 - x2\n"), Error);
  EXPECT_THROW(parse_representation("REP r=1\nx1\n"), Error);
  EXPECT_THROW(parse_representation("REP r=2\nx1 - x3\n"), Error);
  EXPECT_THROW(parse_representation("REP r=2\n"), Error);
}

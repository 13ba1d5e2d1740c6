#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dio/eqn_io.hpp"
#include "dio/pipeline.hpp"
#include "dio/reducer.hpp"

using namespace dio;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(DIO_GOLDEN_DIR) + "/" + name, std::ios::binary);
  EXPECT_TRUE(in) << name;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_pipeline(const char* w, std::size_t n, const std::string& stem) {
  auto sys = pipeline(parse_representation(std::string("REP r=2\n") + w + "\n"), Domain::kNaturals, n);
  EXPECT_EQ(serialize(sys.system), golden(stem + ".ens"));
  EXPECT_EQ(serialize_layout(sys.layout), golden(stem + ".layout"));
  EXPECT_EQ(serialize(sys.psi.certificate), golden(stem + ".cert"));
}

}  // namespace

TEST(Golden, Pipelines) {
  expect_pipeline("x1 - x2", 10, "identity_n10");
  expect_pipeline("x1 - x2^2", 13, "square_n13");
}

TEST(Golden, CompactReductions) {
  auto d = parse_equation("x1^2 - 2*x2^2 = 1").normalized;
  auto z = build_compact_z(d);
  EXPECT_EQ(serialize(z.system), golden("compact_z_pell.ens"));
  EXPECT_EQ(serialize(z.certificate), golden("compact_z_pell.cert"));
  auto n = build_compact_n(d);
  EXPECT_EQ(serialize(n.system), golden("compact_n_pell.ens"));
  EXPECT_EQ(serialize(n.certificate), golden("compact_n_pell.cert"));
}

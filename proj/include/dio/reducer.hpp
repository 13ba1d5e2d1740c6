#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dio/bigint.hpp"
#include "dio/ensys.hpp"
#include "dio/family.hpp"
#include "dio/polynomial.hpp"

namespace dio {

enum class ReductionMode { kFullZ, kHalvedZ, kCompactZ, kFullN, kCompactN };

const char* mode_name(ReductionMode mode);
std::optional<ReductionMode> parse_mode(std::string_view name);
Domain mode_domain(ReductionMode mode);

// Integer modes: x_q + x_q = x_q, where x_q carries 2*D or D.
struct IntegerAnchor {
  std::uint32_t q = 0;
  friend bool operator==(const IntegerAnchor&, const IntegerAnchor&) = default;
};

// Natural modes: x_zero + x_lhs = x_rhs.
struct NaturalAnchor {
  std::uint32_t zero = 0;
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
  friend bool operator==(const NaturalAnchor&, const NaturalAnchor&) = default;
};

// Records which polynomial in x1..xp every auxiliary index stands for.
struct ReductionCertificate {
  ReductionMode mode = ReductionMode::kCompactZ;
  std::size_t p = 0;
  std::size_t n = 0;
  std::map<std::uint32_t, Polynomial> defs;
  std::variant<IntegerAnchor, NaturalAnchor> anchor;

  // x_i for i <= p, defs[i] otherwise.
  Polynomial polynomial_at(std::uint32_t index) const;

  friend bool operator==(const ReductionCertificate&, const ReductionCertificate&) = default;
};

std::string serialize(const ReductionCertificate& cert);
ReductionCertificate deserialize_certificate(std::string_view text);

struct Reduction {
  EnSystem system;
  ReductionCertificate certificate;
};

struct FullModeLimits {
  BigInt cap = 1'000'000;
  // Identity equations are found by scanning all member pairs, so the
  // family size is also bounded by this separate limit.
  std::size_t pair_limit = 2000;
};

// B = sum (|a| + 2) m and A = D + B for D = sum a m. Both have positive
// coefficients and D = 0 iff A = B.
struct BalancedPair {
  Polynomial a;
  Polynomial b;
};
BalancedPair balance_for_naturals(const Polynomial& d);

// Family descriptors used by the full reductions.
FamilyDescriptor family_full_z(const Polynomial& d);
FamilyDescriptor family_halved_z(const Polynomial& d);
FamilyDescriptor family_full_n(const Polynomial& d);

Reduction build_full_z(const Polynomial& d, const FullModeLimits& limits = {});
Reduction build_halved_z(const Polynomial& d, const FullModeLimits& limits = {});
Reduction build_compact_z(const Polynomial& d);
Reduction build_full_n(const Polynomial& d, const FullModeLimits& limits = {});

// kBalanced builds chains for A and B and anchors x_zero + A = B.
// kSplit builds chains for the positive part P and the negated negative part
// N of D (D = P - N) and anchors x_zero + N = P.
enum class NaturalChain { kBalanced, kSplit };
Reduction build_compact_n(const Polynomial& d, NaturalChain chain = NaturalChain::kBalanced);

// Sum of squares forcing W = 0 and x1..xr >= 0 via four squares each.
// Variable order: x1..xr, a, b, c, d, alpha, beta, gamma, delta, then
// x_{3,1..4}, ..., x_{r,1..4}.
Polynomial build_master_z(const Polynomial& w);
std::size_t master_arity(std::size_t r);
std::vector<std::string> master_variable_names(std::size_t r);
// 1-based indices of the four square roots attached to x_i in the master.
std::array<std::size_t, 4> master_square_indices(std::size_t r, std::size_t i);

}  // namespace dio

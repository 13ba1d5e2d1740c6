#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dio/bigint.hpp"
#include "dio/ensys.hpp"
#include "dio/pipeline.hpp"
#include "dio/polynomial.hpp"
#include "dio/propagation.hpp"
#include "dio/reducer.hpp"

namespace dio {

// Inclusive integer intervals, one per variable.
struct Box {
  std::vector<std::pair<std::int64_t, std::int64_t>> bounds;

  static Box cube(std::size_t dim, std::int64_t lo, std::int64_t hi);

  std::size_t dim() const noexcept { return bounds.size(); }
  bool empty() const;
  // Saturates at UINT64_MAX.
  std::uint64_t point_count() const;
  // Intersection with the non-negative orthant for the naturals.
  Box restricted_to(Domain domain) const;
  // The point with the given lexicographic rank.
  std::vector<BigInt> point(std::uint64_t rank) const;
};

struct OracleLimits {
  std::uint64_t point_limit = 100'000'000;
  // Nodes visited by any single bounded search.
  std::uint64_t search_limit = 1'000'000;
  unsigned jobs = 1;
};

// Points of the box (restricted to the domain) where D vanishes, in
// lexicographic order.
std::vector<std::vector<BigInt>> enumerate_roots(const Polynomial& d, const Box& box, Domain domain,
                                                 const OracleLimits& limits = {});

// Total assignment: base values on 1..p, defs evaluated at the base elsewhere.
Assignment lift(const ReductionCertificate& cert, std::span<const BigInt> base);

struct SearchResult {
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
  bool truncated = false;
  bool stopped = false;
};

using Candidates = std::function<std::vector<BigInt>(std::uint32_t var)>;
// Called with a propagator whose assignment is total and consistent; return
// false to stop the search.
using SolutionVisitor = std::function<bool(const Propagator&)>;

// Depth-first search over undetermined variables with propagation after each
// decision. Variables in `preferred` are decided first, in order.
SearchResult search_solutions(Propagator& prop, std::span<const std::uint32_t> preferred,
                              const Candidates& candidates, std::uint64_t node_limit,
                              const SolutionVisitor& visit);

// Per-base-point outcome of extending (x1..xp) to a solution of S.
struct PointVerdict {
  enum class Kind { kRefutedByPropagation, kRefutedBySearch, kUniqueByPropagation, kExtendsBySearch, kInconclusive };
  Kind kind = Kind::kInconclusive;
  Assignment extension;  // populated when an extension was found
  bool extends() const { return kind == Kind::kUniqueByPropagation || kind == Kind::kExtendsBySearch; }
};

// Undetermined variables left after propagation are searched within
// [residual_lo, residual_hi].
PointVerdict classify_point(const EnSystem& s, std::span<const BigInt> base, Domain domain,
                            std::int64_t residual_lo, std::int64_t residual_hi, std::uint64_t search_limit);

struct EquivalenceReport {
  std::uint64_t base_points = 0;
  std::uint64_t base_roots = 0;
  std::uint64_t lifted_ok = 0;
  std::uint64_t unique_extension = 0;
  std::uint64_t stuck_roots = 0;
  std::uint64_t refuted_by_propagation = 0;
  std::uint64_t refuted_by_search = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t system_solutions = 0;  // base points that extend to a solution
  std::vector<std::vector<BigInt>> spurious;
  std::vector<std::vector<BigInt>> extendable;

  bool counts_equal() const { return system_solutions == base_roots; }
  bool passed() const {
    return spurious.empty() && inconclusive == 0 && lifted_ok == base_roots &&
           unique_extension == base_roots && counts_equal();
  }
};

EquivalenceReport check_equivalence(const Polynomial& d, const EnSystem& s, const ReductionCertificate& cert,
                                    const Box& box, Domain domain, const OracleLimits& limits = {});

// Base points of the box (within the domain) that extend to a solution of S.
std::vector<std::vector<BigInt>> solution_projection(const EnSystem& s, std::size_t p, const Box& box,
                                                     Domain domain, const OracleLimits& limits = {});

// Lexicographically least non-negative (a, b, c, d) with a^2+b^2+c^2+d^2 = m.
std::array<BigInt, 4> foursquare_decompose(const BigInt& m);

// Values x1..xr with W = 0, x1 = value and x2 = argument; existential
// variables are searched in [0, radius].
std::optional<std::vector<BigInt>> find_representation_root(const RepresentationFile& rep, const BigInt& value,
                                                            const BigInt& argument, std::int64_t radius,
                                                            std::uint64_t point_limit = 10'000'000);

// Total solution of the assembled system built from a root of W.
Assignment build_witness(const AssembledSystem& sys, std::span<const BigInt> rep_root);

struct PinningOptions {
  // Decision variables range over [-R, R] ([0, R] over the naturals)...
  std::int64_t box_radius = 1;
  // ...and, in a second pass, over [w - R', w + R'] around the witness.
  std::int64_t witness_radius = 1;
  std::int64_t existential_radius = 8;
  std::uint64_t search_limit = 10'000'000;
};

struct PinningReport {
  bool propagation_consistent = false;
  bool x2_forced = false;
  BigInt x2_value = 0;
  bool witness_found = false;
  bool witness_ok = false;
  std::uint64_t solutions = 0;
  std::uint64_t nodes = 0;
  std::vector<BigInt> wrong_x1;  // x1 of bounded solutions that miss the expected value

  bool passed(const BigInt& n) const {
    return propagation_consistent && x2_forced && x2_value == n && witness_ok && wrong_x1.empty();
  }
};

// `rep` (or `rep_root`) supplies the witness; without either, a root
// (expected, n) is tried when r = 2. Throws kSearchLimit when a bounded
// search would exceed options.search_limit nodes.
PinningReport verify_pinning(const AssembledSystem& sys, const BigInt& n, const BigInt& expected, Domain domain,
                             const PinningOptions& options = {}, const RepresentationFile* rep = nullptr,
                             std::optional<std::vector<BigInt>> rep_root = std::nullopt);

}  // namespace dio

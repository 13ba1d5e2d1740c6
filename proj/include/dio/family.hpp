#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dio/bigint.hpp"
#include "dio/polynomial.hpp"

namespace dio {

// All polynomials in p variables whose coefficients lie in
// [coeff_lo, coeff_hi] and whose degree in x_i is at most degree_bounds[i-1].
struct FamilyDescriptor {
  std::size_t p = 0;
  BigInt coeff_lo = 0;
  BigInt coeff_hi = 0;
  std::vector<std::uint32_t> degree_bounds;
};

// (hi - lo + 1) ^ prod(d_i + 1).
BigInt card_T(const FamilyDescriptor& desc);
// Interval [-M, M]: (2M + 1) ^ prod(d_i + 1).
BigInt card_T(const BigInt& m, std::span<const std::uint32_t> degree_bounds);
// Interval [0, delta]: (delta + 1) ^ prod(d_i + 1).
BigInt card_T_nonnegative(const BigInt& delta, std::span<const std::uint32_t> degree_bounds);

// log10 of card_T(desc), for sizes too large to print. -inf for an empty family.
double card_T_log10(const FamilyDescriptor& desc);

// True when card_T(desc) <= limit, without materialising huge powers.
bool card_within(const FamilyDescriptor& desc, const BigInt& limit);

// Members in lexicographic order of their coefficient vectors (coefficients
// listed in canonical monomial order). Throws FamilyTooLarge above `cap`.
std::vector<Polynomial> enumerate_T(const FamilyDescriptor& desc, const BigInt& cap);

// Dense view of a materialised family. Members are identified by their rank
// in enumeration order; coefficients are stored as offsets from coeff_lo.
class Family {
 public:
  Family(const FamilyDescriptor& desc, const BigInt& cap);

  std::size_t size() const noexcept { return size_; }
  std::size_t slots() const noexcept { return grid_.size(); }
  std::int64_t lo() const noexcept { return lo_; }
  std::int64_t hi() const noexcept { return hi_; }
  const std::vector<Monomial>& grid() const noexcept { return grid_; }
  std::size_t arity() const noexcept { return p_; }

  // Coefficients by slot for the member of the given rank.
  std::vector<std::int64_t> coefficients(std::size_t rank) const;
  std::optional<std::size_t> rank_of(std::span<const std::int64_t> coeffs) const;
  std::optional<std::size_t> rank_of(const Polynomial& poly) const;
  Polynomial polynomial(std::size_t rank) const;

  // Slot of grid[a] * grid[b] when it stays inside the degree bounds.
  std::optional<std::size_t> product_slot(std::size_t a, std::size_t b) const;

 private:
  std::size_t p_;
  std::int64_t lo_;
  std::int64_t hi_;
  std::uint64_t base_;
  std::size_t size_;
  std::vector<std::uint32_t> bounds_;
  std::vector<Monomial> grid_;
  std::vector<std::size_t> slot_of_radix_;   // mixed-radix exponent code -> slot
  std::vector<std::size_t> radix_of_slot_;
};

}  // namespace dio

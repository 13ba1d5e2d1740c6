#include "dio/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dio/error.hpp"

namespace dio {

namespace {

// prod(d_i + 1), or nullopt on overflow.
std::optional<std::uint64_t> grid_size(std::span<const std::uint32_t> bounds) {
  std::uint64_t prod = 1;
  for (auto d : bounds) {
    std::uint64_t f = std::uint64_t{d} + 1;
    if (prod > UINT64_MAX / f) return std::nullopt;
    prod *= f;
  }
  return prod;
}

BigInt power(const BigInt& base, std::span<const std::uint32_t> bounds) {
  auto e = grid_size(bounds);
  if (!e || *e > (1u << 24)) {
    throw Error(ErrorCode::kInvalidArgument, "family cardinality exponent is too large to expand");
  }
  return boost::multiprecision::pow(base, static_cast<unsigned>(*e));
}

std::int64_t to_int64(const BigInt& v, const char* what) {
  if (v > INT64_MAX / 4 || v < INT64_MIN / 4) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " does not fit a machine word");
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace

BigInt card_T(const FamilyDescriptor& desc) {
  if (desc.coeff_lo > desc.coeff_hi) return 0;
  if (desc.degree_bounds.size() != desc.p) {
    throw Error(ErrorCode::kDimensionMismatch, "degree bounds length differs from p");
  }
  return power(desc.coeff_hi - desc.coeff_lo + 1, desc.degree_bounds);
}

BigInt card_T(const BigInt& m, std::span<const std::uint32_t> degree_bounds) {
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "coefficient bound must be non-negative");
  return power(2 * m + 1, degree_bounds);
}

BigInt card_T_nonnegative(const BigInt& delta, std::span<const std::uint32_t> degree_bounds) {
  if (delta < 0) throw Error(ErrorCode::kInvalidArgument, "coefficient bound must be non-negative");
  return power(delta + 1, degree_bounds);
}

double card_T_log10(const FamilyDescriptor& desc) {
  if (desc.coeff_lo > desc.coeff_hi) return -std::numeric_limits<double>::infinity();
  double width = static_cast<double>(BigInt(desc.coeff_hi - desc.coeff_lo + 1).convert_to<long double>());
  double exponent = 1;
  for (auto d : desc.degree_bounds) exponent *= static_cast<double>(d) + 1;
  return exponent * std::log10(width);
}

bool card_within(const FamilyDescriptor& desc, const BigInt& limit) {
  if (desc.coeff_lo > desc.coeff_hi) return limit >= 0;
  BigInt base = desc.coeff_hi - desc.coeff_lo + 1;
  if (base == 1) return limit >= 1;
  auto e = grid_size(desc.degree_bounds);
  if (!e) return false;
  BigInt acc = 1;
  for (std::uint64_t i = 0; i < *e; ++i) {
    acc *= base;
    if (acc > limit) return false;
  }
  return true;
}

Family::Family(const FamilyDescriptor& desc, const BigInt& cap) : p_(desc.p), bounds_(desc.degree_bounds) {
  if (desc.degree_bounds.size() != desc.p) {
    throw Error(ErrorCode::kDimensionMismatch, "degree bounds length differs from p");
  }
  if (desc.coeff_lo > desc.coeff_hi) {
    throw Error(ErrorCode::kInvalidArgument, "empty coefficient interval");
  }
  if (!card_within(desc, cap)) {
    auto e = grid_size(desc.degree_bounds);
    BigInt card = (e && *e <= 4096) ? card_T(desc) : BigInt(-1);
    if (card < 0) {
      throw Error(ErrorCode::kFamilyTooLarge, "family cardinality is astronomically larger than cap " +
                                                  cap.str());
    }
    throw FamilyTooLarge(card, cap);
  }
  BigInt card = card_T(desc);
  if (card > (BigInt(1) << 40)) {
    throw Error(ErrorCode::kInvalidArgument, "materialised families are limited to 2^40 members");
  }
  lo_ = to_int64(desc.coeff_lo, "coefficient bound");
  hi_ = to_int64(desc.coeff_hi, "coefficient bound");
  base_ = static_cast<std::uint64_t>(hi_ - lo_) + 1;
  size_ = card.convert_to<std::size_t>();

  // Enumerate the exponent grid in mixed radix (x1 most significant), then
  // sort it into canonical descending grlex order.
  std::size_t cells = static_cast<std::size_t>(*grid_size(bounds_));
  std::vector<Monomial> by_radix;
  by_radix.reserve(cells);
  for (std::size_t code = 0; code < cells; ++code) {
    Monomial m(p_);
    std::size_t rest = code;
    for (std::size_t i = p_; i-- > 0;) {
      m[i] = static_cast<std::uint32_t>(rest % (bounds_[i] + 1));
      rest /= bounds_[i] + 1;
    }
    by_radix.push_back(std::move(m));
  }
  radix_of_slot_.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) radix_of_slot_[c] = c;
  std::sort(radix_of_slot_.begin(), radix_of_slot_.end(), [&](std::size_t a, std::size_t b) {
    return grlex_compare(by_radix[a], by_radix[b]) == std::strong_ordering::greater;
  });
  slot_of_radix_.resize(cells);
  grid_.reserve(cells);
  for (std::size_t s = 0; s < cells; ++s) {
    slot_of_radix_[radix_of_slot_[s]] = s;
    grid_.push_back(by_radix[radix_of_slot_[s]]);
  }
}

std::vector<std::int64_t> Family::coefficients(std::size_t rank) const {
  std::vector<std::int64_t> out(slots());
  for (std::size_t s = slots(); s-- > 0;) {
    out[s] = lo_ + static_cast<std::int64_t>(rank % base_);
    rank /= base_;
  }
  return out;
}

std::optional<std::size_t> Family::rank_of(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() != slots()) return std::nullopt;
  std::size_t rank = 0;
  for (auto c : coeffs) {
    if (c < lo_ || c > hi_) return std::nullopt;
    rank = rank * base_ + static_cast<std::size_t>(c - lo_);
  }
  return rank;
}

std::optional<std::size_t> Family::rank_of(const Polynomial& poly) const {
  if (poly.arity() != p_) return std::nullopt;
  std::vector<std::int64_t> coeffs(slots(), 0);
  for (const auto& t : poly.terms()) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < p_; ++i) {
      if (t.monomial[i] > bounds_[i]) return std::nullopt;
      code = code * (bounds_[i] + 1) + t.monomial[i];
    }
    if (t.coeff < lo_ || t.coeff > hi_) return std::nullopt;
    coeffs[slot_of_radix_[code]] = t.coeff.convert_to<std::int64_t>();
  }
  return rank_of(coeffs);
}

Polynomial Family::polynomial(std::size_t rank) const {
  auto coeffs = coefficients(rank);
  std::vector<Term> terms;
  for (std::size_t s = 0; s < slots(); ++s) {
    if (coeffs[s] != 0) terms.push_back(Term{grid_[s], BigInt(coeffs[s])});
  }
  return Polynomial::from_terms(p_, std::move(terms));
}

std::optional<std::size_t> Family::product_slot(std::size_t a, std::size_t b) const {
  std::size_t ra = radix_of_slot_[a];
  std::size_t rb = radix_of_slot_[b];
  std::size_t code = 0;
  std::size_t mult = 1;
  for (std::size_t i = p_; i-- > 0;) {
    std::size_t radix = bounds_[i] + 1;
    std::size_t e = ra % radix + rb % radix;
    if (e > bounds_[i]) return std::nullopt;
    code += e * mult;
    mult *= radix;
    ra /= radix;
    rb /= radix;
  }
  return slot_of_radix_[code];
}

std::vector<Polynomial> enumerate_T(const FamilyDescriptor& desc, const BigInt& cap) {
  Family fam(desc, cap);
  std::vector<Polynomial> out;
  out.reserve(fam.size());
  for (std::size_t r = 0; r < fam.size(); ++r) out.push_back(fam.polynomial(r));
  return out;
}

}  // namespace dio

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dio/bigint.hpp"

namespace dio {

// Exponent tuple of a monomial; position i holds the exponent of x_{i+1}.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  std::size_t arity() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const noexcept { return exps_; }

  std::uint64_t total_degree() const noexcept;
  bool is_constant() const noexcept;

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

// Graded lexicographic comparison: total degree first, then the exponent of
// x1, x2, ... in turn. Canonical term order is descending under this relation.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial monomial;
  BigInt coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

// Multivariate polynomial with integer coefficients over a fixed number of
// variables. Terms are kept in canonical order with no zero coefficients.
class Polynomial {
 public:
  explicit Polynomial(std::size_t arity = 0) : arity_(arity) {}

  static Polynomial constant(std::size_t arity, const BigInt& c);
  // `index` is 1-based.
  static Polynomial variable(std::size_t arity, std::size_t index);
  static Polynomial monomial(const Monomial& m, const BigInt& c = 1);
  // Sorts, merges equal monomials and drops zero coefficients.
  static Polynomial from_terms(std::size_t arity, std::vector<Term> terms);

  std::size_t arity() const noexcept { return arity_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  // 1-based index i when the polynomial is exactly x_i.
  std::optional<std::size_t> as_variable() const;
  std::optional<BigInt> as_constant() const;
  // Coefficient of `m`, zero when absent.
  BigInt coeff(const Monomial& m) const;

  // Same polynomial viewed in a larger ambient variable count.
  Polynomial embedded(std::size_t arity) const;
  // Moves x_i to x_{map[i-1]} in an ambient count of `arity`.
  Polynomial remapped(std::size_t arity, std::span<const std::size_t> map) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);

  Polynomial scaled(const BigInt& c) const;
  Polynomial squared() const { return *this * *this; }
  Polynomial pow(std::uint32_t e) const;

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
  // Total order used for map keys; not a mathematical order.
  friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b);

 private:
  std::size_t arity_;
  std::vector<Term> terms_;
};

BigInt eval(const Polynomial& p, std::span<const BigInt> point);
// Maximum exponent of x_i (1-based); 0 for the zero polynomial.
std::uint32_t degree_in(const Polynomial& p, std::size_t i);
BigInt max_abs_coeff(const Polynomial& p);
std::uint64_t total_degree(const Polynomial& p);

}  // namespace dio

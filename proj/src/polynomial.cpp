#include "dio/polynomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dio/error.hpp"

namespace dio {

namespace {

struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_compare(a, b) == std::strong_ordering::greater;
  }
};

void require_same_arity(const Polynomial& a, const Polynomial& b) {
  if (a.arity() != b.arity()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "polynomial arity mismatch: " + std::to_string(a.arity()) + " vs " +
                    std::to_string(b.arity()));
  }
}

}  // namespace

std::uint64_t Monomial::total_degree() const noexcept {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

bool Monomial::is_constant() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](std::uint32_t e) { return e == 0; });
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (arity() != other.arity()) {
    throw Error(ErrorCode::kDimensionMismatch, "monomial arity mismatch");
  }
  Monomial out(arity());
  for (std::size_t i = 0; i < arity(); ++i) {
    std::uint64_t e = std::uint64_t{exps_[i]} + other.exps_[i];
    if (e > 0x7fffffffu) throw Error(ErrorCode::kInvalidArgument, "exponent overflow");
    out.exps_[i] = static_cast<std::uint32_t>(e);
  }
  return out;
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
  auto ea = a.exponents();
  auto eb = b.exponents();
  return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
}

Polynomial Polynomial::constant(std::size_t arity, const BigInt& c) {
  return monomial(Monomial(arity), c);
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
  if (index < 1 || index > arity) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "variable x" + std::to_string(index) + " outside arity " + std::to_string(arity));
  }
  Monomial m(arity);
  m[index - 1] = 1;
  return monomial(m);
}

Polynomial Polynomial::monomial(const Monomial& m, const BigInt& c) {
  Polynomial p(m.arity());
  if (c != 0) p.terms_.push_back(Term{m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t arity, std::vector<Term> terms) {
  std::map<Monomial, BigInt, GrlexDescending> acc;
  for (auto& t : terms) {
    if (t.monomial.arity() != arity) {
      throw Error(ErrorCode::kDimensionMismatch, "term arity mismatch");
    }
    acc[std::move(t.monomial)] += t.coeff;
  }
  Polynomial p(arity);
  for (auto& [m, c] : acc) {
    if (c != 0) p.terms_.push_back(Term{m, std::move(c)});
  }
  return p;
}

std::optional<std::size_t> Polynomial::as_variable() const {
  if (terms_.size() != 1 || terms_[0].coeff != 1 || terms_[0].monomial.total_degree() != 1) {
    return std::nullopt;
  }
  auto e = terms_[0].monomial.exponents();
  return static_cast<std::size_t>(std::find(e.begin(), e.end(), 1u) - e.begin()) + 1;
}

std::optional<BigInt> Polynomial::as_constant() const {
  if (terms_.empty()) return BigInt(0);
  if (terms_.size() == 1 && terms_[0].monomial.is_constant()) return terms_[0].coeff;
  return std::nullopt;
}

BigInt Polynomial::coeff(const Monomial& m) const {
  for (const auto& t : terms_) {
    if (t.monomial == m) return t.coeff;
  }
  return 0;
}

Polynomial Polynomial::embedded(std::size_t arity) const {
  if (arity < arity_) {
    throw Error(ErrorCode::kDimensionMismatch, "cannot embed into a smaller arity");
  }
  std::vector<std::size_t> map(arity_);
  std::iota(map.begin(), map.end(), std::size_t{1});
  return remapped(arity, map);
}

Polynomial Polynomial::remapped(std::size_t arity, std::span<const std::size_t> map) const {
  if (map.size() != arity_) throw Error(ErrorCode::kDimensionMismatch, "variable map size");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(arity);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (t.monomial[i] == 0) continue;
      if (map[i] < 1 || map[i] > arity) {
        throw Error(ErrorCode::kIndexOutOfRange, "variable map target out of range");
      }
      m[map[i] - 1] += t.monomial[i];
    }
    out.push_back(Term{std::move(m), t.coeff});
  }
  return from_terms(arity, std::move(out));
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  require_same_arity(*this, rhs);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end()) {
      merged.push_back(std::move(*a++));
      continue;
    }
    if (a == terms_.end()) {
      merged.push_back(*b++);
      continue;
    }
    auto c = grlex_compare(a->monomial, b->monomial);
    if (c == std::strong_ordering::greater) {
      merged.push_back(std::move(*a++));
    } else if (c == std::strong_ordering::less) {
      merged.push_back(*b++);
    } else {
      BigInt sum = a->coeff + b->coeff;
      if (sum != 0) merged.push_back(Term{std::move(a->monomial), std::move(sum)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += -rhs; }

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  require_same_arity(lhs, rhs);
  std::map<Monomial, BigInt, GrlexDescending> acc;
  for (const auto& a : lhs.terms_) {
    for (const auto& b : rhs.terms_) {
      acc[a.monomial * b.monomial] += a.coeff * b.coeff;
    }
  }
  Polynomial p(lhs.arity_);
  for (auto& [m, c] : acc) {
    if (c != 0) p.terms_.push_back(Term{m, std::move(c)});
  }
  return p;
}

Polynomial Polynomial::scaled(const BigInt& c) const {
  if (c == 0) return Polynomial(arity_);
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result = constant(arity_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e > 0) base = base.squared();
  }
  return result;
}

std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Term& x = a.terms_[i];
    const Term& y = b.terms_[i];
    if (auto c = grlex_compare(x.monomial, y.monomial); c != 0) return c;
    if (x.coeff != y.coeff) {
      return x.coeff < y.coeff ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return a.terms_.size() <=> b.terms_.size();
}

BigInt eval(const Polynomial& p, std::span<const BigInt> point) {
  if (point.size() != p.arity()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                    std::to_string(p.arity()) + " variables");
  }
  BigInt sum = 0;
  for (const auto& t : p.terms()) {
    BigInt v = t.coeff;
    for (std::size_t i = 0; i < point.size() && v != 0; ++i) {
      if (t.monomial[i] != 0) v *= boost::multiprecision::pow(point[i], t.monomial[i]);
    }
    sum += v;
  }
  return sum;
}

std::uint32_t degree_in(const Polynomial& p, std::size_t i) {
  if (i < 1 || i > p.arity()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "variable index " + std::to_string(i) + " outside arity " +
                    std::to_string(p.arity()));
  }
  std::uint32_t d = 0;
  for (const auto& t : p.terms()) d = std::max(d, t.monomial[i - 1]);
  return d;
}

BigInt max_abs_coeff(const Polynomial& p) {
  BigInt m = 0;
  for (const auto& t : p.terms()) m = std::max(m, BigInt(abs(t.coeff)));
  return m;
}

std::uint64_t total_degree(const Polynomial& p) {
  std::uint64_t d = 0;
  for (const auto& t : p.terms()) d = std::max(d, t.monomial.total_degree());
  return d;
}

}  // namespace dio

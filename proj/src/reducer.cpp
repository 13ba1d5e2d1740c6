#include "dio/reducer.hpp"

#include <algorithm>

#include "dio/error.hpp"

namespace dio {

namespace {

void require_nonzero(const Polynomial& d) {
  if (d.is_zero()) throw Error(ErrorCode::kZeroPolynomial, "the equation normalises to 0 = 0");
}

std::vector<std::uint32_t> degree_bounds(const Polynomial& d) {
  std::vector<std::uint32_t> out(d.arity());
  for (std::size_t i = 1; i <= d.arity(); ++i) out[i - 1] = degree_in(d, i);
  return out;
}

// Names every member of the family as a variable and collects all atomic
// equations that hold identically under that naming. Variables 1..p are the
// members x1..xp (when present), then `anchored` in order, then the remaining
// members by rank.
struct FamilySystem {
  std::size_t n = 0;
  std::vector<std::uint32_t> index_of_rank;
  std::vector<EnEquation> equations;
  std::map<std::uint32_t, Polynomial> defs;
};

FamilySystem build_family_system(const FamilyDescriptor& desc, std::span<const Polynomial> anchored,
                                 const FullModeLimits& limits) {
  Family fam(desc, limits.cap);
  if (fam.size() > limits.pair_limit) {
    throw FamilyTooLarge(BigInt(fam.size()), BigInt(limits.pair_limit), "pair-enumeration limit");
  }
  const std::size_t p = desc.p;
  const std::size_t size = fam.size();
  const std::size_t slots = fam.slots();

  FamilySystem out;
  out.index_of_rank.assign(size, 0);
  for (std::size_t i = 1; i <= p; ++i) {
    if (auto r = fam.rank_of(Polynomial::variable(p, i))) {
      out.index_of_rank[*r] = static_cast<std::uint32_t>(i);
    }
  }
  std::uint32_t next = static_cast<std::uint32_t>(p) + 1;
  for (const auto& poly : anchored) {
    auto r = fam.rank_of(poly);
    if (!r) throw Error(ErrorCode::kInvalidArgument, "anchored polynomial is not a family member");
    if (out.index_of_rank[*r] != 0) {
      throw Error(ErrorCode::kInvalidArgument, "anchored polynomial coincides with another anchor or variable");
    }
    out.index_of_rank[*r] = next++;
  }
  for (std::size_t r = 0; r < size; ++r) {
    if (out.index_of_rank[r] == 0) out.index_of_rank[r] = next++;
  }
  out.n = next - 1;

  std::vector<std::int64_t> coeffs(size * slots);
  std::vector<std::vector<std::uint32_t>> degrees(size, std::vector<std::uint32_t>(p, 0));
  std::vector<std::vector<std::size_t>> nonzero(size);
  for (std::size_t r = 0; r < size; ++r) {
    auto c = fam.coefficients(r);
    std::copy(c.begin(), c.end(), coeffs.begin() + static_cast<std::ptrdiff_t>(r * slots));
    for (std::size_t s = 0; s < slots; ++s) {
      if (c[s] == 0) continue;
      nonzero[r].push_back(s);
      for (std::size_t i = 0; i < p; ++i) {
        degrees[r][i] = std::max(degrees[r][i], fam.grid()[s][i]);
      }
    }
  }
  std::vector<std::ptrdiff_t> product_table(slots * slots, -1);
  for (std::size_t a = 0; a < slots; ++a) {
    for (std::size_t b = 0; b < slots; ++b) {
      if (auto s = fam.product_slot(a, b)) product_table[a * slots + b] = static_cast<std::ptrdiff_t>(*s);
    }
  }
  std::vector<std::uint32_t> bounds = desc.degree_bounds;

  const std::int64_t lo = fam.lo();
  const std::int64_t hi = fam.hi();
  const std::uint64_t base = static_cast<std::uint64_t>(hi - lo) + 1;
  auto rank_if_member = [&](const std::vector<std::int64_t>& c) -> std::optional<std::size_t> {
    std::size_t rank = 0;
    for (auto v : c) {
      if (v < lo || v > hi) return std::nullopt;
      rank = rank * base + static_cast<std::size_t>(v - lo);
    }
    return rank;
  };

  std::vector<std::int64_t> tmp(slots);
  for (std::size_t u = 0; u < size; ++u) {
    const std::int64_t* cu = &coeffs[u * slots];
    if (nonzero[u].size() == 1 && fam.grid()[nonzero[u][0]].is_constant() && cu[nonzero[u][0]] == 1) {
      out.equations.push_back(EnEquation::one(out.index_of_rank[u]));
    }
    for (std::size_t v = u; v < size; ++v) {
      const std::int64_t* cv = &coeffs[v * slots];
      for (std::size_t s = 0; s < slots; ++s) tmp[s] = cu[s] + cv[s];
      if (auto k = rank_if_member(tmp)) {
        out.equations.push_back(
            EnEquation::add(out.index_of_rank[u], out.index_of_rank[v], out.index_of_rank[*k]));
      }
      bool fits = true;
      for (std::size_t i = 0; i < p && fits; ++i) fits = degrees[u][i] + degrees[v][i] <= bounds[i];
      if (!fits) continue;
      std::fill(tmp.begin(), tmp.end(), 0);
      for (auto a : nonzero[u]) {
        for (auto b : nonzero[v]) {
          tmp[static_cast<std::size_t>(product_table[a * slots + b])] += cu[a] * cv[b];
        }
      }
      if (auto k = rank_if_member(tmp)) {
        out.equations.push_back(
            EnEquation::mul(out.index_of_rank[u], out.index_of_rank[v], out.index_of_rank[*k]));
      }
    }
  }
  for (std::size_t r = 0; r < size; ++r) {
    if (out.index_of_rank[r] > p) out.defs.emplace(out.index_of_rank[r], fam.polynomial(r));
  }
  return out;
}

std::uint32_t index_of_member(const FamilyDescriptor& desc, const FamilySystem& fs, const Polynomial& poly,
                              const BigInt& cap) {
  Family fam(desc, cap);
  auto r = fam.rank_of(poly);
  if (!r) throw Error(ErrorCode::kInvalidArgument, "anchor polynomial is not a family member");
  return fs.index_of_rank[*r];
}

std::map<std::uint32_t, std::string> base_names(std::size_t p) {
  std::map<std::uint32_t, std::string> names;
  for (std::size_t i = 1; i <= p; ++i) names[static_cast<std::uint32_t>(i)] = "x" + std::to_string(i);
  return names;
}

// Straight-line program over the nodes 1 (x1) .. p (xp) and fresh auxiliary
// nodes. Every node is keyed by the polynomial it computes, so equal
// subexpressions share one index.
class ChainBuilder {
 public:
  explicit ChainBuilder(std::size_t p) : p_(p), next_(static_cast<std::uint32_t>(p) + 1) {
    for (std::size_t i = 1; i <= p; ++i) {
      index_.emplace(Polynomial::variable(p, i), static_cast<std::uint32_t>(i));
    }
  }

  Polynomial poly(std::uint32_t idx) const {
    return idx <= p_ ? Polynomial::variable(p_, idx) : defs_.at(idx);
  }

  std::uint32_t one() {
    return emit(Polynomial::constant(p_, 1), [](std::uint32_t t) { return EnEquation::one(t); });
  }

  std::uint32_t zero() {
    return emit(Polynomial(p_), [](std::uint32_t t) { return EnEquation::add(t, t, t); });
  }

  std::uint32_t add(std::uint32_t u, std::uint32_t v) {
    return emit(poly(u) + poly(v), [&](std::uint32_t t) { return EnEquation::add(u, v, t); });
  }

  // t = u - v, asserted as t + v = u.
  std::uint32_t sub(std::uint32_t u, std::uint32_t v) {
    return emit(poly(u) - poly(v), [&](std::uint32_t t) { return EnEquation::add(t, v, u); });
  }

  std::uint32_t mul(std::uint32_t u, std::uint32_t v) {
    return emit(poly(u) * poly(v), [&](std::uint32_t t) { return EnEquation::mul(u, v, t); });
  }

  std::uint32_t monomial(const Monomial& m) {
    if (m.is_constant()) return one();
    std::optional<std::uint32_t> cur;
    for (std::size_t i = 0; i < p_; ++i) {
      for (std::uint32_t e = 0; e < m[i]; ++e) {
        auto var = static_cast<std::uint32_t>(i + 1);
        cur = cur ? mul(*cur, var) : var;
      }
    }
    return *cur;
  }

  // c * node for c >= 1 by doubling, then summing the set bits from the top.
  std::uint32_t scaled(std::uint32_t node, const BigInt& c) {
    if (c == 1) return node;
    std::vector<std::uint32_t> powers{node};
    unsigned msb = boost::multiprecision::msb(c);
    for (unsigned k = 1; k <= msb; ++k) powers.push_back(add(powers.back(), powers.back()));
    std::uint32_t acc = powers[msb];
    for (unsigned k = msb; k-- > 0;) {
      if (boost::multiprecision::bit_test(c, k)) acc = add(acc, powers[k]);
    }
    return acc;
  }

  std::uint32_t term(const Term& t) {
    BigInt mag = abs(t.coeff);
    return scaled(monomial(t.monomial), mag);
  }

  // Sum of a polynomial with positive coefficients, or the zero node.
  std::uint32_t positive_sum(const Polynomial& q) {
    if (q.is_zero()) return zero();
    std::optional<std::uint32_t> acc;
    for (const auto& t : q.terms()) {
      std::uint32_t node = term(t);
      acc = acc ? add(*acc, node) : node;
    }
    return *acc;
  }

  // Accumulates terms in canonical order; negative terms are subtracted.
  std::uint32_t signed_sum(const Polynomial& q) {
    if (q.is_zero()) return zero();
    std::optional<std::uint32_t> acc;
    for (const auto& t : q.terms()) {
      std::uint32_t node = term(t);
      if (!acc) {
        acc = t.coeff > 0 ? node : sub(zero(), node);
      } else {
        acc = t.coeff > 0 ? add(*acc, node) : sub(*acc, node);
      }
    }
    return *acc;
  }

  void push(const EnEquation& eq) { equations_.push_back(eq); }

  std::size_t n() const { return next_ - 1; }

  Reduction finish(ReductionMode mode, std::variant<IntegerAnchor, NaturalAnchor> anchor) {
    Reduction out;
    auto names = base_names(p_);
    std::visit(
        [&](const auto& a) {
          if constexpr (std::is_same_v<std::decay_t<decltype(a)>, IntegerAnchor>) {
            names.try_emplace(a.q, "q");
          } else {
            names.try_emplace(a.zero, "zero");
          }
        },
        anchor);
    out.system = EnSystem(n(), equations_, std::move(names));
    out.certificate.mode = mode;
    out.certificate.p = p_;
    out.certificate.n = n();
    out.certificate.defs = defs_;
    out.certificate.anchor = anchor;
    return out;
  }

 private:
  template <typename MakeEq>
  std::uint32_t emit(Polynomial q, MakeEq make) {
    if (auto it = index_.find(q); it != index_.end()) return it->second;
    std::uint32_t t = next_++;
    equations_.push_back(make(t));
    defs_.emplace(t, q);
    index_.emplace(std::move(q), t);
    return t;
  }

  std::size_t p_;
  std::uint32_t next_;
  std::map<Polynomial, std::uint32_t> index_;
  std::map<std::uint32_t, Polynomial> defs_;
  std::vector<EnEquation> equations_;
};

Reduction finish_family(ReductionMode mode, std::size_t p, FamilySystem&& fs,
                        std::variant<IntegerAnchor, NaturalAnchor> anchor, const EnEquation& anchor_eq) {
  fs.equations.push_back(anchor_eq);
  auto names = base_names(p);
  std::visit(
      [&](const auto& a) {
        if constexpr (std::is_same_v<std::decay_t<decltype(a)>, IntegerAnchor>) {
          names.try_emplace(a.q, "q");
        } else {
          names.try_emplace(a.zero, "zero");
          names.try_emplace(a.lhs, "A");
          names.try_emplace(a.rhs, "B");
        }
      },
      anchor);
  Reduction out;
  out.system = EnSystem(fs.n, std::move(fs.equations), std::move(names));
  out.certificate.mode = mode;
  out.certificate.p = p;
  out.certificate.n = fs.n;
  out.certificate.defs = std::move(fs.defs);
  out.certificate.anchor = anchor;
  return out;
}

}  // namespace

const char* mode_name(ReductionMode mode) {
  switch (mode) {
    case ReductionMode::kFullZ: return "full_Z";
    case ReductionMode::kHalvedZ: return "halved_Z";
    case ReductionMode::kCompactZ: return "compact_Z";
    case ReductionMode::kFullN: return "full_N";
    case ReductionMode::kCompactN: return "compact_N";
  }
  return "?";
}

std::optional<ReductionMode> parse_mode(std::string_view name) {
  for (auto m : {ReductionMode::kFullZ, ReductionMode::kHalvedZ, ReductionMode::kCompactZ,
                 ReductionMode::kFullN, ReductionMode::kCompactN}) {
    if (name == mode_name(m)) return m;
  }
  return std::nullopt;
}

Domain mode_domain(ReductionMode mode) {
  return (mode == ReductionMode::kFullN || mode == ReductionMode::kCompactN) ? Domain::kNaturals
                                                                             : Domain::kIntegers;
}

Polynomial ReductionCertificate::polynomial_at(std::uint32_t index) const {
  if (index >= 1 && index <= p) return Polynomial::variable(p, index);
  auto it = defs.find(index);
  if (it == defs.end()) throw Error(ErrorCode::kIndexOutOfRange, "no definition for index " + std::to_string(index));
  return it->second;
}

BalancedPair balance_for_naturals(const Polynomial& d) {
  require_nonzero(d);
  std::vector<Term> b_terms;
  for (const auto& t : d.terms()) b_terms.push_back(Term{t.monomial, abs(t.coeff) + 2});
  BalancedPair out;
  out.b = Polynomial::from_terms(d.arity(), std::move(b_terms));
  out.a = d + out.b;
  return out;
}

FamilyDescriptor family_full_z(const Polynomial& d) {
  BigInt m = max_abs_coeff(d.scaled(2));
  return {d.arity(), -m, m, degree_bounds(d)};
}

FamilyDescriptor family_halved_z(const Polynomial& d) {
  BigInt m = max_abs_coeff(d);
  return {d.arity(), -m, m, degree_bounds(d)};
}

FamilyDescriptor family_full_n(const Polynomial& d) {
  auto [a, b] = balance_for_naturals(d);
  BigInt delta = std::max(max_abs_coeff(a), max_abs_coeff(b));
  std::vector<std::uint32_t> bounds(d.arity());
  for (std::size_t i = 1; i <= d.arity(); ++i) bounds[i - 1] = std::max(degree_in(a, i), degree_in(b, i));
  return {d.arity(), 0, delta, bounds};
}

Reduction build_full_z(const Polynomial& d, const FullModeLimits& limits) {
  require_nonzero(d);
  FamilyDescriptor desc = family_full_z(d);
  FamilySystem fs = build_family_system(desc, {}, limits);
  std::uint32_t q = index_of_member(desc, fs, d.scaled(2), limits.cap);
  return finish_family(ReductionMode::kFullZ, d.arity(), std::move(fs), IntegerAnchor{q},
                       EnEquation::add(q, q, q));
}

Reduction build_halved_z(const Polynomial& d, const FullModeLimits& limits) {
  require_nonzero(d);
  FamilyDescriptor desc = family_halved_z(d);
  FamilySystem fs = build_family_system(desc, {}, limits);
  std::uint32_t q = index_of_member(desc, fs, d, limits.cap);
  return finish_family(ReductionMode::kHalvedZ, d.arity(), std::move(fs), IntegerAnchor{q},
                       EnEquation::add(q, q, q));
}

Reduction build_full_n(const Polynomial& d, const FullModeLimits& limits) {
  require_nonzero(d);
  auto [a, b] = balance_for_naturals(d);
  const std::size_t p = d.arity();
  Polynomial zero(p);
  for (std::size_t i = 1; i <= p; ++i) {
    Polynomial xi = Polynomial::variable(p, i);
    if (a == xi || b == xi) throw Error(ErrorCode::kInvalidArgument, "A or B coincides with a variable");
  }
  if (a == zero || b == zero || a == b) {
    throw Error(ErrorCode::kInvalidArgument, "A and B must be distinct and nonzero");
  }
  FamilyDescriptor desc = family_full_n(d);
  std::vector<Polynomial> anchored{zero, a, b};
  FamilySystem fs = build_family_system(desc, anchored, limits);
  auto z = static_cast<std::uint32_t>(p + 1);
  return finish_family(ReductionMode::kFullN, p, std::move(fs), NaturalAnchor{z, z + 1, z + 2},
                       EnEquation::add(z, z + 1, z + 2));
}

Reduction build_compact_z(const Polynomial& d) {
  require_nonzero(d);
  ChainBuilder chain(d.arity());
  std::uint32_t q = chain.signed_sum(d);
  chain.push(EnEquation::add(q, q, q));
  return chain.finish(ReductionMode::kCompactZ, IntegerAnchor{q});
}

Reduction build_compact_n(const Polynomial& d, NaturalChain strategy) {
  require_nonzero(d);
  ChainBuilder chain(d.arity());
  std::uint32_t lhs;
  std::uint32_t rhs;
  if (strategy == NaturalChain::kBalanced) {
    auto [a, b] = balance_for_naturals(d);
    lhs = chain.positive_sum(a);
    rhs = chain.positive_sum(b);
  } else {
    std::vector<Term> pos;
    std::vector<Term> neg;
    for (const auto& t : d.terms()) {
      (t.coeff > 0 ? pos : neg).push_back(Term{t.monomial, abs(t.coeff)});
    }
    rhs = chain.positive_sum(Polynomial::from_terms(d.arity(), std::move(pos)));
    lhs = chain.positive_sum(Polynomial::from_terms(d.arity(), std::move(neg)));
  }
  std::uint32_t z = chain.zero();
  chain.push(EnEquation::add(z, lhs, rhs));
  return chain.finish(ReductionMode::kCompactN, NaturalAnchor{z, lhs, rhs});
}

std::size_t master_arity(std::size_t r) {
  if (r < 2) throw Error(ErrorCode::kArityTooSmall, "representation needs r >= 2");
  return r + 8 + 4 * (r - 2);
}

std::array<std::size_t, 4> master_square_indices(std::size_t r, std::size_t i) {
  if (i < 1 || i > r) throw Error(ErrorCode::kIndexOutOfRange, "square block index");
  std::size_t first = i <= 2 ? r + 4 * (i - 1) + 1 : r + 8 + 4 * (i - 3) + 1;
  return {first, first + 1, first + 2, first + 3};
}

std::vector<std::string> master_variable_names(std::size_t r) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= r; ++i) names.push_back("x" + std::to_string(i));
  for (const char* s : {"a", "b", "c", "d", "alpha", "beta", "gamma", "delta"}) names.emplace_back(s);
  for (std::size_t i = 3; i <= r; ++i) {
    for (int k = 1; k <= 4; ++k) names.push_back("x" + std::to_string(i) + "_" + std::to_string(k));
  }
  return names;
}

Polynomial build_master_z(const Polynomial& w) {
  const std::size_t r = w.arity();
  const std::size_t arity = master_arity(r);
  Polynomial master = w.embedded(arity).squared();
  for (std::size_t i = 1; i <= r; ++i) {
    Polynomial gap = Polynomial::variable(arity, i);
    for (std::size_t sq : master_square_indices(r, i)) gap -= Polynomial::variable(arity, sq).squared();
    master += gap.squared();
  }
  return master;
}

}  // namespace dio

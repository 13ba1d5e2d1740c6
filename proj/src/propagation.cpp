#include "dio/propagation.hpp"

#include <algorithm>

#include "dio/error.hpp"

namespace dio {

namespace {

// Solves c * x = rhs for integer x.
std::optional<BigInt> solve_linear(const BigInt& c, const BigInt& rhs) {
  if (rhs % c != 0) return std::nullopt;
  return BigInt(rhs / c);
}

}  // namespace

Propagator::Propagator(const EnSystem& system, Domain domain)
    : system_(system),
      domain_(domain),
      n_(system.n()),
      values_(system.n() + 1),
      occurs_(system.n() + 1),
      queued_(system.size(), 0) {
  const auto& eqs = system.equations();
  for (std::uint32_t id = 0; id < eqs.size(); ++id) {
    const auto& eq = eqs[id];
    std::uint32_t vars[3] = {eq.i, eq.j, eq.k};
    int count = eq.kind == EqKind::kOne ? 1 : 3;
    for (int t = 0; t < count; ++t) {
      if (vars[t] == 0 || vars[t] > n_) {
        throw Error(ErrorCode::kIndexOutOfRange, "equation " + eq.to_string() + " references index outside n");
      }
      bool seen = false;
      for (int u = 0; u < t; ++u) seen = seen || vars[u] == vars[t];
      if (!seen) occurs_[vars[t]].push_back(id);
    }
  }
}

void Propagator::shuffle_with(std::uint64_t seed) { rng_.emplace(seed); }

bool Propagator::fail(const EnEquation& eq) {
  failed_ = true;
  conflict_ = eq;
  return false;
}

bool Propagator::set(std::uint32_t var, BigInt value, std::optional<EnEquation> cause) {
  if (var == 0 || var > n_) throw Error(ErrorCode::kIndexOutOfRange, "assignment index outside n");
  if (values_[var]) {
    if (*values_[var] == value) return true;
    failed_ = true;
    conflict_ = cause;
    return false;
  }
  if (domain_ == Domain::kNaturals && value < 0) {
    failed_ = true;
    conflict_ = cause;
    return false;
  }
  values_[var] = std::move(value);
  trail_.push_back(var);
  for (auto id : occurs_[var]) {
    if (!queued_[id]) {
      queued_[id] = 1;
      queue_.push_back(id);
    }
  }
  return true;
}

bool Propagator::seed(std::uint32_t var, const BigInt& value) {
  if (failed_) return false;
  return set(var, value, std::nullopt);
}

bool Propagator::run_all() {
  if (failed_) return false;
  for (std::uint32_t id = 0; id < system_.size(); ++id) {
    if (!queued_[id]) {
      queued_[id] = 1;
      queue_.push_back(id);
    }
  }
  if (rng_) std::shuffle(queue_.begin(), queue_.end(), *rng_);
  return run();
}

bool Propagator::assign(std::uint32_t var, const BigInt& value) {
  if (failed_) return false;
  if (!set(var, value, std::nullopt)) return false;
  return run();
}

bool Propagator::run() {
  while (!queue_.empty()) {
    if (rng_ && queue_.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, queue_.size() - 1);
      std::swap(queue_.front(), queue_[pick(*rng_)]);
    }
    std::uint32_t id = queue_.front();
    queue_.pop_front();
    queued_[id] = 0;
    if (!apply(id)) {
      for (auto q : queue_) queued_[q] = 0;
      queue_.clear();
      return false;
    }
  }
  return true;
}

bool Propagator::apply(std::uint32_t eq_id) {
  const EnEquation& eq = system_.equations()[eq_id];
  auto& vi = values_[eq.i];
  if (eq.kind == EqKind::kOne) {
    if (vi) return *vi == 1 ? true : fail(eq);
    return set(eq.i, 1, eq);
  }
  auto& vj = values_[eq.j];
  auto& vk = values_[eq.k];

  if (eq.kind == EqKind::kAdd) {
    // x_i + x_j - x_k = 0 as a linear form over the distinct variables.
    std::uint32_t vars[3] = {eq.i, eq.j, eq.k};
    int coef[3] = {1, 1, -1};
    std::uint32_t distinct[3];
    int dcoef[3];
    int nd = 0;
    for (int t = 0; t < 3; ++t) {
      int f = -1;
      for (int u = 0; u < nd; ++u) {
        if (distinct[u] == vars[t]) f = u;
      }
      if (f < 0) {
        distinct[nd] = vars[t];
        dcoef[nd] = coef[t];
        ++nd;
      } else {
        dcoef[f] += coef[t];
      }
    }
    BigInt known = 0;
    int unknown = -1;
    int unknown_count = 0;
    for (int u = 0; u < nd; ++u) {
      if (dcoef[u] == 0) continue;
      if (values_[distinct[u]]) {
        known += dcoef[u] * *values_[distinct[u]];
      } else {
        unknown = u;
        ++unknown_count;
      }
    }
    if (unknown_count == 0) return known == 0 ? true : fail(eq);
    if (unknown_count > 1) return true;
    auto x = solve_linear(BigInt(dcoef[unknown]), BigInt(-known));
    if (!x) return fail(eq);
    return set(distinct[unknown], std::move(*x), eq);
  }

  // Multiplication.
  if (eq.i == eq.j) {
    if (eq.k == eq.i) {
      // x * x = x: x in {0, 1}; only checkable.
      if (vi) return (*vi == 0 || *vi == 1) ? true : fail(eq);
      return true;
    }
    if (vi) {
      BigInt sq = *vi * *vi;
      return set(eq.k, std::move(sq), eq);
    }
    if (vk) {
      auto root = exact_sqrt(*vk);
      if (!root) return fail(eq);
      if (*root == 0 || domain_ == Domain::kNaturals) return set(eq.i, std::move(*root), eq);
    }
    return true;
  }
  if (eq.k == eq.i || eq.k == eq.j) {
    // x * y = x, with x the repeated index.
    std::uint32_t x = eq.k;
    std::uint32_t y = eq.k == eq.i ? eq.j : eq.i;
    const auto& vx = values_[x];
    const auto& vy = values_[y];
    if (vx && vy) return (*vx * *vy == *vx) ? true : fail(eq);
    if (vy && *vy != 1) return set(x, 0, eq);
    if (vx && *vx != 0) return set(y, 1, eq);
    return true;
  }
  if (vi && vj) {
    BigInt prod = *vi * *vj;
    return set(eq.k, std::move(prod), eq);
  }
  // A zero factor fixes the product even with the other factor open.
  if ((vi && *vi == 0) || (vj && *vj == 0)) return set(eq.k, 0, eq);
  if (vk) {
    const std::optional<BigInt>& factor = vi ? vi : vj;
    std::uint32_t other = vi ? eq.j : eq.i;
    if (factor) {
      if (*factor == 0) return *vk == 0 ? true : fail(eq);
      auto x = solve_linear(*factor, *vk);
      if (!x) return fail(eq);
      return set(other, std::move(*x), eq);
    }
  }
  return true;
}

void Propagator::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    values_[trail_.back()].reset();
    trail_.pop_back();
  }
  for (auto q : queue_) queued_[q] = 0;
  queue_.clear();
  failed_ = false;
  conflict_.reset();
}

std::vector<std::uint32_t> Propagator::undetermined() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 1; v <= n_; ++v) {
    if (!values_[v]) out.push_back(v);
  }
  return out;
}

std::uint32_t Propagator::next_undetermined(std::uint32_t from) const {
  for (std::uint32_t v = from + 1; v <= n_; ++v) {
    if (!values_[v]) return v;
  }
  return 0;
}

Assignment Propagator::assignment() const {
  Assignment out;
  for (std::uint32_t v = 1; v <= n_; ++v) {
    if (values_[v]) out.emplace(v, *values_[v]);
  }
  return out;
}

PropagationResult propagate(const EnSystem& system, const Assignment& seed, Domain domain,
                            std::optional<std::uint64_t> shuffle_seed) {
  Propagator prop(system, domain);
  if (shuffle_seed) prop.shuffle_with(*shuffle_seed);
  PropagationResult result;
  bool ok = true;
  for (const auto& [var, value] : seed) {
    if (!prop.seed(var, value)) {
      ok = false;
      break;
    }
  }
  if (ok) ok = prop.run_all();
  result.values = prop.assignment();
  if (!ok) {
    result.outcome = PropagationResult::Outcome::kContradiction;
    result.conflict = prop.conflict();
    return result;
  }
  result.undetermined = prop.undetermined();
  result.outcome = result.undetermined.empty() ? PropagationResult::Outcome::kComplete
                                               : PropagationResult::Outcome::kStuck;
  return result;
}

}  // namespace dio

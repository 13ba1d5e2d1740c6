#include "dio/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "dio/error.hpp"

namespace dio {

namespace {

std::vector<BigInt> int_range(std::int64_t lo, std::int64_t hi) {
  std::vector<BigInt> out;
  for (std::int64_t v = lo; v <= hi; ++v) out.emplace_back(v);
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

class Dfs {
 public:
  Dfs(Propagator& prop, std::span<const std::uint32_t> preferred, const Candidates& candidates,
      std::uint64_t limit, const SolutionVisitor& visit)
      : prop_(prop), preferred_(preferred), candidates_(candidates), limit_(limit), visit_(visit) {}

  SearchResult run() {
    descend();
    return result_;
  }

 private:
  std::uint32_t choose() const {
    for (auto v : preferred_) {
      if (!prop_.determined(v)) return v;
    }
    return prop_.next_undetermined();
  }

  // Returns false when the search must stop.
  bool descend() {
    if (prop_.complete()) {
      ++result_.solutions;
      if (!visit_(prop_)) {
        result_.stopped = true;
        return false;
      }
      return true;
    }
    std::uint32_t var = choose();
    for (const auto& value : candidates_(var)) {
      if (++result_.nodes > limit_) {
        result_.truncated = true;
        return false;
      }
      std::size_t mark = prop_.mark();
      bool keep_going = true;
      if (prop_.assign(var, value)) keep_going = descend();
      prop_.undo(mark);
      if (!keep_going) return false;
    }
    return true;
  }

  Propagator& prop_;
  std::span<const std::uint32_t> preferred_;
  const Candidates& candidates_;
  std::uint64_t limit_;
  const SolutionVisitor& visit_;
  SearchResult result_;
};

std::array<std::uint64_t, 4> foursquare_small(std::uint64_t m) {
  auto root = [](std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
  };
  for (std::uint64_t a = 0; a * a <= m; ++a) {
    std::uint64_t r1 = m - a * a;
    for (std::uint64_t b = 0; b * b <= r1; ++b) {
      std::uint64_t r2 = r1 - b * b;
      for (std::uint64_t c = 0; c * c <= r2; ++c) {
        std::uint64_t r3 = r2 - c * c;
        std::uint64_t d = root(r3);
        if (d * d == r3) return {a, b, c, d};
      }
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "no four-square decomposition found");
}

}  // namespace

Box Box::cube(std::size_t dim, std::int64_t lo, std::int64_t hi) {
  Box b;
  b.bounds.assign(dim, {lo, hi});
  return b;
}

bool Box::empty() const {
  return std::any_of(bounds.begin(), bounds.end(), [](const auto& b) { return b.first > b.second; });
}

std::uint64_t Box::point_count() const {
  if (empty()) return 0;
  std::uint64_t count = 1;
  for (const auto& [lo, hi] : bounds) count = saturating_mul(count, static_cast<std::uint64_t>(hi - lo) + 1);
  return count;
}

Box Box::restricted_to(Domain domain) const {
  Box out = *this;
  if (domain == Domain::kNaturals) {
    for (auto& b : out.bounds) b.first = std::max<std::int64_t>(b.first, 0);
  }
  return out;
}

std::vector<BigInt> Box::point(std::uint64_t rank) const {
  std::vector<BigInt> out(dim());
  for (std::size_t i = dim(); i-- > 0;) {
    auto width = static_cast<std::uint64_t>(bounds[i].second - bounds[i].first) + 1;
    out[i] = bounds[i].first + static_cast<std::int64_t>(rank % width);
    rank /= width;
  }
  return out;
}

std::vector<std::vector<BigInt>> enumerate_roots(const Polynomial& d, const Box& box, Domain domain,
                                                 const OracleLimits& limits) {
  if (box.dim() != d.arity()) throw Error(ErrorCode::kDimensionMismatch, "box dimension differs from arity");
  Box b = box.restricted_to(domain);
  std::uint64_t count = b.point_count();
  if (count > limits.point_limit) {
    throw Error(ErrorCode::kBoxTooLarge, "box has " + std::to_string(count) + " points, limit is " +
                                             std::to_string(limits.point_limit));
  }
  std::vector<std::vector<BigInt>> roots;
  for (std::uint64_t r = 0; r < count; ++r) {
    auto pt = b.point(r);
    if (eval(d, pt) == 0) roots.push_back(std::move(pt));
  }
  return roots;
}

Assignment lift(const ReductionCertificate& cert, std::span<const BigInt> base) {
  if (base.size() != cert.p) throw Error(ErrorCode::kDimensionMismatch, "base point length differs from p");
  Assignment out;
  for (std::uint32_t i = 1; i <= cert.p; ++i) out.emplace(i, base[i - 1]);
  for (const auto& [idx, poly] : cert.defs) out.emplace(idx, eval(poly, base));
  return out;
}

SearchResult search_solutions(Propagator& prop, std::span<const std::uint32_t> preferred,
                              const Candidates& candidates, std::uint64_t node_limit,
                              const SolutionVisitor& visit) {
  return Dfs(prop, preferred, candidates, node_limit, visit).run();
}

PointVerdict classify_point(const EnSystem& s, std::span<const BigInt> base, Domain domain,
                            std::int64_t residual_lo, std::int64_t residual_hi, std::uint64_t search_limit) {
  PointVerdict verdict;
  Propagator prop(s, domain);
  bool ok = true;
  for (std::uint32_t i = 1; i <= base.size() && ok; ++i) ok = prop.seed(i, base[i - 1]);
  if (ok) ok = prop.run_all();
  if (!ok) {
    verdict.kind = PointVerdict::Kind::kRefutedByPropagation;
    return verdict;
  }
  if (prop.complete()) {
    verdict.kind = PointVerdict::Kind::kUniqueByPropagation;
    verdict.extension = prop.assignment();
    return verdict;
  }
  if (domain == Domain::kNaturals) residual_lo = std::max<std::int64_t>(residual_lo, 0);
  const auto values = int_range(residual_lo, residual_hi);
  Candidates cand = [&](std::uint32_t) { return values; };
  SolutionVisitor visit = [&](const Propagator& p) {
    verdict.extension = p.assignment();
    return false;
  };
  auto res = search_solutions(prop, {}, cand, search_limit, visit);
  if (res.solutions > 0) {
    verdict.kind = PointVerdict::Kind::kExtendsBySearch;
  } else if (res.truncated) {
    verdict.kind = PointVerdict::Kind::kInconclusive;
  } else {
    verdict.kind = PointVerdict::Kind::kRefutedBySearch;
  }
  return verdict;
}

namespace {

std::pair<std::int64_t, std::int64_t> residual_range(const Box& box) {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  for (const auto& [l, h] : box.bounds) {
    lo = std::min(lo, l);
    hi = std::max(hi, h);
  }
  return {lo, hi};
}

template <typename PerPoint>
void for_each_point_parallel(const Box& b, unsigned jobs, PerPoint&& work) {
  const std::uint64_t count = b.point_count();
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count < 2) {
    for (std::uint64_t r = 0; r < count; ++r) work(0u, r);
    return;
  }
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&, t] {
      for (std::uint64_t r = t; r < count; r += jobs) work(t, r);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace

EquivalenceReport check_equivalence(const Polynomial& d, const EnSystem& s, const ReductionCertificate& cert,
                                    const Box& box, Domain domain, const OracleLimits& limits) {
  if (d.arity() != cert.p || box.dim() != cert.p) {
    throw Error(ErrorCode::kDimensionMismatch, "polynomial, certificate and box must share p");
  }
  if (s.n() != cert.n) throw Error(ErrorCode::kDimensionMismatch, "certificate and system disagree on n");
  Box b = box.restricted_to(domain);
  if (b.point_count() > limits.point_limit) {
    throw Error(ErrorCode::kBoxTooLarge, "box exceeds the point limit");
  }
  auto [rlo, rhi] = residual_range(b);
  unsigned jobs = std::max(1u, limits.jobs);
  std::vector<EquivalenceReport> partial(jobs);

  for_each_point_parallel(b, jobs, [&](unsigned t, std::uint64_t rank) {
    EquivalenceReport& rep = partial[t];
    auto pt = b.point(rank);
    ++rep.base_points;
    bool root = eval(d, pt) == 0;
    PointVerdict v = classify_point(s, pt, domain, rlo, rhi, limits.search_limit);
    if (v.extends()) {
      ++rep.system_solutions;
      rep.extendable.push_back(pt);
    }
    if (root) {
      ++rep.base_roots;
      Assignment lifted = lift(cert, pt);
      if (check_assignment(s, lifted, domain).satisfied()) ++rep.lifted_ok;
      if (v.kind == PointVerdict::Kind::kUniqueByPropagation && v.extension == lifted) {
        ++rep.unique_extension;
      } else if (v.kind == PointVerdict::Kind::kExtendsBySearch) {
        ++rep.stuck_roots;
      }
      if (!v.extends()) rep.spurious.push_back(pt);
    } else {
      switch (v.kind) {
        case PointVerdict::Kind::kRefutedByPropagation: ++rep.refuted_by_propagation; break;
        case PointVerdict::Kind::kRefutedBySearch: ++rep.refuted_by_search; break;
        case PointVerdict::Kind::kInconclusive: ++rep.inconclusive; break;
        default: rep.spurious.push_back(pt); break;
      }
    }
  });

  EquivalenceReport out;
  for (auto& r : partial) {
    out.base_points += r.base_points;
    out.base_roots += r.base_roots;
    out.lifted_ok += r.lifted_ok;
    out.unique_extension += r.unique_extension;
    out.stuck_roots += r.stuck_roots;
    out.refuted_by_propagation += r.refuted_by_propagation;
    out.refuted_by_search += r.refuted_by_search;
    out.inconclusive += r.inconclusive;
    out.system_solutions += r.system_solutions;
    out.spurious.insert(out.spurious.end(), r.spurious.begin(), r.spurious.end());
    out.extendable.insert(out.extendable.end(), r.extendable.begin(), r.extendable.end());
  }
  std::sort(out.spurious.begin(), out.spurious.end());
  std::sort(out.extendable.begin(), out.extendable.end());
  return out;
}

std::vector<std::vector<BigInt>> solution_projection(const EnSystem& s, std::size_t p, const Box& box,
                                                     Domain domain, const OracleLimits& limits) {
  if (box.dim() != p || p > s.n()) throw Error(ErrorCode::kDimensionMismatch, "box dimension must equal p <= n");
  Box b = box.restricted_to(domain);
  if (b.point_count() > limits.point_limit) throw Error(ErrorCode::kBoxTooLarge, "box exceeds the point limit");
  auto [rlo, rhi] = residual_range(b);
  std::vector<std::vector<BigInt>> out;
  for (std::uint64_t r = 0; r < b.point_count(); ++r) {
    auto pt = b.point(r);
    auto v = classify_point(s, pt, domain, rlo, rhi, limits.search_limit);
    if (v.kind == PointVerdict::Kind::kInconclusive) {
      throw Error(ErrorCode::kSearchLimit, "residual search exceeded its limit");
    }
    if (v.extends()) out.push_back(std::move(pt));
  }
  return out;
}

std::array<BigInt, 4> foursquare_decompose(const BigInt& m) {
  if (m < 0) throw Error(ErrorCode::kNegativeInput, "four-square decomposition of a negative number");
  if (m < (BigInt(1) << 60)) {
    auto q = foursquare_small(m.convert_to<std::uint64_t>());
    return {BigInt(q[0]), BigInt(q[1]), BigInt(q[2]), BigInt(q[3])};
  }
  for (BigInt a = 0; a * a <= m; ++a) {
    BigInt r1 = m - a * a;
    for (BigInt b = 0; b * b <= r1; ++b) {
      BigInt r2 = r1 - b * b;
      for (BigInt c = 0; c * c <= r2; ++c) {
        if (auto d = exact_sqrt(r2 - c * c)) return {a, b, c, *d};
      }
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "no four-square decomposition found");
}

std::optional<std::vector<BigInt>> find_representation_root(const RepresentationFile& rep, const BigInt& value,
                                                            const BigInt& argument, std::int64_t radius,
                                                            std::uint64_t point_limit) {
  Box ex = Box::cube(rep.r - 2, 0, radius);
  if (ex.point_count() > point_limit) throw Error(ErrorCode::kBoxTooLarge, "existential search box too large");
  for (std::uint64_t r = 0; r < ex.point_count(); ++r) {
    std::vector<BigInt> pt{value, argument};
    auto rest = ex.point(r);
    pt.insert(pt.end(), rest.begin(), rest.end());
    if (eval(rep.w, pt) == 0) return pt;
  }
  return std::nullopt;
}

Assignment build_witness(const AssembledSystem& sys, std::span<const BigInt> rep_root) {
  const PsiSystem& psi = sys.psi;
  const ReductionCertificate& cert = psi.certificate;
  if (rep_root.size() != psi.r) throw Error(ErrorCode::kDimensionMismatch, "root length differs from r");
  std::vector<BigInt> base(cert.p);
  std::copy(rep_root.begin(), rep_root.end(), base.begin());
  if (psi.mode == Domain::kIntegers) {
    for (std::size_t i = 1; i <= psi.r; ++i) {
      auto squares = foursquare_decompose(rep_root[i - 1]);
      auto idx = master_square_indices(psi.r, i);
      for (int k = 0; k < 4; ++k) base[idx[k] - 1] = squares[k];
    }
  }
  Assignment a = lift(cert, base);
  const Layout& lay = sys.layout;
  for (std::size_t i = 0; i < lay.padding_count; ++i) a[lay.padding_first + static_cast<std::uint32_t>(i)] = 1;
  for (std::size_t k = 1; k <= lay.chain_length; ++k) a[lay.t(k)] = BigInt(k);
  a[lay.w] = BigInt(2 * lay.chain_length);
  a[lay.y] = BigInt(lay.n % 2);
  return a;
}

PinningReport verify_pinning(const AssembledSystem& sys, const BigInt& n, const BigInt& expected, Domain domain,
                             const PinningOptions& options, const RepresentationFile* rep,
                             std::optional<std::vector<BigInt>> rep_root) {
  PinningReport report;
  const EnSystem& s = sys.system;
  Propagator prop(s, domain);
  if (!prop.run_all()) return report;
  report.propagation_consistent = true;
  if (prop.determined(2)) {
    report.x2_forced = true;
    report.x2_value = *prop.value(2);
  }

  if (!rep_root) {
    if (rep) {
      rep_root = find_representation_root(*rep, expected, n, options.existential_radius);
    } else if (sys.psi.r == 2) {
      rep_root = std::vector<BigInt>{expected, n};
    }
  }
  Assignment witness;
  if (rep_root) {
    report.witness_found = true;
    try {
      witness = build_witness(sys, *rep_root);
      report.witness_ok = check_assignment(s, witness, domain).satisfied();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNegativeInput) throw;
    }
  }

  std::vector<std::uint32_t> preferred;
  for (std::uint32_t i = 1; i <= sys.psi.certificate.p; ++i) preferred.push_back(i);

  SolutionVisitor visit = [&](const Propagator& p) {
    const BigInt& x1 = *p.value(1);
    if (x1 != expected && report.wrong_x1.size() < 16) report.wrong_x1.push_back(x1);
    return true;
  };
  auto run = [&](const Candidates& cand) {
    std::uint64_t budget = options.search_limit - std::min(options.search_limit, report.nodes);
    auto res = search_solutions(prop, preferred, cand, budget, visit);
    report.nodes += res.nodes;
    report.solutions += res.solutions;
    if (res.truncated) {
      throw Error(ErrorCode::kSearchLimit, "pinning search exceeded " + std::to_string(options.search_limit) +
                                               " nodes");
    }
  };

  const std::int64_t lo = domain == Domain::kNaturals ? 0 : -options.box_radius;
  const auto origin_values = int_range(lo, options.box_radius);
  run([&](std::uint32_t) { return origin_values; });

  if (!witness.empty()) {
    run([&](std::uint32_t var) {
      auto it = witness.find(var);
      BigInt center = it == witness.end() ? BigInt(0) : it->second;
      std::vector<BigInt> out;
      for (std::int64_t d = -options.witness_radius; d <= options.witness_radius; ++d) {
        BigInt v = center + d;
        if (domain == Domain::kNaturals && v < 0) continue;
        out.push_back(std::move(v));
      }
      return out;
    });
  }
  return report;
}

}  // namespace dio

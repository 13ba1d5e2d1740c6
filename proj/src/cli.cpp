#include "dio/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dio/eqn_io.hpp"
#include "dio/error.hpp"
#include "dio/family.hpp"
#include "dio/oracle.hpp"
#include "dio/pipeline.hpp"
#include "dio/reducer.hpp"

namespace dio::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Every file goes to a temporary first; nothing is renamed into place unless
// all writes succeeded.
void write_files(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& [tmp, _] : staged) fs::remove(tmp, ec);
  };
  for (const auto& [path, content] : files) {
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) {
      staged.emplace_back(tmp, target);
      out << content;
      out.close();
    }
    if (!out) {
      cleanup();
      throw Error(ErrorCode::kIo, "cannot write " + path);
    }
  }
  for (const auto& [tmp, target] : staged) {
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
      cleanup();
      throw Error(ErrorCode::kIo, "cannot write " + target.string());
    }
  }
}

std::string sibling(const std::string& path, const std::string& ext) {
  fs::path p(path);
  p.replace_extension(ext);
  return p.string();
}

Domain parse_ring(const std::string& ring) {
  if (ring == "z" || ring == "Z") return Domain::kIntegers;
  if (ring == "n" || ring == "N") return Domain::kNaturals;
  throw UsageError("unknown ring '" + ring + "' (expected z or n)");
}

std::pair<std::int64_t, std::int64_t> parse_interval(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("box must look like LO..HI, got '" + text + "'");
  try {
    std::size_t used = 0;
    auto lo = std::stoll(text.substr(0, dots), &used);
    if (used != dots) throw UsageError("bad box bound");
    auto rest = text.substr(dots + 2);
    auto hi = std::stoll(rest, &used);
    if (used != rest.size()) throw UsageError("bad box bound");
    if (lo > hi) throw UsageError("empty box " + text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("box must look like LO..HI, got '" + text + "'");
  }
}

std::string join(const std::vector<BigInt>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += to_string(v[i]);
  }
  return out;
}

ReductionMode reduction_mode(const std::string& mode, Domain ring) {
  if (mode == "compact") return ring == Domain::kIntegers ? ReductionMode::kCompactZ : ReductionMode::kCompactN;
  if (mode == "full") return ring == Domain::kIntegers ? ReductionMode::kFullZ : ReductionMode::kFullN;
  if (mode == "halved") {
    if (ring != Domain::kIntegers) throw UsageError("halved mode exists only over z");
    return ReductionMode::kHalvedZ;
  }
  throw UsageError("unknown mode '" + mode + "'");
}

Reduction reduce_with(const Polynomial& d, ReductionMode mode, const FullModeLimits& limits) {
  switch (mode) {
    case ReductionMode::kFullZ: return build_full_z(d, limits);
    case ReductionMode::kHalvedZ: return build_halved_z(d, limits);
    case ReductionMode::kCompactZ: return build_compact_z(d);
    case ReductionMode::kFullN: return build_full_n(d, limits);
    case ReductionMode::kCompactN: return build_compact_n(d);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown reduction mode");
}

// Exact below 10^30, otherwise a power of ten; printing millions of digits
// is slower than anything else info does.
std::string card_text(const FamilyDescriptor& desc) {
  double lg = card_T_log10(desc);
  if (lg < 30) return to_string(card_T(desc));
  double exponent = std::floor(lg);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3fe%.0f", std::pow(10.0, lg - exponent), exponent);
  return buf;
}

struct Options {
  std::string ring = "z";
  std::string mode = "compact";
  std::uint64_t cap = 1'000'000;
  std::uint64_t pair_limit = 2000;
  std::uint64_t search_limit = 1'000'000;
  std::uint64_t point_limit = 100'000'000;
  unsigned jobs = 1;
  std::string box = "-8..8";
};

void write_report(const std::string& path, const nlohmann::ordered_json& j) {
  if (!path.empty()) write_files({{path, j.dump(2) + "\n"}});
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diophantine equations to E_n systems", "dio"};
  app.require_subcommand(1);
  Options opt;

  auto add_ring = [&](CLI::App* sub) {
    sub->add_option("--ring", opt.ring, "z (integers) or n (naturals)")->capture_default_str();
  };
  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--cap", opt.cap, "largest family a full reduction may build")
        ->envname("DIO_CAP")
        ->capture_default_str();
    sub->add_option("--pair-limit", opt.pair_limit, "largest family whose pairs are enumerated")
        ->envname("DIO_PAIR_LIMIT")
        ->capture_default_str();
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--search-limit", opt.search_limit, "node budget of each bounded search")
        ->envname("DIO_SEARCH_LIMIT")
        ->capture_default_str();
    sub->add_option("--point-limit", opt.point_limit, "largest box to enumerate")
        ->envname("DIO_POINT_LIMIT")
        ->capture_default_str();
    sub->add_option("--jobs", opt.jobs, "worker threads")->envname("DIO_JOBS")->capture_default_str();
  };

  // reduce
  auto* reduce = app.add_subcommand("reduce", "reduce an equation to an E_n system (.ens + .cert)");
  std::string equation;
  std::string out_path = "reduced.ens";
  std::string cert_path;
  add_ring(reduce);
  add_limits(reduce);
  reduce->add_option("--mode", opt.mode, "compact, full or halved")->capture_default_str();
  reduce->add_option("--out", out_path, "output .ens")->capture_default_str();
  reduce->add_option("--cert", cert_path, "output certificate (default: beside --out)");
  reduce->add_option("equation", equation, "e.g. \"x1^2 = x2 + 1\"")->required();

  // fn-system
  auto* fn = app.add_subcommand("fn-system", "assemble the n-variable system pinning x1 = f(n)");
  std::string rep_path;
  std::size_t n = 0;
  std::string layout_path;
  add_ring(fn);
  add_limits(fn);
  fn->add_option("--rep", rep_path, "representation file")->required();
  fn->add_option("--n", n, "number of variables")->required();
  fn->add_option("--mode", opt.mode, "compact or full")->capture_default_str();
  fn->add_option("--out", out_path, "output .ens")->capture_default_str();
  fn->add_option("--layout", layout_path, "output layout (default: beside --out)");
  fn->add_option("--cert", cert_path, "output Psi certificate (default: beside --out)");

  // info
  auto* info = app.add_subcommand("info", "print sizes and thresholds");
  add_ring(info);
  info->add_option("--rep", rep_path, "representation file");
  info->add_option("equation", equation, "equation to size up");

  // solve
  auto* solve = app.add_subcommand("solve", "enumerate solutions of an .ens within a box");
  std::string ens_path;
  std::size_t project = 0;
  std::uint64_t max_solutions = 1000;
  add_ring(solve);
  add_search(solve);
  solve->add_option("--ens", ens_path, "system file")->required();
  solve->add_option("--box", opt.box, "range for every undetermined variable, LO..HI")->capture_default_str();
  solve->add_option("--project", project, "print only x1..xk (0 prints everything)");
  solve->add_option("--max-solutions", max_solutions, "stop after this many")->capture_default_str();

  // verify-equiv
  auto* veq = app.add_subcommand("verify-equiv", "compare the roots of D with the solutions of S on a box");
  std::string report_path;
  add_search(veq);
  veq->add_option("--ens", ens_path, "system file")->required();
  veq->add_option("--cert", cert_path, "certificate file")->required();
  veq->add_option("--box", opt.box, "range for x1..xp, LO..HI")->capture_default_str();
  veq->add_option("--report", report_path, "JSON summary");
  veq->add_option("equation", equation, "source equation")->required();

  // verify-pin
  auto* vpin = app.add_subcommand("verify-pin", "check that bounded solutions have x1 = expected");
  std::string expected_text;
  std::int64_t radius = 1;
  std::int64_t witness_radius = 1;
  std::int64_t existential_radius = 8;
  add_search(vpin);
  vpin->add_option("--ens", ens_path, "system file")->required();
  vpin->add_option("--layout", layout_path, "layout file (default: beside --ens)");
  vpin->add_option("--cert", cert_path, "Psi certificate (default: beside --ens)");
  vpin->add_option("--expected", expected_text, "expected value of x1")->required();
  vpin->add_option("--rep", rep_path, "representation file used to build a witness");
  vpin->add_option("--radius", radius, "decision variables range over [-R, R]")->capture_default_str();
  vpin->add_option("--witness-radius", witness_radius, "window around the witness")->capture_default_str();
  vpin->add_option("--existential-radius", existential_radius, "search range for x3..xr of W")
      ->capture_default_str();
  vpin->add_option("--report", report_path, "JSON summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error[E_USAGE]: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*reduce) {
      Domain ring = parse_ring(opt.ring);
      ReductionMode mode = reduction_mode(opt.mode, ring);
      auto src = parse_equation(equation);
      FullModeLimits limits{opt.cap, opt.pair_limit};
      Reduction red = reduce_with(src.normalized, mode, limits);
      if (cert_path.empty()) cert_path = sibling(out_path, ".cert");
      write_files({{out_path, serialize(red.system)}, {cert_path, serialize(red.certificate)}});
      out << "mode " << mode_name(mode) << "\np " << red.certificate.p << "\nn " << red.system.n()
          << "\nequations " << red.system.equations().size() << "\n";
      return kOk;
    }

    if (*fn) {
      Domain ring = parse_ring(opt.ring);
      if (opt.mode != "compact" && opt.mode != "full") throw UsageError("fn-system mode must be compact or full");
      auto rep = parse_representation(read_file(rep_path));
      FullModeLimits limits{opt.cap, opt.pair_limit};
      auto sys = pipeline(rep, ring, n, opt.mode == "full" ? PsiReduction::kFull : PsiReduction::kCompact, limits);
      if (layout_path.empty()) layout_path = sibling(out_path, ".layout");
      if (cert_path.empty()) cert_path = sibling(out_path, ".cert");
      write_files({{out_path, serialize(sys.system)},
                   {layout_path, serialize_layout(sys.layout)},
                   {cert_path, serialize(sys.psi.certificate)}});
      out << "n " << sys.system.n() << "\ns " << sys.psi.s << "\nthreshold " << threshold(sys.psi.s, ring) << "\n";
      return kOk;
    }

    if (*info) {
      Domain ring = parse_ring(opt.ring);
      if (rep_path.empty() == equation.empty()) throw UsageError("info needs exactly one of --rep or an equation");
      if (!rep_path.empty()) {
        auto rep = parse_representation(read_file(rep_path));
        PsiSystem psi = build_psi(rep, ring);
        const char* label = ring == Domain::kIntegers ? "m(f)" : "w(f)";
        Polynomial full_source = ring == Domain::kIntegers ? build_master_z(rep.w) : rep.w;
        FamilyDescriptor desc = ring == Domain::kIntegers ? family_full_z(full_source) : family_full_n(full_source);
        out << "ring " << domain_name(ring) << "\nr " << rep.r << "\ns=" << psi.s << "\n"
            << label << "=" << threshold(psi.s, ring) << "\ncard(T)=" << card_text(desc) << "\n";
      } else {
        auto src = parse_equation(equation);
        const Polynomial& d = src.normalized;
        out << "ring " << domain_name(ring) << "\np " << d.arity() << "\n";
        if (ring == Domain::kIntegers) {
          out << "card(T) full_Z=" << card_text(family_full_z(d)) << "\n";
          out << "card(T) halved_Z=" << card_text(family_halved_z(d)) << "\n";
          out << "n compact_Z=" << build_compact_z(d).system.n() << "\n";
        } else {
          out << "card(T) full_N=" << card_text(family_full_n(d)) << "\n";
          out << "n compact_N=" << build_compact_n(d).system.n() << "\n";
        }
      }
      return kOk;
    }

    if (*solve) {
      Domain ring = parse_ring(opt.ring);
      EnSystem s = deserialize(read_file(ens_path));
      auto [lo, hi] = parse_interval(opt.box);
      if (ring == Domain::kNaturals) lo = std::max<std::int64_t>(lo, 0);
      std::vector<BigInt> values;
      for (auto v = lo; v <= hi; ++v) values.emplace_back(v);
      Propagator prop(s, ring);
      std::uint64_t printed = 0;
      SearchResult res;
      if (prop.run_all()) {
        Candidates cand = [&](std::uint32_t) { return values; };
        SolutionVisitor visit = [&](const Propagator& p) {
          std::size_t k = project == 0 ? s.n() : std::min(project, s.n());
          std::vector<BigInt> row;
          for (std::uint32_t i = 1; i <= k; ++i) row.push_back(*p.value(i));
          out << join(row) << "\n";
          return ++printed < max_solutions;
        };
        res = search_solutions(prop, {}, cand, opt.search_limit, visit);
      }
      out << "# solutions " << printed << " nodes " << res.nodes << "\n";
      if (res.truncated) throw Error(ErrorCode::kSearchLimit, "search exceeded " + std::to_string(opt.search_limit) + " nodes");
      return kOk;
    }

    if (*veq) {
      auto start = Clock::now();
      EnSystem s = deserialize(read_file(ens_path));
      ReductionCertificate cert = deserialize_certificate(read_file(cert_path));
      auto src = parse_equation(equation, cert.p);
      auto [lo, hi] = parse_interval(opt.box);
      Domain ring = mode_domain(cert.mode);
      OracleLimits limits{opt.point_limit, opt.search_limit, opt.jobs};
      auto rep = check_equivalence(src.normalized, s, cert, Box::cube(cert.p, lo, hi), ring, limits);
      double seconds = std::chrono::duration<double>(Clock::now() - start).count();
      out << "points " << rep.base_points << "\nroots " << rep.base_roots << "\nsolutions " << rep.system_solutions
          << "\nlifted_ok " << rep.lifted_ok << "\nunique_extension " << rep.unique_extension << "\nstuck "
          << rep.stuck_roots << "\nrefuted_by_propagation " << rep.refuted_by_propagation << "\nrefuted_by_search "
          << rep.refuted_by_search << "\ninconclusive " << rep.inconclusive << "\nspurious " << rep.spurious.size()
          << "\n";
      for (const auto& pt : rep.spurious) out << "spurious_point " << join(pt) << "\n";
      out << (rep.passed() ? "PASS" : "FAIL") << "\n";
      nlohmann::ordered_json j;
      j["passed"] = rep.passed();
      j["points"] = rep.base_points;
      j["roots"] = rep.base_roots;
      j["solutions"] = rep.system_solutions;
      j["lifted_ok"] = rep.lifted_ok;
      j["unique_extension"] = rep.unique_extension;
      j["stuck"] = rep.stuck_roots;
      j["refuted_by_propagation"] = rep.refuted_by_propagation;
      j["refuted_by_search"] = rep.refuted_by_search;
      j["inconclusive"] = rep.inconclusive;
      j["spurious"] = nlohmann::json::array();
      for (const auto& pt : rep.spurious) j["spurious"].push_back(join(pt));
      j["seconds"] = seconds;
      write_report(report_path, j);
      return rep.passed() ? kOk : kVerificationFailed;
    }

    if (*vpin) {
      auto start = Clock::now();
      EnSystem s = deserialize(read_file(ens_path));
      if (layout_path.empty()) layout_path = sibling(ens_path, ".layout");
      if (cert_path.empty()) cert_path = sibling(ens_path, ".cert");
      Layout layout = deserialize_layout(read_file(layout_path));
      ReductionCertificate cert = deserialize_certificate(read_file(cert_path));
      AssembledSystem sys = reassemble(s, layout, cert);
      auto expected_value = parse_bigint(expected_text);
      if (!expected_value) throw UsageError("--expected must be an integer");
      BigInt expected = *expected_value;
      std::optional<RepresentationFile> rep;
      if (!rep_path.empty()) rep = parse_representation(read_file(rep_path));
      PinningOptions po;
      po.box_radius = radius;
      po.witness_radius = witness_radius;
      po.existential_radius = existential_radius;
      po.search_limit = opt.search_limit;
      BigInt nn(layout.n);
      auto report = verify_pinning(sys, nn, expected, layout.mode, po, rep ? &*rep : nullptr);
      double seconds = std::chrono::duration<double>(Clock::now() - start).count();
      bool ok = report.passed(nn);
      out << "propagation_consistent " << report.propagation_consistent << "\nx2_forced " << report.x2_forced
          << "\nx2 " << to_string(report.x2_value) << "\nwitness " << report.witness_ok << "\nsolutions "
          << report.solutions << "\nnodes " << report.nodes << "\nwrong_x1 " << report.wrong_x1.size() << "\n"
          << (ok ? "PASS" : "FAIL") << "\n";
      nlohmann::ordered_json j;
      j["passed"] = ok;
      j["propagation_consistent"] = report.propagation_consistent;
      j["x2_forced"] = report.x2_forced;
      j["x2"] = to_string(report.x2_value);
      j["witness_ok"] = report.witness_ok;
      j["solutions"] = report.solutions;
      j["nodes"] = report.nodes;
      j["wrong_x1"] = nlohmann::json::array();
      for (const auto& v : report.wrong_x1) j["wrong_x1"].push_back(to_string(v));
      j["seconds"] = seconds;
      write_report(report_path, j);
      return ok ? kOk : kVerificationFailed;
    }
  } catch (const UsageError& e) {
    err << "error[E_USAGE]: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error[" << code_name(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kFamilyTooLarge:
      case ErrorCode::kBoxTooLarge:
      case ErrorCode::kSearchLimit:
        return kResourceLimit;
      default:
        return kUsage;
    }
  }
  return kUsage;
}

}  // namespace dio::cli

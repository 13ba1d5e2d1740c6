#include "dio/pipeline.hpp"

#include <charconv>
#include <sstream>

#include "dio/error.hpp"

namespace dio {

namespace {

std::map<std::uint32_t, std::string> psi_labels(const PsiSystem& psi) {
  std::map<std::uint32_t, std::string> labels;
  std::vector<std::string> base;
  if (psi.mode == Domain::kIntegers) {
    base = master_variable_names(psi.r);
  } else {
    for (std::size_t i = 1; i <= psi.r; ++i) base.push_back("x" + std::to_string(i));
  }
  for (std::uint32_t idx = 1; idx <= psi.s; ++idx) {
    labels[idx] = idx <= base.size() ? base[idx - 1] : "psi" + std::to_string(idx);
  }
  return labels;
}

}  // namespace

PsiSystem build_psi(const RepresentationFile& rep, Domain mode, PsiReduction reduction,
                    const FullModeLimits& limits) {
  if (rep.r < 2 || rep.w.arity() != rep.r) {
    throw Error(ErrorCode::kArityTooSmall, "representation needs r >= 2 variables");
  }
  Reduction red;
  if (mode == Domain::kIntegers) {
    Polynomial master = build_master_z(rep.w);
    red = reduction == PsiReduction::kCompact ? build_compact_z(master) : build_full_z(master, limits);
  } else {
    red = reduction == PsiReduction::kCompact ? build_compact_n(rep.w, NaturalChain::kSplit)
                                              : build_full_n(rep.w, limits);
  }
  PsiSystem psi;
  psi.s = red.system.n();
  psi.mode = mode;
  psi.r = rep.r;
  psi.certificate = std::move(red.certificate);
  psi.system = EnSystem(psi.s, red.system.equations(), psi_labels(psi));
  if (psi.s < 3) throw Error(ErrorCode::kInvalidArgument, "Psi must have at least 3 variables");
  return psi;
}

std::size_t threshold(std::size_t s, Domain) {
  if (s < 3) throw Error(ErrorCode::kInvalidArgument, "threshold requires s >= 3");
  return 4 + 2 * s;
}

AssembledSystem assemble(const PsiSystem& psi, std::size_t n) {
  const std::size_t m = threshold(psi.s, psi.mode);
  if (n < m) {
    throw Error(ErrorCode::kBelowThreshold,
                "n below threshold " + std::to_string(m) + " (got " + std::to_string(n) + ")");
  }
  if (n > 0xfffffff0u) throw Error(ErrorCode::kInvalidArgument, "n too large");
  const std::size_t half = n / 2;
  const std::size_t padding = n - half - 2 - psi.s;

  Layout layout;
  layout.n = n;
  layout.s = psi.s;
  layout.mode = psi.mode;
  layout.padding_first = static_cast<std::uint32_t>(psi.s + 1);
  layout.padding_count = padding;
  layout.chain_first = static_cast<std::uint32_t>(psi.s + padding + 1);
  layout.chain_length = half;
  layout.w = static_cast<std::uint32_t>(layout.chain_first + half);
  layout.y = layout.w + 1;
  layout.labels = psi_labels(psi);

  std::vector<EnEquation> eqs = psi.system.equations();
  for (std::size_t i = 0; i < padding; ++i) {
    auto z = static_cast<std::uint32_t>(layout.padding_first + i);
    eqs.push_back(EnEquation::one(z));
    layout.labels[z] = "z" + std::to_string(i + 1);
  }
  for (std::size_t k = 1; k <= half; ++k) layout.labels[layout.t(k)] = "t" + std::to_string(k);
  layout.labels[layout.w] = "w";
  layout.labels[layout.y] = "y";

  const std::uint32_t t1 = layout.t(1);
  eqs.push_back(EnEquation::one(t1));
  for (std::size_t k = 1; k < half; ++k) eqs.push_back(EnEquation::add(layout.t(k), t1, layout.t(k + 1)));
  eqs.push_back(EnEquation::add(layout.t(half), layout.t(half), layout.w));
  eqs.push_back(EnEquation::add(layout.w, layout.y, 2));
  if (n % 2 == 0) {
    eqs.push_back(EnEquation::add(layout.y, layout.y, layout.y));
  } else {
    eqs.push_back(EnEquation::one(layout.y));
  }

  AssembledSystem out;
  out.system = EnSystem(n, std::move(eqs), layout.labels);
  out.layout = std::move(layout);
  out.psi = psi;
  return out;
}

AssembledSystem pipeline(const RepresentationFile& rep, Domain mode, std::size_t n, PsiReduction reduction,
                         const FullModeLimits& limits) {
  return assemble(build_psi(rep, mode, reduction, limits), n);
}

std::string serialize_layout(const Layout& layout) {
  std::ostringstream out;
  out << "LAYOUT 1\n";
  out << "n " << layout.n << '\n';
  out << "s " << layout.s << '\n';
  out << "mode " << domain_name(layout.mode) << '\n';
  out << "padding " << layout.padding_first << ' ' << layout.padding_count << '\n';
  out << "chain " << layout.chain_first << ' ' << layout.chain_length << '\n';
  out << "w " << layout.w << '\n';
  out << "y " << layout.y << '\n';
  for (const auto& [idx, label] : layout.labels) out << idx << ' ' << label << '\n';
  return out.str();
}

Layout deserialize_layout(std::string_view text) {
  Layout layout;
  std::istringstream in{std::string(text)};
  std::string line;
  auto fail = [](const std::string& why) -> void {
    throw Error(ErrorCode::kMalformed, "layout: " + why);
  };
  if (!std::getline(in, line) || line != "LAYOUT 1") fail("expected 'LAYOUT 1'");
  auto read_header = [&](const std::string& key, auto&... out) {
    if (!std::getline(in, line)) fail("missing '" + key + "'");
    std::istringstream ls(line);
    std::string k;
    ls >> k;
    if (k != key) fail("expected '" + key + "'");
    ((ls >> out) && ...);
    if (!ls) fail("bad '" + key + "' line");
  };
  std::string mode;
  read_header("n", layout.n);
  read_header("s", layout.s);
  read_header("mode", mode);
  if (mode == "Z") {
    layout.mode = Domain::kIntegers;
  } else if (mode == "N") {
    layout.mode = Domain::kNaturals;
  } else {
    fail("mode must be Z or N");
  }
  read_header("padding", layout.padding_first, layout.padding_count);
  read_header("chain", layout.chain_first, layout.chain_length);
  read_header("w", layout.w);
  read_header("y", layout.y);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t sp = line.find(' ');
    if (sp == std::string::npos) fail("label line needs '<index> <label>'");
    std::uint32_t idx = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + sp, idx);
    if (ec != std::errc{} || ptr != line.data() + sp || idx == 0 || idx > layout.n) fail("bad label index");
    layout.labels[idx] = line.substr(sp + 1);
  }
  if (layout.s + layout.padding_count + layout.chain_length + 2 != layout.n) {
    fail("variable counts do not add up to n");
  }
  return layout;
}

AssembledSystem reassemble(const EnSystem& system, const Layout& layout, const ReductionCertificate& psi_cert) {
  if (system.n() != layout.n) throw Error(ErrorCode::kDimensionMismatch, "layout and system disagree on n");
  if (psi_cert.n != layout.s) throw Error(ErrorCode::kDimensionMismatch, "certificate and layout disagree on s");
  AssembledSystem out;
  out.system = system;
  out.layout = layout;
  std::vector<EnEquation> psi_eqs;
  for (const auto& eq : system.equations()) {
    if (eq.max_index() <= layout.s) psi_eqs.push_back(eq);
  }
  out.psi.s = layout.s;
  out.psi.mode = layout.mode;
  out.psi.certificate = psi_cert;
  out.psi.r = layout.mode == Domain::kIntegers ? psi_cert.p / 5 : psi_cert.p;
  std::map<std::uint32_t, std::string> labels;
  for (const auto& [idx, label] : layout.labels) {
    if (idx <= layout.s) labels[idx] = label;
  }
  out.psi.system = EnSystem(layout.s, std::move(psi_eqs), std::move(labels));
  return out;
}

}  // namespace dio

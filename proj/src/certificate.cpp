#include <charconv>
#include <sstream>

#include "dio/eqn_io.hpp"
#include "dio/error.hpp"
#include "dio/reducer.hpp"

namespace dio {

namespace {

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::kMalformed, "certificate line " + std::to_string(line_no) + ": " + why);
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string serialize(const ReductionCertificate& cert) {
  std::ostringstream out;
  out << "CERT 1\n";
  out << "mode " << mode_name(cert.mode) << '\n';
  out << "p " << cert.p << '\n';
  out << "n " << cert.n << '\n';
  for (const auto& [idx, poly] : cert.defs) out << idx << ' ' << format_polynomial(poly) << '\n';
  if (const auto* z = std::get_if<IntegerAnchor>(&cert.anchor)) {
    out << "ANCHOR q " << z->q << '\n';
  } else {
    const auto& a = std::get<NaturalAnchor>(cert.anchor);
    out << "ANCHOR N " << a.zero << ' ' << a.lhs << ' ' << a.rhs << '\n';
  }
  return out.str();
}

ReductionCertificate deserialize_certificate(std::string_view text) {
  ReductionCertificate cert;
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.size() < 5 || lines[0] != "CERT 1") malformed(1, "expected 'CERT 1' header");
  auto header = [&](std::size_t i, std::string_view key) {
    std::string_view line = lines[i];
    if (line.substr(0, key.size() + 1) != std::string(key) + " ") {
      malformed(i + 1, "expected '" + std::string(key) + "'");
    }
    return line.substr(key.size() + 1);
  };
  auto mode = parse_mode(header(1, "mode"));
  if (!mode) malformed(2, "unknown mode");
  cert.mode = *mode;
  auto p = parse_uint(header(2, "p"));
  auto n = parse_uint(header(3, "n"));
  if (!p && header(2, "p") != "0") malformed(3, "bad p");
  if (!n) malformed(4, "bad n");
  cert.p = p ? static_cast<std::size_t>(*p) : 0;
  cert.n = static_cast<std::size_t>(*n);
  if (cert.n < cert.p) malformed(4, "n smaller than p");
  bool anchored = false;
  for (std::size_t i = 4; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty()) continue;
    if (anchored) malformed(i + 1, "content after ANCHOR");
    if (line.substr(0, 7) == "ANCHOR ") {
      std::istringstream in{std::string(line.substr(7))};
      std::string kind;
      in >> kind;
      if (kind == "q") {
        std::uint64_t q = 0;
        if (!(in >> q) || q == 0 || q > cert.n) malformed(i + 1, "bad anchor index");
        cert.anchor = IntegerAnchor{static_cast<std::uint32_t>(q)};
      } else if (kind == "N") {
        std::uint64_t z = 0, a = 0, b = 0;
        if (!(in >> z >> a >> b) || z == 0 || a == 0 || b == 0 || z > cert.n || a > cert.n || b > cert.n) {
          malformed(i + 1, "bad anchor indices");
        }
        cert.anchor = NaturalAnchor{static_cast<std::uint32_t>(z), static_cast<std::uint32_t>(a),
                                    static_cast<std::uint32_t>(b)};
      } else {
        malformed(i + 1, "unknown anchor kind");
      }
      anchored = true;
      continue;
    }
    std::size_t sp = line.find(' ');
    auto idx = parse_uint(line.substr(0, sp == std::string_view::npos ? line.size() : sp));
    if (!idx || sp == std::string_view::npos) malformed(i + 1, "expected '<index> <polynomial>'");
    if (*idx <= cert.p || *idx > cert.n) malformed(i + 1, "auxiliary index out of range");
    if (cert.defs.contains(static_cast<std::uint32_t>(*idx))) malformed(i + 1, "duplicate index");
    cert.defs.emplace(static_cast<std::uint32_t>(*idx), parse_polynomial(line.substr(sp + 1), cert.p));
  }
  if (!anchored) malformed(lines.size(), "missing ANCHOR line");
  return cert;
}

}  // namespace dio

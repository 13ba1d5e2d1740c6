#include "dio/ensys.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dio/error.hpp"

namespace dio {

const char* domain_name(Domain d) { return d == Domain::kIntegers ? "Z" : "N"; }

EnEquation EnEquation::add(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
  return {EqKind::kAdd, std::min(i, j), std::max(i, j), k};
}

EnEquation EnEquation::mul(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
  return {EqKind::kMul, std::min(i, j), std::max(i, j), k};
}

std::uint32_t EnEquation::max_index() const {
  return kind == EqKind::kOne ? i : std::max({i, j, k});
}

std::string EnEquation::to_string() const {
  switch (kind) {
    case EqKind::kOne: return "ONE " + std::to_string(i);
    case EqKind::kAdd:
      return "ADD " + std::to_string(i) + " " + std::to_string(j) + " " + std::to_string(k);
    case EqKind::kMul:
      return "MUL " + std::to_string(i) + " " + std::to_string(j) + " " + std::to_string(k);
  }
  return {};
}

EnSystem::EnSystem(std::size_t n, std::vector<EnEquation> equations,
                   std::map<std::uint32_t, std::string> names)
    : n_(n), equations_(std::move(equations)), names_(std::move(names)) {
  for (auto& eq : equations_) {
    if (eq.kind == EqKind::kOne) {
      eq.j = eq.k = 0;
    } else if (eq.i > eq.j) {
      std::swap(eq.i, eq.j);
    }
  }
  std::sort(equations_.begin(), equations_.end());
  equations_.erase(std::unique(equations_.begin(), equations_.end()), equations_.end());
}

bool EnSystem::contains(const EnEquation& eq) const {
  EnEquation c = eq;
  if (c.kind != EqKind::kOne && c.i > c.j) std::swap(c.i, c.j);
  return std::binary_search(equations_.begin(), equations_.end(), c);
}

std::vector<Violation> validate(const EnSystem& s) {
  std::vector<Violation> out;
  for (const auto& eq : s.equations()) {
    std::uint32_t indices[3] = {eq.i, eq.j, eq.k};
    int arity = eq.kind == EqKind::kOne ? 1 : 3;
    for (int t = 0; t < arity; ++t) {
      if (indices[t] == 0 || indices[t] > s.n()) {
        out.push_back({eq, "index " + std::to_string(indices[t]) + " outside [1, " +
                               std::to_string(s.n()) + "]"});
        break;
      }
    }
  }
  for (const auto& [idx, label] : s.names()) {
    if (idx == 0 || idx > s.n()) {
      out.push_back({EnEquation{}, "name for index " + std::to_string(idx) + " outside range"});
    }
  }
  return out;
}

bool equation_holds(const EnEquation& eq, const BigInt& xi, const BigInt& xj, const BigInt& xk) {
  switch (eq.kind) {
    case EqKind::kOne: return xi == 1;
    case EqKind::kAdd: return xi + xj == xk;
    case EqKind::kMul: return xi * xj == xk;
  }
  return false;
}

AssignmentCheck check_assignment(const EnSystem& s, const Assignment& a, Domain domain) {
  AssignmentCheck result;
  if (domain == Domain::kNaturals) {
    for (const auto& [idx, v] : a) {
      if (v < 0) result.indices.push_back(idx);
    }
    if (!result.indices.empty()) {
      result.status = AssignmentCheck::Status::kOutOfDomain;
      return result;
    }
  }
  for (const auto& eq : s.equations()) {
    auto fi = a.find(eq.i);
    if (fi == a.end()) continue;
    if (eq.kind == EqKind::kOne) {
      if (fi->second != 1) {
        result.status = AssignmentCheck::Status::kViolated;
        result.violated = eq;
        return result;
      }
      continue;
    }
    auto fj = a.find(eq.j);
    auto fk = a.find(eq.k);
    if (fj == a.end() || fk == a.end()) continue;
    if (!equation_holds(eq, fi->second, fj->second, fk->second)) {
      result.status = AssignmentCheck::Status::kViolated;
      result.violated = eq;
      return result;
    }
  }
  for (std::uint32_t idx = 1; idx <= s.n(); ++idx) {
    if (!a.contains(idx)) result.indices.push_back(idx);
  }
  if (!result.indices.empty()) result.status = AssignmentCheck::Status::kIncomplete;
  return result;
}

std::string serialize(const EnSystem& s) {
  std::ostringstream out;
  out << "ENSYS 1\n";
  out << "n " << s.n() << '\n';
  for (const auto& [idx, label] : s.names()) out << "# name " << idx << ' ' << label << '\n';
  for (const auto& eq : s.equations()) out << eq.to_string() << '\n';
  return out.str();
}

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t sp = line.find(' ', pos);
    if (sp == std::string_view::npos) sp = line.size();
    out.push_back(line.substr(pos, sp - pos));
    pos = sp + 1;
  }
  return out;
}

std::optional<std::uint64_t> parse_index(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::kMalformed, "line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

EnSystem deserialize(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_magic = false;
  std::optional<std::uint64_t> n;
  std::vector<EnEquation> equations;
  std::map<std::uint32_t, std::string> names;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!seen_magic) {
      if (line != "ENSYS 1") malformed(line_no, "expected 'ENSYS 1'");
      seen_magic = true;
      continue;
    }
    if (line.front() == '#') {
      constexpr std::string_view kName = "# name ";
      if (line.substr(0, kName.size()) == kName) {
        std::string_view rest = line.substr(kName.size());
        std::size_t sp = rest.find(' ');
        if (sp == std::string_view::npos) malformed(line_no, "name line needs index and label");
        auto idx = parse_index(rest.substr(0, sp));
        if (!idx || *idx == 0) malformed(line_no, "bad name index");
        if (n && *idx > *n) {
          throw Error(ErrorCode::kIndexOutOfRange, "line " + std::to_string(line_no) +
                                                       ": name index exceeds n");
        }
        names[static_cast<std::uint32_t>(*idx)] = std::string(rest.substr(sp + 1));
      }
      continue;
    }
    auto fields = split_spaces(line);
    if (fields[0] == "ENSYS") malformed(line_no, "duplicate header");
    if (fields[0] == "n") {
      if (n) malformed(line_no, "duplicate header 'n'");
      if (fields.size() != 2) malformed(line_no, "expected 'n <count>'");
      n = parse_index(fields[1]);
      if (!n || *n > 0xffffffffu) malformed(line_no, "bad variable count");
      continue;
    }
    if (!n) malformed(line_no, "equation before 'n' header");
    EqKind kind;
    std::size_t want;
    if (fields[0] == "ONE") {
      kind = EqKind::kOne;
      want = 2;
    } else if (fields[0] == "ADD") {
      kind = EqKind::kAdd;
      want = 4;
    } else if (fields[0] == "MUL") {
      kind = EqKind::kMul;
      want = 4;
    } else {
      malformed(line_no, "unknown record '" + std::string(fields[0]) + "'");
    }
    if (fields.size() != want) malformed(line_no, "wrong field count");
    std::uint32_t idx[3] = {0, 0, 0};
    for (std::size_t f = 1; f < want; ++f) {
      auto v = parse_index(fields[f]);
      if (!v || *v == 0) malformed(line_no, "bad index");
      if (*v > *n) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "line " + std::to_string(line_no) + ": index " + std::to_string(*v) +
                        " exceeds n=" + std::to_string(*n));
      }
      idx[f - 1] = static_cast<std::uint32_t>(*v);
    }
    equations.push_back(EnEquation{kind, idx[0], idx[1], idx[2]});
  }
  if (!seen_magic) malformed(line_no, "missing 'ENSYS 1' header");
  if (!n) malformed(line_no, "missing 'n' header");
  for (const auto& [idx, label] : names) {
    if (idx > *n) throw Error(ErrorCode::kIndexOutOfRange, "name index exceeds n");
  }
  return EnSystem(static_cast<std::size_t>(*n), std::move(equations), std::move(names));
}

}  // namespace dio

#include "dio/eqn_io.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <vector>

#include "dio/error.hpp"

namespace dio {

namespace {

constexpr std::uint64_t kMaxExponent = 0x7fffffffu;

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

enum class Tok { kInt, kVar, kPlus, kMinus, kStar, kCaret, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;  // digits for kInt (with sign if any) and kVar (without 'x')
};

std::vector<Token> tokenize(std::string_view s, std::size_t base_offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    std::size_t at = base_offset + i;
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < s.size() && is_digit(s[j])) ++j;
      out.push_back({Tok::kInt, at, s.substr(i, j - i)});
      i = j;
    } else if (c == 'x') {
      std::size_t j = i + 1;
      while (j < s.size() && is_digit(s[j])) ++j;
      if (j == i + 1) throw ParseError(at, "expected digits after 'x'");
      out.push_back({Tok::kVar, at, s.substr(i + 1, j - i - 1)});
      i = j;
    } else {
      Tok kind;
      switch (c) {
        case '+': kind = Tok::kPlus; break;
        case '-': kind = Tok::kMinus; break;
        case '*': kind = Tok::kStar; break;
        case '^': kind = Tok::kCaret; break;
        case '(': kind = Tok::kLParen; break;
        case ')': kind = Tok::kRParen; break;
        default:
          if (std::isalpha(static_cast<unsigned char>(c))) {
            throw ParseError(at, "unknown identifier");
          }
          throw ParseError(at, std::string("unexpected character '") + c + "'");
      }
      out.push_back({kind, at, s.substr(i, 1)});
      ++i;
    }
  }
  out.push_back({Tok::kEnd, base_offset + s.size(), {}});
  return out;
}

std::size_t variable_index(const Token& t) {
  if (t.text.size() > 1 && t.text[0] == '0') {
    throw ParseError(t.offset, "variable index has a leading zero");
  }
  std::size_t v = 0;
  for (char c : t.text) {
    if (v > (std::numeric_limits<std::size_t>::max() - 9) / 10) {
      throw ParseError(t.offset, "variable index too large");
    }
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  if (v == 0) throw ParseError(t.offset, "variable indices start at x1");
  return v;
}

std::size_t max_variable(const std::vector<Token>& toks) {
  std::size_t m = 0;
  for (const auto& t : toks) {
    if (t.kind == Tok::kVar) m = std::max(m, variable_index(t));
  }
  return m;
}

class Parser {
 public:
  Parser(const std::vector<Token>& toks, std::size_t arity) : toks_(toks), arity_(arity) {}

  Polynomial parse_all() {
    if (peek().kind == Tok::kEnd) throw ParseError(peek().offset, "empty input");
    Polynomial p = expr();
    if (peek().kind != Tok::kEnd) throw ParseError(peek().offset, "unexpected token");
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_++]; }

  // A sign directly followed by digits is part of an integer literal.
  bool signed_literal_ahead() const {
    const Token& s = peek();
    const Token& d = peek(1);
    return (s.kind == Tok::kPlus || s.kind == Tok::kMinus) && d.kind == Tok::kInt &&
           d.offset == s.offset + 1;
  }

  Polynomial expr() {
    bool negate = false;
    if ((peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) && !signed_literal_ahead()) {
      negate = next().kind == Tok::kMinus;
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      bool minus = next().kind == Tok::kMinus;
      Polynomial t = term();
      if (minus) {
        acc -= t;
      } else {
        acc += t;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = power();
    while (peek().kind == Tok::kStar) {
      next();
      acc *= power();
    }
    return acc;
  }

  Polynomial power() {
    Polynomial base = primary();
    if (peek().kind == Tok::kCaret) {
      next();
      const Token& e = next();
      if (e.kind != Tok::kInt) throw ParseError(e.offset, "exponent must be a non-negative integer");
      std::uint64_t v = 0;
      for (char c : e.text) {
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
        if (v > kMaxExponent) throw ParseError(e.offset, "exponent exceeds 2^31-1");
      }
      base = base.pow(static_cast<std::uint32_t>(v));
    }
    return base;
  }

  Polynomial primary() {
    if (signed_literal_ahead()) {
      bool minus = next().kind == Tok::kMinus;
      BigInt v = *parse_bigint(next().text);
      return Polynomial::constant(arity_, minus ? BigInt(-v) : v);
    }
    const Token& t = next();
    switch (t.kind) {
      case Tok::kInt:
        return Polynomial::constant(arity_, *parse_bigint(t.text));
      case Tok::kVar: {
        std::size_t idx = variable_index(t);
        if (idx > arity_) {
          throw ParseError(t.offset, "variable x" + std::to_string(idx) + " exceeds declared arity " +
                                         std::to_string(arity_));
        }
        return Polynomial::variable(arity_, idx);
      }
      case Tok::kLParen: {
        Polynomial inner = expr();
        const Token& close = next();
        if (close.kind != Tok::kRParen) throw ParseError(close.offset, "expected ')'");
        return inner;
      }
      case Tok::kEnd:
        throw ParseError(t.offset, "unexpected end of input");
      default:
        throw ParseError(t.offset, "expected a number, variable or '('");
    }
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  std::size_t arity_;
};

std::string format_term_body(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x';
    out += std::to_string(i + 1);
    if (m[i] > 1) {
      out += '^';
      out += std::to_string(m[i]);
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> arity) {
  auto toks = tokenize(text, 0);
  std::size_t p = arity ? *arity : max_variable(toks);
  return Parser(toks, p).parse_all();
}

EquationSource parse_equation(std::string_view text, std::optional<std::size_t> arity) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ParseError(text.size(), "missing equals sign");
  if (text.find('=', eq + 1) != std::string_view::npos) {
    throw ParseError(text.find('=', eq + 1), "more than one equals sign");
  }
  auto lhs_toks = tokenize(text.substr(0, eq), 0);
  auto rhs_toks = tokenize(text.substr(eq + 1), eq + 1);
  std::size_t p = arity ? *arity : std::max(max_variable(lhs_toks), max_variable(rhs_toks));
  EquationSource src{Parser(lhs_toks, p).parse_all(), Parser(rhs_toks, p).parse_all(), Polynomial(p)};
  src.normalized = src.lhs - src.rhs;
  return src;
}

std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = t.coeff < 0;
    BigInt mag = negative ? BigInt(-t.coeff) : t.coeff;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string body = format_term_body(t.monomial);
    if (body.empty()) {
      out += mag.str();
    } else if (mag == 1) {
      out += body;
    } else {
      out += mag.str();
      out += '*';
      out += body;
    }
  }
  return out;
}

RepresentationFile parse_representation(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') lines.emplace_back(line_no, line);
    start = end + 1;
  }
  if (lines.size() != 2) {
    throw Error(ErrorCode::kMalformed, "representation file needs a REP header and one polynomial line");
  }
  auto [header_no, header] = lines[0];
  constexpr std::string_view kPrefix = "REP r=";
  if (header.substr(0, kPrefix.size()) != kPrefix) {
    throw Error(ErrorCode::kMalformed, "line " + std::to_string(header_no) + ": expected 'REP r=<count>'");
  }
  auto count = parse_bigint(header.substr(kPrefix.size()));
  if (!count || *count < 0 || *count > 1000000) {
    throw Error(ErrorCode::kMalformed, "line " + std::to_string(header_no) + ": bad variable count");
  }
  RepresentationFile rep;
  rep.r = count->convert_to<std::size_t>();
  if (rep.r < 2) throw Error(ErrorCode::kArityTooSmall, "representation needs r >= 2");
  rep.w = parse_polynomial(lines[1].second, rep.r);
  return rep;
}

std::string format_representation(const RepresentationFile& rep) {
  std::ostringstream out;
  out << "REP r=" << rep.r << '\n' << format_polynomial(rep.w) << '\n';
  return out.str();
}

}  // namespace dio

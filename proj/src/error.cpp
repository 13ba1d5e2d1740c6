#include "dio/error.hpp"

namespace dio {

const char* code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "E_SYNTAX";
    case ErrorCode::kDimensionMismatch: return "E_DIMENSION";
    case ErrorCode::kIndexOutOfRange: return "E_INDEX";
    case ErrorCode::kZeroPolynomial: return "E_ZERO_POLYNOMIAL";
    case ErrorCode::kFamilyTooLarge: return "E_FAMILY_TOO_LARGE";
    case ErrorCode::kBelowThreshold: return "E_BELOW_THRESHOLD";
    case ErrorCode::kArityTooSmall: return "E_ARITY";
    case ErrorCode::kNegativeInput: return "E_NEGATIVE";
    case ErrorCode::kMalformed: return "E_MALFORMED";
    case ErrorCode::kBoxTooLarge: return "E_BOX_TOO_LARGE";
    case ErrorCode::kSearchLimit: return "E_SEARCH_LIMIT";
    case ErrorCode::kInvalidArgument: return "E_INVALID_ARGUMENT";
    case ErrorCode::kIo: return "E_IO";
  }
  return "E_UNKNOWN";
}

ParseError::ParseError(std::size_t offset, const std::string& what)
    : Error(ErrorCode::kSyntax,
            "syntax error at offset " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

FamilyTooLarge::FamilyTooLarge(BigInt card, BigInt cap, const std::string& what_limit)
    : Error(ErrorCode::kFamilyTooLarge,
            "family of " + card.str() + " polynomials exceeds " + what_limit + " " +
                cap.str()),
      card_(std::move(card)),
      cap_(std::move(cap)) {}

std::optional<BigInt> parse_bigint(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
  }
  if (pos == text.size()) return std::nullopt;
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

BigInt isqrt(const BigInt& v) {
  if (v <= 0) return 0;
  return boost::multiprecision::sqrt(v);
}

std::optional<BigInt> exact_sqrt(const BigInt& v) {
  if (v < 0) return std::nullopt;
  BigInt r = isqrt(v);
  if (r * r == v) return r;
  return std::nullopt;
}

}  // namespace dio

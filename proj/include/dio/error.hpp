#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "dio/bigint.hpp"

namespace dio {

enum class ErrorCode {
  kSyntax,
  kDimensionMismatch,
  kIndexOutOfRange,
  kZeroPolynomial,
  kFamilyTooLarge,
  kBelowThreshold,
  kArityTooSmall,
  kNegativeInput,
  kMalformed,
  kBoxTooLarge,
  kSearchLimit,
  kInvalidArgument,
  kIo,
};

// Stable identifier printed by the CLI, e.g. "E_SYNTAX".
const char* code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class FamilyTooLarge : public Error {
 public:
  FamilyTooLarge(BigInt card, BigInt cap, const std::string& what_limit = "cap");

  const BigInt& card() const noexcept { return card_; }
  const BigInt& cap() const noexcept { return cap_; }

 private:
  BigInt card_;
  BigInt cap_;
};

}  // namespace dio

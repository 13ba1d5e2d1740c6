#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dio/bigint.hpp"

namespace dio {

enum class Domain { kIntegers, kNaturals };

const char* domain_name(Domain d);

enum class EqKind : std::uint8_t { kOne = 0, kAdd = 1, kMul = 2 };

// One of x_i = 1, x_i + x_j = x_k, x_i * x_j = x_k (1-based indices).
// Canonical form keeps i <= j for the two binary kinds; One uses j = k = 0.
struct EnEquation {
  EqKind kind = EqKind::kOne;
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint32_t k = 0;

  static EnEquation one(std::uint32_t i) { return {EqKind::kOne, i, 0, 0}; }
  static EnEquation add(std::uint32_t i, std::uint32_t j, std::uint32_t k);
  static EnEquation mul(std::uint32_t i, std::uint32_t j, std::uint32_t k);

  std::uint32_t max_index() const;
  std::string to_string() const;

  friend auto operator<=>(const EnEquation&, const EnEquation&) = default;
};

using Assignment = std::map<std::uint32_t, BigInt>;

// A finite subset of E_n: n variables and a duplicate-free, canonically
// ordered list of equations. Index labels are optional metadata.
class EnSystem {
 public:
  EnSystem() = default;
  EnSystem(std::size_t n, std::vector<EnEquation> equations,
           std::map<std::uint32_t, std::string> names = {});

  std::size_t n() const noexcept { return n_; }
  const std::vector<EnEquation>& equations() const noexcept { return equations_; }
  const std::map<std::uint32_t, std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return equations_.size(); }

  bool contains(const EnEquation& eq) const;

  friend bool operator==(const EnSystem&, const EnSystem&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<EnEquation> equations_;
  std::map<std::uint32_t, std::string> names_;
};

struct Violation {
  EnEquation equation;
  std::string message;
};

std::vector<Violation> validate(const EnSystem& s);

// True when `eq` holds for the given (total over its indices) values.
bool equation_holds(const EnEquation& eq, const BigInt& xi, const BigInt& xj, const BigInt& xk);

struct AssignmentCheck {
  enum class Status { kSatisfied, kViolated, kIncomplete, kOutOfDomain };
  Status status = Status::kSatisfied;
  std::optional<EnEquation> violated;
  std::vector<std::uint32_t> indices;  // missing or out-of-domain indices

  bool satisfied() const { return status == Status::kSatisfied; }
};

// Precedence: out-of-domain values, then any fully assigned equation that
// fails, then missing indices.
AssignmentCheck check_assignment(const EnSystem& s, const Assignment& a, Domain domain);

// .ens text format.
std::string serialize(const EnSystem& s);
EnSystem deserialize(std::string_view text);

}  // namespace dio

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "dio/polynomial.hpp"

namespace dio {

// Grammar (whitespace allowed between tokens):
//
//   equation := expr '=' expr
//   expr     := [sign] term (('+' | '-') term)*
//   term     := power ('*' power)*
//   power    := primary ['^' digits]
//   primary  := integer | 'x' digits | '(' expr ')'
//   integer  := [sign] digits          (sign must touch the digits)
//
// Variables are x1, x2, ...; implicit multiplication is rejected.

// With `arity` unset, the arity is the largest variable index mentioned.
Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> arity = std::nullopt);

struct EquationSource {
  Polynomial lhs;
  Polynomial rhs;
  Polynomial normalized;  // lhs - rhs
};

EquationSource parse_equation(std::string_view text,
                              std::optional<std::size_t> arity = std::nullopt);

// Canonical rendering, e.g. "2*x1^2*x2 - 3*x2 + 7"; the zero polynomial is "0".
std::string format_polynomial(const Polynomial& p);

// A Diophantine representation W(x1, ..., xr) of a function f: x1 is the
// value, x2 the argument and x3..xr are existential.
struct RepresentationFile {
  std::size_t r = 0;
  Polynomial w;
};

// Line 1 "REP r=<count>", line 2 the polynomial; '#' lines are comments.
RepresentationFile parse_representation(std::string_view text);
std::string format_representation(const RepresentationFile& rep);

}  // namespace dio

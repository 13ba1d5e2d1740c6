#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "dio/eqn_io.hpp"
#include "dio/ensys.hpp"
#include "dio/reducer.hpp"

namespace dio {

enum class PsiReduction { kCompact, kFull };

// Psi(x1, x2, x3, ..., xs): an E_s system whose solutions project onto
// {(f(x2), x2)} (with x2 >= 0 enforced over the integers).
struct PsiSystem {
  EnSystem system;
  std::size_t s = 0;
  Domain mode = Domain::kIntegers;
  std::size_t r = 0;  // arity of the representation W
  ReductionCertificate certificate;
};

// Integers: compact integer reduction of the four-square master polynomial
// of W. Naturals: reduction of W = 0 itself (split chain when compact).
PsiSystem build_psi(const RepresentationFile& rep, Domain mode, PsiReduction reduction = PsiReduction::kCompact,
                    const FullModeLimits& limits = {});

// Smallest admissible n: 4 + 2s. Throws for s < 3.
std::size_t threshold(std::size_t s, Domain mode);

struct Layout {
  std::size_t n = 0;
  std::size_t s = 0;
  Domain mode = Domain::kIntegers;
  std::uint32_t padding_first = 0;
  std::size_t padding_count = 0;
  std::uint32_t chain_first = 0;
  std::size_t chain_length = 0;  // floor(n / 2)
  std::uint32_t w = 0;
  std::uint32_t y = 0;
  std::map<std::uint32_t, std::string> labels;

  std::uint32_t t(std::size_t k) const { return chain_first + static_cast<std::uint32_t>(k) - 1; }

  friend bool operator==(const Layout&, const Layout&) = default;
};

struct AssembledSystem {
  EnSystem system;
  Layout layout;
  PsiSystem psi;
};

// Psi, then n - floor(n/2) - 2 - s equations z = 1, then the chain
// t1 = 1, t1 + t1 = t2, t_k + t1 = t_{k+1}, t_h + t_h = w, w + y = x2, and
// y + y = y (n even) or y = 1 (n odd). Exactly n variables.
AssembledSystem assemble(const PsiSystem& psi, std::size_t n);

AssembledSystem pipeline(const RepresentationFile& rep, Domain mode, std::size_t n,
                         PsiReduction reduction = PsiReduction::kCompact, const FullModeLimits& limits = {});

std::string serialize_layout(const Layout& layout);
Layout deserialize_layout(std::string_view text);

// Rebuilds an assembled system from its three sidecar files.
AssembledSystem reassemble(const EnSystem& system, const Layout& layout, const ReductionCertificate& psi_cert);

}  // namespace dio

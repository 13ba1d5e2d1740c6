#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "dio/bigint.hpp"
#include "dio/ensys.hpp"

namespace dio {

// Forward/backward value deduction over an E_n system:
//   x_i = 1                         fixes x_i
//   x_i + x_j = x_k                 any two known values fix the third
//   x_i * x_j = x_k                 known factors fix the product; a known
//                                   product and a nonzero known factor fix
//                                   the other factor when it divides exactly
// Degenerate index patterns (x + x = x, x * y = x, x * x = y, ...) are solved
// as the corresponding one-variable equations. Every deduction is implied by
// the system, so the fixed point does not depend on the processing order.
//
// Assignments are recorded on a trail so that search can backtrack with
// mark()/undo().
class Propagator {
 public:
  Propagator(const EnSystem& system, Domain domain);

  // Randomises queue order; used to exercise confluence.
  void shuffle_with(std::uint64_t seed);

  // Sets a value without propagating. Returns false on a clash.
  bool seed(std::uint32_t var, const BigInt& value);
  // Enqueues every equation and runs to a fixed point.
  bool run_all();
  // Sets a value and propagates its consequences.
  bool assign(std::uint32_t var, const BigInt& value);

  std::size_t mark() const noexcept { return trail_.size(); }
  void undo(std::size_t mark);

  const std::optional<BigInt>& value(std::uint32_t var) const { return values_[var]; }
  bool determined(std::uint32_t var) const { return values_[var].has_value(); }
  std::size_t determined_count() const noexcept { return trail_.size(); }
  bool complete() const noexcept { return trail_.size() == n_; }
  std::size_t n() const noexcept { return n_; }
  bool failed() const noexcept { return failed_; }
  // The equation that produced the last contradiction, when there is one.
  const std::optional<EnEquation>& conflict() const noexcept { return conflict_; }

  std::vector<std::uint32_t> undetermined() const;
  Assignment assignment() const;
  // Index of the first undetermined variable after `from`, or 0.
  std::uint32_t next_undetermined(std::uint32_t from = 0) const;

 private:
  bool set(std::uint32_t var, BigInt value, std::optional<EnEquation> cause);
  bool run();
  bool apply(std::uint32_t eq_id);
  bool fail(const EnEquation& eq);

  const EnSystem& system_;
  Domain domain_;
  std::size_t n_;
  std::vector<std::optional<BigInt>> values_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::vector<std::uint32_t>> occurs_;
  std::deque<std::uint32_t> queue_;
  std::vector<char> queued_;
  bool failed_ = false;
  std::optional<EnEquation> conflict_;
  std::optional<std::mt19937_64> rng_;
};

struct PropagationResult {
  enum class Outcome { kComplete, kContradiction, kStuck };
  Outcome outcome = Outcome::kStuck;
  Assignment values;
  std::optional<EnEquation> conflict;
  std::vector<std::uint32_t> undetermined;
};

PropagationResult propagate(const EnSystem& system, const Assignment& seed, Domain domain,
                            std::optional<std::uint64_t> shuffle_seed = std::nullopt);

}  // namespace dio

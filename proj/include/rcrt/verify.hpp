#pragma once

// Exhaustive check of the single-stage recovery condition: for every N below
// the dynamic range and every error vector in a window, the condition must
// hold exactly when the solver returns the true folding numbers.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rcrt/arith.hpp"
#include "rcrt/moduli.hpp"

namespace rcrt {

using RecoveryCondition =
    std::function<bool(std::span<const Integer> deltas, const ModuliSet&, std::size_t k)>;

struct Counterexample {
  Integer n;
  std::vector<Integer> deltas;
  bool condition_holds;  // true: sufficiency broken; false: necessity broken
};

struct VerificationReport {
  std::size_t reference = 0;
  std::uint64_t cases = 0;
  std::uint64_t condition_true = 0;
  std::uint64_t sufficiency_failures = 0;  // condition holds, recovery fails
  std::uint64_t necessity_failures = 0;    // condition fails, recovery succeeds
  std::vector<Counterexample> examples;    // the first few of either kind

  bool clean() const { return sufficiency_failures == 0 && necessity_failures == 0; }
};

struct VerifyOptions {
  long window = 4;  // deltas range over [-window, window]
  std::optional<std::size_t> reference;  // default: select_reference
  /// Defaults to check_ns_condition; replaceable to test the harness itself.
  RecoveryCondition condition;
  std::size_t keep_examples = 8;
};

/// Throws CapExceeded when lcm * (2 * window + 1)^L exceeds cap.
VerificationReport verify_recovery_condition(const ModuliSet& moduli, const Integer& cap,
                                   const VerifyOptions& options = {});

}  // namespace rcrt

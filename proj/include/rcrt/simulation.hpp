#pragma once

// Monte Carlo harness: draw N uniformly below the dynamic range, perturb its
// remainders with bounded integer errors, reconstruct, and tally how far the
// estimates land from N.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "rcrt/arith.hpp"
#include "rcrt/group_tree.hpp"
#include "rcrt/moduli.hpp"

namespace rcrt {

enum class ErrorModel {
  one_sided,  // uniform on {0, ..., tau}
  symmetric,  // uniform on {-tau, ..., tau}
};

const char* to_string(ErrorModel m);
ErrorModel parse_error_model(std::string_view text);

struct TrialConfig {
  ModuliSet moduli;
  std::optional<GroupTree> tree;  // absent: single stage
  unsigned long tau = 0;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  ErrorModel error_model = ErrorModel::one_sided;
  bool clamp_remainders = false;
  unsigned threads = 1;
};

struct TrialStats {
  unsigned long tau = 0;
  std::uint64_t trials = 0;
  /// Exact mean of |N_hat - N| over trials that produced an estimate.
  Rational mean_abs_error;
  Integer max_abs_error;
  /// Error bound the estimates are held to: the fused bound with every
  /// remainder error at most tau.
  Rational bound;
  /// Whether tau lies strictly below the robustness bound of the plan, so
  /// that zero violations are guaranteed.
  bool in_regime = false;
  /// Trials with |N_hat - N| > bound, or with no estimate at all.
  std::uint64_t violations = 0;
  /// Trials whose reconstruction reported an inconsistency.
  std::uint64_t folding_failures = 0;

  friend bool operator==(const TrialStats&, const TrialStats&) = default;
};

/// Deterministic in the config: trial t draws from its own SplitMix64 stream
/// keyed by (seed, t), so any thread count gives identical statistics.
TrialStats run_trials(const TrialConfig& cfg);

std::vector<TrialStats> sweep(const TrialConfig& base, std::span<const unsigned long> taus);

/// Header "tau,mean_abs_error,max_abs_error,bound,violations,folding_failures"
/// followed by one row per entry; the mean is printed with six decimals.
void write_csv(std::ostream& os, std::span<const TrialStats> rows);

/// SplitMix64, used as the simulation's random source.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();
  /// Uniform on [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, bound) for arbitrary-precision bound > 0.
  Integer below(const Integer& bound);

 private:
  std::uint64_t state_;
};

}  // namespace rcrt

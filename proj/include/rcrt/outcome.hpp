#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rcrt/arith.hpp"

namespace rcrt {

struct FoldingSolution {
  std::vector<Integer> folding;  // n_i, aligned with the moduli
  Integer estimate;              // rounded average of n_i M_i + r_i
  std::size_t reference = 0;

  friend bool operator==(const FoldingSolution&, const FoldingSolution&) = default;
};

/// Why a robust reconstruction could not produce trustworthy folding numbers.
/// Each kind is evidence that the remainder errors broke the recovery
/// condition.
enum class FailureKind {
  congruence_conflict,  // the folding-number congruences have no solution
  inexact_division,     // a back-substituted folding number is not integral
  negative_folding,     // a back-substituted folding number is negative
  shared_modulus_conflict,  // a modulus reused across groups got two foldings
};

const char* to_string(FailureKind kind);

struct Inconsistent {
  FailureKind kind;
  std::string detail;
  /// The untrusted folding numbers and their fused estimate, when the failure
  /// happened late enough for them to exist.
  std::optional<FoldingSolution> raw;
};

/// Either a value or an Inconsistent diagnosis.
template <class T>
class Outcome {
 public:
  Outcome(T value) : v_(std::move(value)) {}  // NOLINT
  Outcome(Inconsistent failure) : v_(std::move(failure)) {}  // NOLINT

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw std::logic_error("Outcome holds a failure: " + error().detail);
    return std::get<T>(v_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("Outcome holds a failure: " + error().detail);
    return std::get<T>(std::move(v_));
  }
  const T* operator->() const { return &value(); }

  const Inconsistent& error() const { return std::get<Inconsistent>(v_); }

 private:
  std::variant<T, Inconsistent> v_;
};

}  // namespace rcrt

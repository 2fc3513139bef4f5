#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "rcrt/arith.hpp"

namespace rcrt {

/// Ordered list of distinct positive moduli.
class ModuliSet {
 public:
  /// Throws std::invalid_argument on an empty list, a nonpositive entry or a
  /// repeated modulus.
  explicit ModuliSet(std::vector<Integer> moduli);
  ModuliSet(std::initializer_list<long> moduli);

  std::size_t size() const { return moduli_.size(); }
  const Integer& operator[](std::size_t i) const { return moduli_[i]; }
  std::span<const Integer> values() const { return moduli_; }
  auto begin() const { return moduli_.begin(); }
  auto end() const { return moduli_.end(); }

  Integer lcm() const { return lcm_all(moduli_); }

  /// "{a, b, c}".
  std::string str() const;

  /// No modulus is a proper multiple of another.
  bool divisor_free() const;

  /// Moduli at the given indices, in the given order.
  ModuliSet subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const ModuliSet&, const ModuliSet&) = default;

 private:
  std::vector<Integer> moduli_;
};

/// Per-entry bound on a remainder error, strict ("<") or not ("<=").
struct Bound {
  Rational value;
  bool strict = true;

  bool admits(const Rational& magnitude) const {
    return strict ? magnitude < value : magnitude <= value;
  }
  /// "< p/q" or "<= p/q".
  std::string str() const { return (strict ? "< " : "<= ") + value.str(); }

  friend bool operator==(const Bound&, const Bound&) = default;
};

/// Remainders aligned with a ModuliSet, optionally with per-entry error
/// bounds. Erroneous values are allowed outside [0, M_i).
struct RemainderVec {
  std::vector<Integer> values;
  std::vector<Bound> error_bounds;  // empty, or one per value

  /// True when every |values[i] - exact[i]| satisfies error_bounds[i]
  /// (vacuously true without bounds).
  bool within_bounds(std::span<const Integer> exact) const;
};

}  // namespace rcrt

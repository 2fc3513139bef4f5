#pragma once

// Single-stage robust CRT for an arbitrary set of distinct moduli.
//
// With a reference modulus M_k, every other congruence is differenced
// against it. For g = gcd(M_k, M_i) the cofactors c_k = M_k / g and
// c_i = M_i / g satisfy n_k * c_k - n_i * c_i = (r_i - r_k) / g. Rounding
// that quotient from erroneous remainders pins n_k modulo each c_i; a
// generalized CRT recovers n_k and back substitution gives the other folding
// numbers. Recovery is exact iff -g/2 <= dr_i - dr_k < g/2 for every i != k.

#include <cstddef>
#include <span>
#include <vector>

#include "rcrt/arith.hpp"
#include "rcrt/moduli.hpp"
#include "rcrt/outcome.hpp"

namespace rcrt {

struct BoundsReport {
  Rational theta;
  std::size_t reference = 0;
  std::vector<Bound> per_remainder;
};

/// How the reference folding number is solved for.
enum class ReferenceSolveMethod {
  automatic,    // closed form when the cofactors are pairwise coprime
  general,      // pairwise-merge generalized CRT
  closed_form,  // closed form; std::invalid_argument if not coprime
};

/// max_i min_{j != i} gcd(M_i, M_j) / 4. Needs at least two moduli.
Rational theta_bound(const ModuliSet& moduli);

/// Smallest index attaining theta_bound.
std::size_t select_reference(const ModuliSet& moduli);

/// Per-remainder error caps for reference k, which must attain theta_bound:
/// the reference gets min_{j != k} gcd(M_k, M_j)/4 (strict), every other
/// remainder gets gcd(M_k, M_i)/2 minus that (non-strict).
BoundsReport per_remainder_bounds(const ModuliSet& moduli, std::size_t k);

/// Drops every modulus that divides another one. The lcm is unchanged and
/// the result is divisor-free. Order is preserved.
ModuliSet prune_redundant(const ModuliSet& moduli);
/// Indices kept by prune_redundant.
std::vector<std::size_t> non_redundant_indices(const ModuliSet& moduli);

/// round((rt_i - rt_ref) / m), exact halves rounding up.
Integer rounded_quotient(const Integer& rt_i, const Integer& rt_ref, const Integer& m);

/// True iff -gcd(M_k, M_i)/2 <= d_i - d_k < gcd(M_k, M_i)/2 for all i != k.
bool check_ns_condition(std::span<const Integer> deltas, const ModuliSet& moduli,
                        std::size_t k);

/// Rounded average of folding[i] * M_i + remainders[i].
Integer fused_estimate(const ModuliSet& moduli, std::span<const Integer> folding,
                       std::span<const Integer> remainders);

/// Reusable solver: the gcd/cofactor/inverse tables depend only on the moduli
/// and the reference, so they are computed once.
class SingleStageSolver {
 public:
  SingleStageSolver(ModuliSet moduli, std::size_t reference,
                    ReferenceSolveMethod method = ReferenceSolveMethod::automatic);

  const ModuliSet& moduli() const { return moduli_; }
  std::size_t reference() const { return k_; }
  /// Whether the reference folding number uses the closed form.
  bool uses_closed_form() const { return closed_form_; }

  Outcome<FoldingSolution> solve(std::span<const Integer> remainders) const;

 private:
  struct Pair {
    std::size_t index;
    Integer m;          // gcd(M_k, M_i)
    Integer ref_cofactor;   // M_k / m
    Integer cofactor;   // M_i / m
    Integer inverse;    // ref_cofactor^{-1} mod cofactor
    Integer crt_coeff;  // closed form only: b_i * (cofactor_product / cofactor)
  };

  ModuliSet moduli_;
  std::size_t k_;
  bool closed_form_ = false;
  Integer cofactor_product_;
  std::vector<Pair> pairs_;
};

/// One-shot form of SingleStageSolver.
Outcome<FoldingSolution> solve_folding(const ModuliSet& moduli,
                                       std::span<const Integer> remainders,
                                       std::size_t k,
                                       ReferenceSolveMethod method = ReferenceSolveMethod::automatic);

/// Every N in [0, lcm) whose exact remainders are entry-wise within tau of
/// `remainders`, reported as folding vectors with estimate = N. Brute force;
/// throws CapExceeded when lcm > cap.
std::vector<FoldingSolution> folding_oracle(const ModuliSet& moduli,
                                            std::span<const Integer> remainders,
                                            const Rational& tau,
                                            const Integer& cap = 10'000'000);

}  // namespace rcrt

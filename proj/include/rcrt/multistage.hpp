#pragma once

// Multi-stage robust CRT. Each leaf of a GroupTree is solved by the
// single-stage algorithm; each internal node treats its children's
// (estimate, lcm) pairs as a fresh remainder system and solves it the same
// way. Folding numbers found higher up lift the ones found below:
//   n_i <- l_c * (lcm_c / M_i) + n_i
// for every modulus i under child c.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rcrt/arith.hpp"
#include "rcrt/group_tree.hpp"
#include "rcrt/moduli.hpp"
#include "rcrt/outcome.hpp"

namespace rcrt {

struct StageBounds {
  /// Within-group bound per leaf (depth-first order). A one-modulus group
  /// gets M/4.
  std::vector<Rational> per_group;
  /// Bound across the root's children; absent when the tree is one leaf.
  std::optional<Rational> cross;
  /// Cross bound of every internal node, pre-order (root first).
  std::vector<Rational> internal;
  /// min of the leaf's own bound and every ancestor cross bound.
  std::vector<Rational> per_leaf_effective;
};

/// Throws std::invalid_argument for invalid or degenerate trees.
StageBounds stage_bounds(const GroupTree& tree, const ModuliSet& moduli);

struct StageSolution {
  /// Rounded within-group estimate per leaf, depth-first. Not clamped.
  std::vector<Integer> group_estimates;
  /// Rounded estimate per internal node, post-order (the root is last).
  std::vector<Integer> node_estimates;
  /// Folding numbers a node found for its children, post-order.
  std::vector<std::vector<Integer>> node_folding;
  /// Folding numbers found inside each leaf, aligned with leaf indices.
  std::vector<std::vector<Integer>> leaf_folding;
  /// Total lift per leaf: final n_i = lift * (lcm_leaf / M_i) + leaf n_i.
  std::vector<Integer> leaf_lift;
  /// Folding numbers over the full moduli set and the rounded average of
  /// every leaf term (a shared modulus counts once per leaf it appears in).
  /// The reference is the global index of the root's reference leaf modulus.
  FoldingSolution final;
};

/// Recursive reconstruction. Failures keep going on the untrusted values when
/// possible, so the Inconsistent diagnosis carries a raw final solution
/// unless some stage had no solution at all.
Outcome<StageSolution> reconstruct_tree(const ModuliSet& moduli,
                                        std::span<const Integer> remainders,
                                        const GroupTree& tree);

/// reconstruct_tree restricted to a root node whose children are all leaves.
Outcome<StageSolution> reconstruct_two_stage(const ModuliSet& moduli,
                                             std::span<const Integer> remainders,
                                             const GroupTree& tree);

/// Error caps for a two-stage plan with a designated reference group:
/// the reference group k must satisfy tau_k < min(G_k, G) and every other
/// group j must satisfy tau_j < min(G_j, gcd(lcm_j, lcm_k)/2 - min(G_k, G)).
struct ReferenceGroupBounds {
  StageBounds stage;
  std::size_t reference_group = 0;
  std::vector<Bound> caps;
};

ReferenceGroupBounds per_group_reference_bounds(const GroupTree& tree,
                                                const ModuliSet& moduli);

/// [sum L_j tau_j / sum L_j] with exact halves rounded up; integral result.
Rational fused_error_bound(std::span<const Rational> taus,
                           std::span<const std::size_t> group_sizes);

}  // namespace rcrt

#pragma once

// Search for a two-stage grouping whose every bound strictly exceeds the
// single-stage bound of the whole set.
//
//   1. For each modulus i, collect the moduli j whose gcd with M_i beats
//      4 * theta (the candidate set anchored at i).
//   2. Drop candidate sets contained in another one.
//   3. Enumerate irreducible covers of the full index set.
//   4. Keep the covers whose group bounds and cross bound all beat theta.

#include <cstddef>
#include <string>
#include <vector>

#include "rcrt/group_tree.hpp"
#include "rcrt/moduli.hpp"
#include "rcrt/multistage.hpp"

namespace rcrt {

struct CandidateSet {
  std::size_t anchor;
  /// Anchor first, then the partners in ascending index order.
  std::vector<std::size_t> members;

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;
};

/// One candidate set per modulus. Expects a divisor-free set of at least two
/// moduli.
std::vector<CandidateSet> candidate_sets(const ModuliSet& moduli);

/// Removes every candidate whose members are contained in another
/// candidate's. Of several identical member sets the first one survives.
std::vector<CandidateSet> prune_subset_sets(const std::vector<CandidateSet>& cands);

/// Every combination of candidates covering all moduli from which no
/// candidate can be dropped, ordered by size and then lexicographically by
/// candidate position. Throws CapExceeded when there are more than `cap`
/// candidates.
std::vector<std::vector<CandidateSet>> minimal_covers(
    const std::vector<CandidateSet>& cands, const ModuliSet& moduli,
    std::size_t cap = 16);

enum class Verdict { success, failure };
const char* to_string(Verdict v);

struct GroupingOptions {
  std::size_t cover_cap = 16;
  /// On failure, retry every cover with the reference modulus added to its
  /// one-modulus groups.
  bool share_reference = false;
};

struct GroupingProposal {
  Verdict verdict = Verdict::failure;
  /// Single-stage bound of the set after redundant moduli were dropped.
  Rational theta;
  /// Indices (into the input) of the moduli kept and of those dropped for
  /// dividing another one.
  std::vector<std::size_t> kept;
  std::vector<std::size_t> removed;
  /// Chosen groups as indices into the input set. Empty on failure.
  std::vector<std::vector<std::size_t>> groups;
  /// Bounds of the chosen grouping, evaluated on the pruned set.
  StageBounds bounds;
  /// Number of covers that were evaluated.
  std::size_t covers_considered = 0;
  bool used_shared_reference = false;

  /// Two-stage plan over the kept moduli, renumbered in the order of `kept`
  /// (i.e. a plan for prune_redundant(input)). Throws std::logic_error
  /// unless the verdict is success.
  GroupTree tree() const;
};

GroupingProposal propose_grouping(const ModuliSet& moduli,
                                  const GroupingOptions& options = {});

}  // namespace rcrt

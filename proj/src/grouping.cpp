#include "rcrt/grouping.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>

#include "rcrt/robust_single.hpp"

namespace rcrt {

namespace {

using Mask = std::uint64_t;

Mask mask_of(const std::vector<std::size_t>& members) {
  Mask m = 0;
  for (auto i : members) m |= Mask{1} << i;
  return m;
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

struct Evaluated {
  std::vector<std::vector<std::size_t>> groups;  // pruned-set indices
  std::vector<std::size_t> anchors;
  StageBounds bounds;
  Rational worst;
};

// Scores one cover, or nullopt when it is degenerate or does not beat theta
// everywhere.
std::optional<Evaluated> evaluate(const ModuliSet& moduli, const Rational& theta,
                                  std::vector<std::vector<std::size_t>> groups,
                                  std::vector<std::size_t> anchors) {
  std::vector<GroupTree> leaves;
  for (const auto& g : groups) leaves.push_back(GroupTree::leaf(g));
  StageBounds b;
  try {
    b = stage_bounds(GroupTree::node(std::move(leaves)), moduli);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if (!(*b.cross > theta)) return std::nullopt;
  for (const auto& g : b.per_group) {
    if (!(g > theta)) return std::nullopt;
  }
  Rational worst = *std::min_element(b.per_leaf_effective.begin(),
                                     b.per_leaf_effective.end());
  return Evaluated{std::move(groups), std::move(anchors), std::move(b), std::move(worst)};
}

// Larger worst-case bound, then fewer groups, then smaller anchors.
bool better(const Evaluated& a, const Evaluated& b) {
  if (a.worst != b.worst) return a.worst > b.worst;
  if (a.groups.size() != b.groups.size()) return a.groups.size() < b.groups.size();
  return a.anchors < b.anchors;
}

}  // namespace

const char* to_string(Verdict v) {
  return v == Verdict::success ? "success" : "failure";
}

std::vector<CandidateSet> candidate_sets(const ModuliSet& moduli) {
  const Rational theta = theta_bound(moduli);
  std::vector<CandidateSet> out;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    CandidateSet c{i, {i}};
    for (std::size_t j = 0; j < moduli.size(); ++j) {
      if (j != i && Rational(gcd(moduli[i], moduli[j]), 4) > theta) c.members.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CandidateSet> prune_subset_sets(const std::vector<CandidateSet>& cands) {
  std::vector<std::vector<std::size_t>> keys;
  for (const auto& c : cands) keys.push_back(sorted(c.members));

  std::vector<CandidateSet> out;
  for (std::size_t a = 0; a < cands.size(); ++a) {
    bool drop = false;
    for (std::size_t b = 0; b < cands.size() && !drop; ++b) {
      if (a == b) continue;
      const bool contained = std::includes(keys[b].begin(), keys[b].end(),
                                           keys[a].begin(), keys[a].end());
      if (!contained) continue;
      // Equal sets: only the first copy survives.
      drop = keys[a] != keys[b] || b < a;
    }
    if (!drop) out.push_back(cands[a]);
  }
  return out;
}

std::vector<std::vector<CandidateSet>> minimal_covers(
    const std::vector<CandidateSet>& cands, const ModuliSet& moduli, std::size_t cap) {
  if (cands.size() > cap) {
    throw CapExceeded(std::to_string(cands.size()) + " candidate sets exceed the cover cap of " +
                      std::to_string(cap));
  }
  if (moduli.size() > 64 || cands.size() > 63) {
    throw CapExceeded("cover search supports at most 64 moduli");
  }
  const Mask full = moduli.size() == 64 ? ~Mask{0} : (Mask{1} << moduli.size()) - 1;
  std::vector<Mask> masks;
  for (const auto& c : cands) {
    for (auto i : c.members) {
      if (i >= moduli.size()) throw std::invalid_argument("candidate index out of range");
    }
    masks.push_back(mask_of(c.members));
  }

  std::vector<std::vector<std::size_t>> picks;
  const Mask limit = Mask{1} << cands.size();
  for (Mask sel = 1; sel < limit; ++sel) {
    Mask covered = 0;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (sel >> c & 1) covered |= masks[c];
    }
    if (covered != full) continue;
    bool irreducible = true;
    for (std::size_t c = 0; c < cands.size() && irreducible; ++c) {
      if (!(sel >> c & 1)) continue;
      Mask rest = 0;
      for (std::size_t d = 0; d < cands.size(); ++d) {
        if (d != c && (sel >> d & 1)) rest |= masks[d];
      }
      irreducible = rest != full;
    }
    if (!irreducible) continue;
    std::vector<std::size_t> pick;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (sel >> c & 1) pick.push_back(c);
    }
    picks.push_back(std::move(pick));
  }
  std::sort(picks.begin(), picks.end(), [](const auto& a, const auto& b) {
    return std::make_tuple(a.size(), std::cref(a)) < std::make_tuple(b.size(), std::cref(b));
  });

  std::vector<std::vector<CandidateSet>> out;
  for (const auto& pick : picks) {
    std::vector<CandidateSet> cover;
    for (auto c : pick) cover.push_back(cands[c]);
    out.push_back(std::move(cover));
  }
  return out;
}

GroupTree GroupingProposal::tree() const {
  if (verdict != Verdict::success) throw std::logic_error("no grouping was found");
  std::vector<GroupTree> leaves;
  for (const auto& g : groups) {
    std::vector<std::size_t> local;
    for (auto i : g) {
      local.push_back(static_cast<std::size_t>(
          std::find(kept.begin(), kept.end(), i) - kept.begin()));
    }
    leaves.push_back(GroupTree::leaf(std::move(local)));
  }
  return GroupTree::node(std::move(leaves));
}

GroupingProposal propose_grouping(const ModuliSet& moduli, const GroupingOptions& options) {
  if (moduli.size() < 3) throw std::invalid_argument("grouping needs at least three moduli");

  GroupingProposal out;
  out.kept = non_redundant_indices(moduli);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (std::find(out.kept.begin(), out.kept.end(), i) == out.kept.end()) {
      out.removed.push_back(i);
    }
  }
  if (out.kept.size() < 2) {
    out.theta = Rational(moduli[out.kept.front()], 4);
    return out;
  }
  const ModuliSet pruned = moduli.subset(out.kept);
  out.theta = theta_bound(pruned);

  const auto covers =
      minimal_covers(prune_subset_sets(candidate_sets(pruned)), pruned, options.cover_cap);

  auto search = [&](bool share) -> std::optional<Evaluated> {
    const std::size_t ref = select_reference(pruned);
    std::optional<Evaluated> best;
    for (const auto& cover : covers) {
      if (cover.size() < 2) continue;
      std::vector<std::vector<std::size_t>> groups;
      std::vector<std::size_t> anchors;
      for (const auto& c : cover) {
        auto members = c.members;
        if (share && members.size() == 1 && members[0] != ref) members.push_back(ref);
        groups.push_back(std::move(members));
        anchors.push_back(c.anchor);
      }
      ++out.covers_considered;
      auto e = evaluate(pruned, out.theta, std::move(groups), std::move(anchors));
      if (e && (!best || better(*e, *best))) best = std::move(e);
    }
    return best;
  };

  auto best = search(false);
  if (!best && options.share_reference) {
    best = search(true);
    out.used_shared_reference = best.has_value();
  }
  if (!best) return out;

  out.verdict = Verdict::success;
  for (const auto& g : best->groups) {
    std::vector<std::size_t> global;
    for (auto i : g) global.push_back(out.kept[i]);
    out.groups.push_back(std::move(global));
  }
  out.bounds = std::move(best->bounds);
  return out;
}

}  // namespace rcrt

#include "rcrt/multistage.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rcrt/robust_single.hpp"

namespace rcrt {

namespace {

Rational group_bound(const ModuliSet& moduli, const std::vector<std::size_t>& idx) {
  if (idx.size() == 1) return Rational(moduli[idx[0]], 4);
  return theta_bound(moduli.subset(idx));
}

ModuliSet child_lcms(const GroupTree& node, const ModuliSet& moduli) {
  std::vector<Integer> lcms;
  for (const auto& c : node.children()) lcms.push_back(c.lcm(moduli));
  return ModuliSet(std::move(lcms));
}

void collect_bounds(const GroupTree& t, const ModuliSet& moduli,
                    const std::optional<Rational>& ceiling, StageBounds& out) {
  if (t.is_leaf()) {
    Rational g = group_bound(moduli, t.indices());
    out.per_leaf_effective.push_back(ceiling ? std::min(g, *ceiling) : g);
    out.per_group.push_back(std::move(g));
    return;
  }
  const Rational cross = theta_bound(child_lcms(t, moduli));
  out.internal.push_back(cross);
  const Rational next = ceiling ? std::min(*ceiling, cross) : cross;
  for (const auto& c : t.children()) collect_bounds(c, moduli, next, out);
}

struct Term {
  std::size_t index;  // global modulus index
  Integer folding;
};

struct Subtree {
  Integer estimate;
  Integer lcm;
  std::size_t reference;
  std::size_t first_leaf;
  std::size_t end_leaf;
  std::vector<Term> terms;
};

class TreeSolver {
 public:
  TreeSolver(const ModuliSet& moduli, std::span<const Integer> remainders)
      : moduli_(moduli), rt_(remainders) {}

  std::optional<Subtree> solve(const GroupTree& t) {
    return t.is_leaf() ? solve_leaf(t.indices()) : solve_node(t);
  }

  StageSolution& solution() { return out_; }
  const std::optional<Inconsistent>& failure() const { return failure_; }

  Integer average(const std::vector<Term>& terms) const {
    Integer sum = 0;
    for (const auto& term : terms) {
      sum += term.folding * moduli_[term.index] + rt_[term.index];
    }
    return round_half_up_div(sum, Integer(static_cast<unsigned long>(terms.size())));
  }

 private:
  // A usable (possibly untrusted) solution, or nullopt when the stage had
  // nothing to offer.
  std::optional<FoldingSolution> accept(Outcome<FoldingSolution> res,
                                        const std::string& where) {
    if (res.ok()) return std::move(res).value();
    const Inconsistent& err = res.error();
    if (!failure_) failure_ = Inconsistent{err.kind, where + ": " + err.detail, std::nullopt};
    return err.raw;
  }

  std::optional<Subtree> solve_leaf(const std::vector<std::size_t>& idx) {
    Subtree sub;
    sub.first_leaf = out_.leaf_folding.size();
    sub.end_leaf = sub.first_leaf + 1;
    std::vector<Integer> folding(idx.size(), Integer(0));
    if (idx.size() == 1) {
      sub.estimate = rt_[idx[0]];
      sub.lcm = moduli_[idx[0]];
      sub.reference = idx[0];
    } else {
      const ModuliSet group = moduli_.subset(idx);
      std::vector<Integer> values;
      for (auto i : idx) values.push_back(rt_[i]);
      auto sol = accept(solve_folding(group, values, select_reference(group)),
                        "group " + std::to_string(sub.first_leaf));
      if (!sol) return std::nullopt;
      folding = sol->folding;
      sub.estimate = sol->estimate;
      sub.lcm = group.lcm();
      sub.reference = idx[sol->reference];
    }
    for (std::size_t a = 0; a < idx.size(); ++a) sub.terms.push_back({idx[a], folding[a]});
    out_.group_estimates.push_back(sub.estimate);
    out_.leaf_folding.push_back(std::move(folding));
    out_.leaf_lift.emplace_back(0);
    leaf_lcm_.push_back(sub.lcm);
    return sub;
  }

  std::optional<Subtree> solve_node(const GroupTree& t) {
    std::vector<Subtree> kids;
    for (const auto& c : t.children()) {
      auto s = solve(c);
      if (!s) return std::nullopt;
      kids.push_back(std::move(*s));
    }
    std::vector<Integer> lcms;
    std::vector<Integer> estimates;
    for (const auto& k : kids) {
      lcms.push_back(k.lcm);
      estimates.push_back(k.estimate);
    }
    const ModuliSet stage(lcms);
    const std::size_t ref = select_reference(stage);
    auto sol = accept(solve_folding(stage, estimates, ref), "cross-group stage");
    if (!sol) return std::nullopt;

    Subtree sub;
    sub.lcm = stage.lcm();
    sub.reference = kids[sol->reference].reference;
    sub.first_leaf = kids.front().first_leaf;
    sub.end_leaf = kids.back().end_leaf;
    for (std::size_t c = 0; c < kids.size(); ++c) {
      const Integer& l = sol->folding[c];
      for (auto& term : kids[c].terms) {
        term.folding += l * (kids[c].lcm / moduli_[term.index]);
        sub.terms.push_back(std::move(term));
      }
      for (std::size_t leaf = kids[c].first_leaf; leaf < kids[c].end_leaf; ++leaf) {
        out_.leaf_lift[leaf] += l * (kids[c].lcm / leaf_lcm_[leaf]);
      }
    }
    sub.estimate = average(sub.terms);
    out_.node_estimates.push_back(sub.estimate);
    out_.node_folding.push_back(std::move(sol->folding));
    return sub;
  }

  const ModuliSet& moduli_;
  std::span<const Integer> rt_;
  StageSolution out_;
  std::vector<Integer> leaf_lcm_;
  std::optional<Inconsistent> failure_;
};

}  // namespace

StageBounds stage_bounds(const GroupTree& tree, const ModuliSet& moduli) {
  tree.validate(moduli);
  StageBounds out;
  collect_bounds(tree, moduli, std::nullopt, out);
  if (!out.internal.empty()) out.cross = out.internal.front();
  return out;
}

Outcome<StageSolution> reconstruct_tree(const ModuliSet& moduli,
                                        std::span<const Integer> remainders,
                                        const GroupTree& tree) {
  if (remainders.size() != moduli.size()) {
    throw std::invalid_argument("remainder/moduli length mismatch");
  }
  tree.validate(moduli);

  TreeSolver solver(moduli, remainders);
  auto root = solver.solve(tree);
  if (!root) return *solver.failure();

  StageSolution out = std::move(solver.solution());
  out.final.reference = root->reference;
  out.final.estimate = root->estimate;
  out.final.folding.assign(moduli.size(), Integer(0));
  std::vector<bool> seen(moduli.size(), false);
  std::optional<std::size_t> conflict;
  for (const auto& term : root->terms) {
    if (!seen[term.index]) {
      seen[term.index] = true;
      out.final.folding[term.index] = term.folding;
    } else if (out.final.folding[term.index] != term.folding && !conflict) {
      conflict = term.index;
    }
  }

  if (solver.failure()) {
    Inconsistent err = *solver.failure();
    err.raw = out.final;
    return err;
  }
  if (conflict) {
    return Inconsistent{FailureKind::shared_modulus_conflict,
                        "modulus " + moduli[*conflict].get_str() +
                            " received different folding numbers in different groups",
                        out.final};
  }
  return out;
}

Outcome<StageSolution> reconstruct_two_stage(const ModuliSet& moduli,
                                             std::span<const Integer> remainders,
                                             const GroupTree& tree) {
  if (tree.depth() != 2) {
    throw std::invalid_argument("two-stage reconstruction needs a node of leaves");
  }
  return reconstruct_tree(moduli, remainders, tree);
}

ReferenceGroupBounds per_group_reference_bounds(const GroupTree& tree,
                                                const ModuliSet& moduli) {
  if (tree.depth() != 2) {
    throw std::invalid_argument("reference-group bounds need a node of leaves");
  }
  ReferenceGroupBounds out;
  out.stage = stage_bounds(tree, moduli);
  const ModuliSet lcms = child_lcms(tree, moduli);
  const std::size_t k = select_reference(lcms);
  out.reference_group = k;
  const Rational ref_cap = std::min(out.stage.per_group[k], *out.stage.cross);
  for (std::size_t j = 0; j < lcms.size(); ++j) {
    if (j == k) {
      out.caps.push_back({ref_cap, true});
    } else {
      const Rational pair = Rational(gcd(lcms[j], lcms[k]), 2) - ref_cap;
      out.caps.push_back({std::min(out.stage.per_group[j], pair), true});
    }
  }
  return out;
}

Rational fused_error_bound(std::span<const Rational> taus,
                           std::span<const std::size_t> group_sizes) {
  if (taus.size() != group_sizes.size()) {
    throw std::invalid_argument("tau/group-size length mismatch");
  }
  Rational weighted = 0;
  unsigned long total = 0;
  for (std::size_t j = 0; j < taus.size(); ++j) {
    weighted += taus[j] * Rational(static_cast<long>(group_sizes[j]));
    total += group_sizes[j];
  }
  if (total == 0) throw std::invalid_argument("no group terms");
  return Rational(round_half_up(weighted / Rational(static_cast<long>(total))));
}

}  // namespace rcrt

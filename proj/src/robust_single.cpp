#include "rcrt/robust_single.hpp"

#include <stdexcept>
#include <string>

#include "rcrt/exact_crt.hpp"

namespace rcrt {

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::congruence_conflict: return "congruence_conflict";
    case FailureKind::inexact_division: return "inexact_division";
    case FailureKind::negative_folding: return "negative_folding";
    case FailureKind::shared_modulus_conflict: return "shared_modulus_conflict";
  }
  return "unknown";
}

namespace {

void require_pair(const ModuliSet& moduli) {
  if (moduli.size() < 2) {
    throw std::invalid_argument("need at least two moduli");
  }
}

void require_index(const ModuliSet& moduli, std::size_t k) {
  if (k >= moduli.size()) throw std::invalid_argument("reference index out of range");
}

Integer min_gcd_to_others(const ModuliSet& moduli, std::size_t i) {
  Integer best = 0;
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    if (j == i) continue;
    Integer g = gcd(moduli[i], moduli[j]);
    if (best == 0 || g < best) best = std::move(g);
  }
  return best;
}

}  // namespace

Rational theta_bound(const ModuliSet& moduli) {
  require_pair(moduli);
  Integer best = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    Integer g = min_gcd_to_others(moduli, i);
    if (g > best) best = std::move(g);
  }
  return Rational(best, 4);
}

std::size_t select_reference(const ModuliSet& moduli) {
  require_pair(moduli);
  std::size_t best_index = 0;
  Integer best = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    Integer g = min_gcd_to_others(moduli, i);
    if (g > best) {
      best = std::move(g);
      best_index = i;
    }
  }
  return best_index;
}

BoundsReport per_remainder_bounds(const ModuliSet& moduli, std::size_t k) {
  require_pair(moduli);
  require_index(moduli, k);
  BoundsReport report;
  report.theta = theta_bound(moduli);
  const Rational ref_cap(min_gcd_to_others(moduli, k), 4);
  if (ref_cap != report.theta) {
    throw std::invalid_argument("index " + std::to_string(k) +
                                " does not attain the theta bound");
  }
  report.reference = k;
  report.per_remainder.reserve(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (i == k) {
      report.per_remainder.push_back({ref_cap, true});
    } else {
      report.per_remainder.push_back(
          {Rational(gcd(moduli[k], moduli[i]), 2) - ref_cap, false});
    }
  }
  return report;
}

std::vector<std::size_t> non_redundant_indices(const ModuliSet& moduli) {
  std::vector<std::size_t> kept;
  for (std::size_t b = 0; b < moduli.size(); ++b) {
    bool redundant = false;
    for (std::size_t a = 0; a < moduli.size() && !redundant; ++a) {
      redundant = a != b && mpz_divisible_p(moduli[a].get_mpz_t(),
                                            moduli[b].get_mpz_t()) != 0;
    }
    if (!redundant) kept.push_back(b);
  }
  return kept;
}

ModuliSet prune_redundant(const ModuliSet& moduli) {
  return moduli.subset(non_redundant_indices(moduli));
}

Integer rounded_quotient(const Integer& rt_i, const Integer& rt_ref, const Integer& m) {
  return round_half_up_div(rt_i - rt_ref, m);
}

bool check_ns_condition(std::span<const Integer> deltas, const ModuliSet& moduli,
                        std::size_t k) {
  if (deltas.size() != moduli.size()) {
    throw std::invalid_argument("delta/moduli length mismatch");
  }
  require_index(moduli, k);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (i == k) continue;
    // -g/2 <= d < g/2  <=>  -g <= 2d < g
    const Integer twice = (deltas[i] - deltas[k]) * 2;
    const Integer g = gcd(moduli[k], moduli[i]);
    if (twice < -g || twice >= g) return false;
  }
  return true;
}

Integer fused_estimate(const ModuliSet& moduli, std::span<const Integer> folding,
                       std::span<const Integer> remainders) {
  Integer sum = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    sum += folding[i] * moduli[i] + remainders[i];
  }
  return round_half_up_div(sum, Integer(static_cast<unsigned long>(moduli.size())));
}

SingleStageSolver::SingleStageSolver(ModuliSet moduli, std::size_t reference,
                                     ReferenceSolveMethod method)
    : moduli_(std::move(moduli)), k_(reference) {
  require_pair(moduli_);
  require_index(moduli_, k_);

  std::vector<Integer> cofactors;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i == k_) continue;
    Pair p;
    p.index = i;
    p.m = gcd(moduli_[k_], moduli_[i]);
    p.ref_cofactor = moduli_[k_] / p.m;
    p.cofactor = moduli_[i] / p.m;
    p.inverse = mod_inverse(p.ref_cofactor, p.cofactor);
    cofactors.push_back(p.cofactor);
    pairs_.push_back(std::move(p));
  }

  const bool coprime = pairwise_coprime(cofactors);
  if (method == ReferenceSolveMethod::closed_form && !coprime) {
    throw std::invalid_argument(
        "closed-form step needs pairwise coprime cofactors");
  }
  closed_form_ = coprime && method != ReferenceSolveMethod::general;
  if (closed_form_) {
    cofactor_product_ = 1;
    for (const auto& g : cofactors) cofactor_product_ *= g;
    for (auto& p : pairs_) {
      const Integer others = cofactor_product_ / p.cofactor;
      p.crt_coeff = mod_inverse(others, p.cofactor) * others;
    }
  }
}

Outcome<FoldingSolution> SingleStageSolver::solve(
    std::span<const Integer> remainders) const {
  if (remainders.size() != moduli_.size()) {
    throw std::invalid_argument("remainder/moduli length mismatch");
  }
  const Integer& rk = remainders[k_];

  // Rounded quotient estimates and the residues of n_k they imply.
  std::vector<Integer> quotient(pairs_.size());
  std::vector<Integer> ref_residue(pairs_.size());
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const Pair& pr = pairs_[p];
    quotient[p] = rounded_quotient(remainders[pr.index], rk, pr.m);
    ref_residue[p] = mod_floor(quotient[p] * pr.inverse, pr.cofactor);
  }

  // n_k from n_k == ref_residue_i (mod cofactor_i).
  Integer n_k;
  if (closed_form_) {
    Integer sum = 0;
    for (std::size_t p = 0; p < pairs_.size(); ++p) sum += ref_residue[p] * pairs_[p].crt_coeff;
    n_k = mod_floor(sum, cofactor_product_);
  } else {
    Congruence acc{ref_residue[0], pairs_[0].cofactor};
    for (std::size_t p = 1; p < pairs_.size(); ++p) {
      auto merged = crt_pair_merge(acc.residue, acc.modulus, ref_residue[p], pairs_[p].cofactor);
      if (!merged) {
        return Inconsistent{FailureKind::congruence_conflict,
                            "no folding number for the reference satisfies all "
                            "difference congruences",
                            std::nullopt};
      }
      acc = std::move(*merged);
    }
    n_k = std::move(acc.residue);
  }

  // Back substitution.
  FoldingSolution sol;
  sol.reference = k_;
  sol.folding.assign(moduli_.size(), Integer(0));
  sol.folding[k_] = n_k;
  std::optional<std::size_t> negative;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const Pair& pr = pairs_[p];
    const Integer num = n_k * pr.ref_cofactor - quotient[p];
    if (mpz_divisible_p(num.get_mpz_t(), pr.cofactor.get_mpz_t()) == 0) {
      return Inconsistent{FailureKind::inexact_division,
                          "folding number for modulus " + moduli_[pr.index].get_str() +
                              " is not integral",
                          std::nullopt};
    }
    sol.folding[pr.index] = num / pr.cofactor;
    if (!negative && sol.folding[pr.index] < 0) negative = pr.index;
  }
  sol.estimate = fused_estimate(moduli_, sol.folding, remainders);
  if (negative) {
    const std::string which = moduli_[*negative].get_str();
    return Inconsistent{FailureKind::negative_folding,
                        "negative folding number for modulus " + which,
                        std::move(sol)};
  }
  return sol;
}

Outcome<FoldingSolution> solve_folding(const ModuliSet& moduli,
                                       std::span<const Integer> remainders,
                                       std::size_t k, ReferenceSolveMethod method) {
  return SingleStageSolver(moduli, k, method).solve(remainders);
}

std::vector<FoldingSolution> folding_oracle(const ModuliSet& moduli,
                                            std::span<const Integer> remainders,
                                            const Rational& tau,
                                            const Integer& cap) {
  if (remainders.size() != moduli.size()) {
    throw std::invalid_argument("remainder/moduli length mismatch");
  }
  const Integer range = moduli.lcm();
  if (range > cap) {
    throw CapExceeded("oracle range " + range.get_str() + " exceeds cap " +
                      cap.get_str());
  }
  std::vector<FoldingSolution> found;
  if (tau < Rational(0)) return found;
  const Integer slack = floor_div(tau.num(), tau.den());

  const std::size_t count = moduli.size();
  std::vector<Integer> r(count, Integer(0));
  std::vector<Integer> n(count, Integer(0));
  for (Integer value = 0; value < range; ++value) {
    bool match = true;
    for (std::size_t i = 0; i < count && match; ++i) {
      const Integer diff = r[i] - remainders[i];
      match = abs(diff) <= slack;
    }
    if (match) found.push_back({n, value, 0});
    for (std::size_t i = 0; i < count; ++i) {
      if (++r[i] == moduli[i]) {
        r[i] = 0;
        ++n[i];
      }
    }
  }
  return found;
}

}  // namespace rcrt

#include "rcrt/simulation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>

#include "rcrt/exact_crt.hpp"
#include "rcrt/multistage.hpp"
#include "rcrt/robust_single.hpp"

namespace rcrt {

const char* to_string(ErrorModel m) {
  return m == ErrorModel::one_sided ? "one-sided" : "symmetric";
}

ErrorModel parse_error_model(std::string_view text) {
  if (text == "one-sided" || text == "one_sided") return ErrorModel::one_sided;
  if (text == "symmetric") return ErrorModel::symmetric;
  throw std::invalid_argument("unknown error model '" + std::string(text) + "'");
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty sampling range");
  const std::uint64_t reject_from = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = next();
    if (x >= reject_from) return x % bound;
  }
}

Integer SplitMix64::below(const Integer& bound) {
  if (bound <= 0) throw std::invalid_argument("empty sampling range");
  if (mpz_fits_ulong_p(bound.get_mpz_t()) && sizeof(unsigned long) == 8) {
    return Integer(static_cast<unsigned long>(below(std::uint64_t{bound.get_ui()})));
  }
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  for (;;) {
    Integer x = 0;
    for (std::size_t have = 0; have < bits; have += 64) {
      x <<= 64;
      const std::uint64_t w = next();
      x += Integer(static_cast<unsigned long>(w >> 32)) << 32;
      x += Integer(static_cast<unsigned long>(w & 0xffffffffULL));
    }
    mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), bits);
    if (x < bound) return x;
  }
}

namespace {

std::uint64_t trial_key(std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 outer(seed);
  const std::uint64_t base = outer.next();
  SplitMix64 inner(base ^ (trial * 0xd1b54a32d192ed03ULL));
  return inner.next();
}

// Bound implied by every remainder error staying within tau: per plan, the
// smallest bound any modulus is held to.
Rational regime_bound(const TrialConfig& cfg) {
  if (!cfg.tree) return theta_bound(cfg.moduli);
  const StageBounds b = stage_bounds(*cfg.tree, cfg.moduli);
  return *std::min_element(b.per_leaf_effective.begin(), b.per_leaf_effective.end());
}

Rational error_bound(const TrialConfig& cfg) {
  const Rational tau(static_cast<long>(cfg.tau));
  if (!cfg.tree) return tau;
  std::vector<Rational> taus;
  std::vector<std::size_t> sizes;
  for (const auto& leaf : cfg.tree->leaves()) {
    taus.push_back(tau);
    sizes.push_back(leaf.size());
  }
  return fused_error_bound(taus, sizes);
}

struct Tally {
  Integer abs_sum = 0;
  std::uint64_t counted = 0;
  Integer max_abs = 0;
  std::uint64_t violations = 0;
  std::uint64_t failures = 0;

  void merge(const Tally& o) {
    abs_sum += o.abs_sum;
    counted += o.counted;
    if (o.max_abs > max_abs) max_abs = o.max_abs;
    violations += o.violations;
    failures += o.failures;
  }
};

class TrialRunner {
 public:
  explicit TrialRunner(const TrialConfig& cfg)
      : cfg_(cfg), range_(cfg.moduli.lcm()), bound_(error_bound(cfg)) {
    if (!cfg.tree && cfg.moduli.size() >= 2) {
      single_.emplace(cfg.moduli, select_reference(cfg.moduli));
    }
    if (cfg.tree) cfg.tree->validate(cfg.moduli);
  }

  const Rational& bound() const { return bound_; }

  void run(std::uint64_t first, std::uint64_t last, Tally& tally) const {
    const std::size_t count = cfg_.moduli.size();
    std::vector<Integer> rt(count);
    const auto span = static_cast<std::uint64_t>(cfg_.tau);
    for (std::uint64_t t = first; t < last; ++t) {
      SplitMix64 rng(trial_key(cfg_.seed, t));
      const Integer n = rng.below(range_);
      for (std::size_t i = 0; i < count; ++i) {
        Integer delta;
        if (cfg_.error_model == ErrorModel::one_sided) {
          delta = static_cast<unsigned long>(rng.below(span + 1));
        } else {
          delta = static_cast<unsigned long>(rng.below(2 * span + 1));
          delta -= static_cast<unsigned long>(span);
        }
        rt[i] = mod_floor(n, cfg_.moduli[i]) + delta;
        if (cfg_.clamp_remainders) {
          if (rt[i] < 0) rt[i] = 0;
          if (rt[i] >= cfg_.moduli[i]) rt[i] = cfg_.moduli[i] - 1;
        }
      }
      record(n, estimate(rt, tally), tally);
    }
  }

 private:
  std::optional<Integer> estimate(const std::vector<Integer>& rt, Tally& tally) const {
    if (count_one()) return rt[0];
    if (single_) {
      auto res = single_->solve(rt);
      if (res.ok()) return std::move(res).value().estimate;
      ++tally.failures;
      if (res.error().raw) return res.error().raw->estimate;
      return std::nullopt;
    }
    auto res = reconstruct_tree(cfg_.moduli, rt, *cfg_.tree);
    if (res.ok()) return std::move(res).value().final.estimate;
    ++tally.failures;
    if (res.error().raw) return res.error().raw->estimate;
    return std::nullopt;
  }

  bool count_one() const { return cfg_.moduli.size() == 1; }

  void record(const Integer& n, const std::optional<Integer>& est, Tally& tally) const {
    if (!est) {
      ++tally.violations;
      return;
    }
    const Integer err = abs(*est - n);
    tally.abs_sum += err;
    ++tally.counted;
    if (err > tally.max_abs) tally.max_abs = err;
    if (Rational(err) > bound_) ++tally.violations;
  }

  const TrialConfig& cfg_;
  Integer range_;
  Rational bound_;
  std::optional<SingleStageSolver> single_;
};

}  // namespace

TrialStats run_trials(const TrialConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be at least 1");
  const TrialRunner runner(cfg);

  const unsigned workers = std::max(1U, std::min<unsigned>(
      cfg.threads, static_cast<unsigned>(std::min<std::uint64_t>(cfg.trials, 1024))));
  std::vector<Tally> parts(workers);
  if (workers == 1) {
    runner.run(0, cfg.trials, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min(cfg.trials, w * chunk);
      const std::uint64_t hi = std::min(cfg.trials, lo + chunk);
      pool.emplace_back([&, w, lo, hi] { runner.run(lo, hi, parts[w]); });
    }
    for (auto& th : pool) th.join();
  }
  Tally total;
  for (const auto& p : parts) total.merge(p);

  TrialStats s;
  s.tau = cfg.tau;
  s.trials = cfg.trials;
  s.mean_abs_error = total.counted == 0
                         ? Rational(0)
                         : Rational(total.abs_sum, Integer(static_cast<unsigned long>(total.counted)));
  s.max_abs_error = total.max_abs;
  s.bound = runner.bound();
  s.in_regime = cfg.moduli.size() == 1 ||
                Rational(static_cast<long>(cfg.tau)) < regime_bound(cfg);
  s.violations = total.violations;
  s.folding_failures = total.failures;
  return s;
}

std::vector<TrialStats> sweep(const TrialConfig& base, std::span<const unsigned long> taus) {
  std::vector<TrialStats> rows;
  TrialConfig cfg = base;
  for (auto tau : taus) {
    cfg.tau = tau;
    rows.push_back(run_trials(cfg));
  }
  return rows;
}

void write_csv(std::ostream& os, std::span<const TrialStats> rows) {
  os << "tau,mean_abs_error,max_abs_error,bound,violations,folding_failures\n";
  for (const auto& r : rows) {
    os << r.tau << ',' << r.mean_abs_error.to_decimal(6) << ',' << r.max_abs_error.get_str()
       << ',' << (r.bound.den() == 1 ? r.bound.num().get_str() : r.bound.str()) << ','
       << r.violations << ',' << r.folding_failures << '\n';
  }
}

}  // namespace rcrt

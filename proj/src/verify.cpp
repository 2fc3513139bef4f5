#include "rcrt/verify.hpp"

#include <stdexcept>

#include "rcrt/exact_crt.hpp"
#include "rcrt/robust_single.hpp"

namespace rcrt {

VerificationReport verify_recovery_condition(const ModuliSet& moduli, const Integer& cap,
                                   const VerifyOptions& options) {
  if (options.window < 0) throw std::invalid_argument("negative delta window");
  const std::size_t count = moduli.size();
  const Integer range = moduli.lcm();
  const long side = 2 * options.window + 1;
  Integer space = 1;
  for (std::size_t i = 0; i < count; ++i) space *= side;
  if (range * space > cap) {
    throw CapExceeded("verification space " + Integer(range * space).get_str() +
                      " exceeds cap " + cap.get_str());
  }

  VerificationReport report;
  report.reference = options.reference ? *options.reference : select_reference(moduli);
  const RecoveryCondition condition =
      options.condition ? options.condition
                        : RecoveryCondition([](std::span<const Integer> d, const ModuliSet& m,
                                               std::size_t k) {
                            return check_ns_condition(d, m, k);
                          });
  const SingleStageSolver solver(moduli, report.reference);

  std::vector<Integer> deltas(count);
  std::vector<Integer> folding(count);
  std::vector<Integer> rt(count);
  for (Integer n = 0; n < range; ++n) {
    std::vector<Integer> exact = remainders_of(n, moduli);
    for (std::size_t i = 0; i < count; ++i) folding[i] = floor_div(n, moduli[i]);

    std::vector<long> odometer(count, -options.window);
    for (;;) {
      for (std::size_t i = 0; i < count; ++i) {
        deltas[i] = odometer[i];
        rt[i] = exact[i] + odometer[i];
      }
      const bool holds = condition(deltas, moduli, report.reference);
      const auto res = solver.solve(rt);
      const bool recovered = res.ok() && res.value().folding == folding;

      ++report.cases;
      if (holds) ++report.condition_true;
      if (holds != recovered) {
        (holds ? report.sufficiency_failures : report.necessity_failures) += 1;
        if (report.examples.size() < options.keep_examples) {
          report.examples.push_back({n, deltas, holds});
        }
      }

      std::size_t pos = 0;
      while (pos < count && odometer[pos] == options.window) odometer[pos++] = -options.window;
      if (pos == count) break;
      ++odometer[pos];
    }
  }
  return report;
}

}  // namespace rcrt

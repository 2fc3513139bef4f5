#include "rcrt/exact_crt.hpp"

#include <stdexcept>

namespace rcrt {

CongruenceSystem::CongruenceSystem(std::vector<Integer> residues,
                                   std::vector<Integer> moduli)
    : residues_(std::move(residues)), moduli_(std::move(moduli)) {
  if (residues_.size() != moduli_.size()) {
    throw std::invalid_argument("residue/modulus length mismatch");
  }
  if (moduli_.empty()) throw std::invalid_argument("empty congruence system");
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (moduli_[i] <= 0) throw std::invalid_argument("modulus must be positive");
    residues_[i] = mod_floor(residues_[i], moduli_[i]);
  }
}

std::optional<Congruence> crt_pair_merge(const Integer& a, const Integer& m,
                                         const Integer& b, const Integer& n) {
  if (m <= 0 || n <= 0) throw std::invalid_argument("modulus must be positive");
  const Integer g = gcd(m, n);
  const Integer a0 = mod_floor(a, m);
  const Integer diff = b - a0;
  if (mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t()) == 0) return std::nullopt;

  // a0 + m t == b (mod n)  <=>  (m/g) t == (b - a0)/g (mod n/g)
  const Integer m_g = m / g;
  const Integer n_g = n / g;
  const Integer t = mod_floor(Integer(diff / g) * mod_inverse(m_g, n_g), n_g);
  return Congruence{a0 + m * t, m_g * n};
}

std::optional<Integer> crt_general(const CongruenceSystem& sys) {
  Congruence acc{sys.residues()[0], sys.moduli()[0]};
  for (std::size_t i = 1; i < sys.size(); ++i) {
    auto merged = crt_pair_merge(acc.residue, acc.modulus, sys.residues()[i],
                                 sys.moduli()[i]);
    if (!merged) return std::nullopt;
    acc = std::move(*merged);
  }
  return acc.residue;
}

bool pairwise_coprime(std::span<const Integer> moduli) {
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      if (gcd(moduli[i], moduli[j]) != 1) return false;
    }
  }
  return true;
}

Integer crt_coprime_closed_form(const CongruenceSystem& sys) {
  if (!pairwise_coprime(sys.moduli())) {
    throw std::invalid_argument("closed-form CRT needs pairwise coprime moduli");
  }
  Integer product = 1;
  for (const auto& m : sys.moduli()) product *= m;
  Integer sum = 0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const Integer& mi = sys.moduli()[i];
    const Integer cofactor = product / mi;
    sum += sys.residues()[i] * mod_inverse(cofactor, mi) * cofactor;
  }
  return mod_floor(sum, product);
}

std::vector<Integer> remainders_of(const Integer& n, const ModuliSet& moduli) {
  std::vector<Integer> out;
  out.reserve(moduli.size());
  for (const auto& m : moduli) out.push_back(mod_floor(n, m));
  return out;
}

}  // namespace rcrt

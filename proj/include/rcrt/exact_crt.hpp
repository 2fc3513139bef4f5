#pragma once

// Error-free reconstruction: generalized CRT over arbitrary (possibly
// non-coprime) moduli, and the closed form for pairwise coprime moduli.

#include <optional>
#include <span>
#include <vector>

#include "rcrt/arith.hpp"
#include "rcrt/moduli.hpp"

namespace rcrt {

struct Congruence {
  Integer residue;  // in [0, modulus)
  Integer modulus;

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// x == residues[i] (mod moduli[i]). Residues are reduced into [0, modulus)
/// on construction. Moduli need not be distinct.
class CongruenceSystem {
 public:
  CongruenceSystem(std::vector<Integer> residues, std::vector<Integer> moduli);

  std::size_t size() const { return moduli_.size(); }
  std::span<const Integer> residues() const { return residues_; }
  std::span<const Integer> moduli() const { return moduli_; }

 private:
  std::vector<Integer> residues_;
  std::vector<Integer> moduli_;
};

/// Merge x == a (mod m) with x == b (mod n). Returns the smallest
/// nonnegative solution together with lcm(m, n), or nullopt when
/// gcd(m, n) does not divide a - b.
std::optional<Congruence> crt_pair_merge(const Integer& a, const Integer& m,
                                         const Integer& b, const Integer& n);

/// Smallest nonnegative solution below the lcm of all moduli, or nullopt
/// when the congruences contradict each other.
std::optional<Integer> crt_general(const CongruenceSystem& sys);

/// sum_i x_i * b_i * (P / m_i) mod P with P the product of the moduli and
/// b_i the inverse of P / m_i modulo m_i. Throws std::invalid_argument
/// unless the moduli are pairwise coprime.
Integer crt_coprime_closed_form(const CongruenceSystem& sys);

bool pairwise_coprime(std::span<const Integer> moduli);

/// N mod M_i for every modulus.
std::vector<Integer> remainders_of(const Integer& n, const ModuliSet& moduli);

}  // namespace rcrt

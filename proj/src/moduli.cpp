#include "rcrt/moduli.hpp"

#include <algorithm>
#include <stdexcept>

namespace rcrt {

ModuliSet::ModuliSet(std::vector<Integer> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw std::invalid_argument("empty moduli set");
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (moduli_[i] <= 0) {
      throw std::invalid_argument("modulus must be positive: " +
                                  moduli_[i].get_str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (moduli_[i] == moduli_[j]) {
        throw std::invalid_argument("repeated modulus: " + moduli_[i].get_str());
      }
    }
  }
}

ModuliSet::ModuliSet(std::initializer_list<long> moduli)
    : ModuliSet(std::vector<Integer>(moduli.begin(), moduli.end())) {}

bool ModuliSet::divisor_free() const {
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      if (a != b && mpz_divisible_p(moduli_[a].get_mpz_t(),
                                    moduli_[b].get_mpz_t()) != 0) {
        return false;
      }
    }
  }
  return true;
}

ModuliSet ModuliSet::subset(std::span<const std::size_t> indices) const {
  std::vector<Integer> out;
  out.reserve(indices.size());
  for (auto i : indices) {
    if (i >= size()) throw std::invalid_argument("modulus index out of range");
    out.push_back(moduli_[i]);
  }
  return ModuliSet(std::move(out));
}

bool RemainderVec::within_bounds(std::span<const Integer> exact) const {
  if (error_bounds.empty()) return true;
  if (error_bounds.size() != values.size() || exact.size() != values.size()) {
    throw std::invalid_argument("remainder/bound length mismatch");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    Integer diff = values[i] - exact[i];
    if (!error_bounds[i].admits(Rational(Integer(abs(diff))))) return false;
  }
  return true;
}

std::string ModuliSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) out += ", ";
    out += moduli_[i].get_str();
  }
  return out + "}";
}

}  // namespace rcrt

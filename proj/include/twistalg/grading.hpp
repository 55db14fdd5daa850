#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistalg {

inline int mod2(int x) { return ((x % 2) + 2) % 2; }

/// Cohomological degree in ℤ and fermionic degree in ℤ/2.
struct BiDegree {
  int cohomological = 0;
  int fermionic = 0;  // kept reduced to {0,1}

  constexpr BiDegree() = default;
  BiDegree(int coh, int ferm) : cohomological(coh), fermionic(mod2(ferm)) {}

  /// Total Koszul parity; every sign rule in the library uses this.
  int parity() const { return mod2(cohomological + fermionic); }

  BiDegree operator+(const BiDegree& o) const {
    return {cohomological + o.cohomological, fermionic + o.fermionic};
  }
  BiDegree operator-(const BiDegree& o) const {
    return {cohomological - o.cohomological, fermionic + o.fermionic};
  }
  BiDegree operator-() const { return {-cohomological, fermionic}; }

  friend bool operator==(const BiDegree&, const BiDegree&) = default;
  friend auto operator<=>(const BiDegree&, const BiDegree&) = default;

  std::string str() const {
    std::ostringstream os;
    os << "(" << cohomological << "," << fermionic << ")";
    return os.str();
  }
};

/// Sign (+1/-1) picked up when graded objects with the given parities are
/// rearranged by `permutation`: position i of the result holds input
/// permutation[i]. Each transposition of two odd objects contributes -1.
inline int koszul_sign(std::span<const int> permutation, std::span<const int> parities) {
  if (permutation.size() != parities.size())
    throw std::invalid_argument("koszul_sign: permutation and parity lists differ in length");
  const std::size_t n = permutation.size();
  std::vector<bool> seen(n, false);
  for (int p : permutation) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("koszul_sign: not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
  int sign = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (permutation[i] > permutation[j] && mod2(parities[static_cast<std::size_t>(permutation[i])]) &&
          mod2(parities[static_cast<std::size_t>(permutation[j])]))
        sign = -sign;
  return sign;
}

/// Sign of the permutation itself (ignores grading).
inline int permutation_sign(std::span<const int> permutation) {
  int sign = 1;
  for (std::size_t i = 0; i < permutation.size(); ++i)
    for (std::size_t j = i + 1; j < permutation.size(); ++j)
      if (permutation[i] > permutation[j]) sign = -sign;
  return sign;
}

/// Koszul sign for graded-antisymmetric objects: sgn(σ)·ε(σ).
inline int antisymmetric_sign(std::span<const int> permutation, std::span<const int> parities) {
  return permutation_sign(permutation) * koszul_sign(permutation, parities);
}

}  // namespace twistalg

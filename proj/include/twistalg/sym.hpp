#pragma once

#include <twistalg/polynomial.hpp>
#include <twistalg/space.hpp>

#include <climits>
#include <cstddef>
#include <vector>

namespace twistalg {

/// Free graded-commutative algebra whose generators are the basis of a space;
/// generator code i is basis element i.
inline GradedAlgebra free_algebra(const BigradedSpace& v) {
  GradedAlgebra a;
  for (std::size_t i = 0; i < v.dim(); ++i) a.add_generator(static_cast<int>(i), {v[i].name, v[i].degree});
  return a;
}

/// Sym^n(V): graded-symmetric monomials of length n, keeping those of
/// cohomological degree ≤ degree_cap.
inline BigradedSpace sym_power(const BigradedSpace& v, int n, int degree_cap = INT_MAX) {
  if (n < 0) return BigradedSpace();
  GradedAlgebra a = free_algebra(v);
  std::vector<int> gens;
  for (std::size_t i = 0; i < v.dim(); ++i) gens.push_back(static_cast<int>(i));
  std::vector<BasisElement> out;
  for (const auto& m : a.monomials(gens, n, n)) {
    BiDegree d = a.degree(m);
    if (d.cohomological <= degree_cap) out.push_back({a.name(m), d});
  }
  return BigradedSpace(std::move(out));
}

/// Closed-form count of Sym^n for e even and o odd generators.
inline long long sym_count(int even, int odd, int n) {
  long long total = 0;
  for (int k = 0; k <= n && k <= odd; ++k) {
    const Q c = binomial(odd, k) * (even == 0 ? Q(n - k == 0 ? 1 : 0) : binomial(even + n - k - 1, n - k));
    total += c.get_num().get_si();
  }
  return total;
}

}  // namespace twistalg

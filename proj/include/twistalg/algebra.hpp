#pragma once

#include <twistalg/linf.hpp>
#include <twistalg/polynomial.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

/// Finite-dimensional graded-commutative algebra spanned by the monomials
/// of a free algebra with bounded exponents; products outside the span
/// vanish. Covers Q[z1,z2]/(z^n) ⊗ Λ[ε...] and exterior algebras.
class MonomialAlgebra {
 public:
  MonomialAlgebra() = default;
  /// exponent_caps[code]: exponents run over 0..cap-1 (odd generators: at most 1).
  MonomialAlgebra(GradedAlgebra gens, const std::map<int, int>& exponent_caps) : gens_(std::move(gens)) {
    std::vector<std::pair<int, int>> ranges;
    for (const auto& [code, g] : gens_.generators()) {
      auto it = exponent_caps.find(code);
      int cap = it == exponent_caps.end() ? 1 : it->second;
      if (g.parity()) cap = std::min(cap, 2);
      ranges.emplace_back(code, cap);
    }
    std::vector<int> e(ranges.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t p) {
      if (p == ranges.size()) {
        Monomial m;
        for (std::size_t k = 0; k < ranges.size(); ++k)
          if (e[k] > 0) m.factors.emplace_back(ranges[k].first, e[k]);
        basis_.push_back(std::move(m));
        return;
      }
      for (int x = 0; x < ranges[p].second; ++x) {
        e[p] = x;
        rec(p + 1);
      }
    };
    rec(0);
    std::sort(basis_.begin(), basis_.end());
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<int>(i);
    // the top monomial: longest one (unique for these truncations)
    top_ = basis_.empty() ? -1 : static_cast<int>(basis_.size()) - 1;
  }

  std::size_t dim() const { return basis_.size(); }
  const GradedAlgebra& generators() const { return gens_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  const Monomial& monomial(int i) const { return basis_.at(static_cast<std::size_t>(i)); }
  int index_of(const Monomial& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
  }
  int unit_index() const { return index_of(Monomial{}); }
  int top_index() const { return top_; }
  BiDegree degree(int i) const { return gens_.degree(monomial(i)); }
  int parity(int i) const { return degree(i).parity(); }
  std::string name(int i) const { return gens_.name(monomial(i)); }

  BigradedSpace space() const {
    std::vector<BasisElement> b;
    for (std::size_t i = 0; i < basis_.size(); ++i) b.push_back({name(static_cast<int>(i)), degree(static_cast<int>(i))});
    return BigradedSpace(std::move(b));
  }

  /// Product of basis elements: (sign, index), sign 0 when it vanishes.
  std::pair<int, int> product(int i, int j) const {
    auto key = std::make_pair(i, j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::pair<int, int> r{0, -1};
    auto p = gens_.multiply(monomial(i), monomial(j));
    if (p) {
      const int k = index_of(p->second);
      if (k >= 0) r = {p->first, k};
    }
    cache_.emplace(key, r);
    return r;
  }

  /// Coefficient of the top monomial in the product of basis elements i, j.
  int top_coefficient(int i, int j) const {
    auto [s, k] = product(i, j);
    return (s != 0 && k == top_) ? s : 0;
  }

 private:
  GradedAlgebra gens_;
  std::vector<Monomial> basis_;
  std::map<Monomial, int> index_;
  int top_ = -1;
  mutable std::map<std::pair<int, int>, std::pair<int, int>> cache_;
};

/// Q[z1,z2]/(z1^n1, z2^n2) with odd/even ε parameters of the given degrees.
inline MonomialAlgebra polydisc_ring(int n1, int n2, const std::vector<int>& eps_degrees = {}) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("polydisc_ring: truncation orders must be >= 1");
  GradedAlgebra g;
  g.add_generator(0, {"z1", BiDegree(0, 0)});
  g.add_generator(1, {"z2", BiDegree(0, 0)});
  std::map<int, int> caps{{0, n1}, {1, n2}};
  for (std::size_t k = 0; k < eps_degrees.size(); ++k) {
    const std::string nm = eps_degrees.size() == 1 ? "ε" : "ε" + std::to_string(k + 1);
    g.add_generator(2 + static_cast<int>(k), {nm, BiDegree(eps_degrees[k], 0)});
    caps[2 + static_cast<int>(k)] = 2;
  }
  return MonomialAlgebra(std::move(g), caps);
}

/// Exterior algebra Λ[θ1..θk] on degree-1 generators.
inline MonomialAlgebra exterior_algebra(int k, const std::string& prefix = "θ") {
  GradedAlgebra g;
  std::map<int, int> caps;
  for (int i = 0; i < k; ++i) {
    g.add_generator(i, {prefix + std::to_string(i + 1), BiDegree(1, 0)});
    caps[i] = 2;
  }
  return MonomialAlgebra(std::move(g), caps);
}

/// L ⊗ A: l1(x⊗a) = l1(x)⊗a, l2(x⊗a, y⊗b) = (-1)^{|a||y|} l2(x,y)⊗ab.
/// Basis element x_i⊗a_p has index i·dim(A) + p.
inline LInfStructure tensor(const LInfStructure& L, const MonomialAlgebra& A) {
  for (int n = 3; n <= L.arity_cap(); ++n)
    if (L.has_arity(n)) throw std::invalid_argument("tensor: brackets of arity >= 3 are not supported");
  const int da = static_cast<int>(A.dim());
  LInfStructure T(tensor(L.space(), A.space()), L.arity_cap());
  auto at = [&](int i, int p) { return i * da + p; };
  if (L.has_arity(1))
    for (const auto& [key, out] : L.table(1))
      for (int p = 0; p < da; ++p) {
        std::vector<ScalarVec::Entry> e;
        for (const auto& [k, c] : out) e.emplace_back(at(k, p), c);
        T.set_bracket({at(key[0], p)}, ScalarVec(std::move(e)));
      }
  if (L.has_arity(2))
    for (const auto& [key, out] : L.table(2)) {
      const int x = key[0], y = key[1];
      for (int p = 0; p < da; ++p)
        for (int q = 0; q < da; ++q) {
          auto [s, r] = A.product(p, q);
          if (s == 0) continue;
          if (x == y && p > q) continue;  // same pair reached from the other order
          const int sign = s * ((A.parity(p) && L.parity(y)) ? -1 : 1);
          std::vector<ScalarVec::Entry> e;
          for (const auto& [k, c] : out) e.emplace_back(at(k, r), c * Scalar(sign));
          T.set_bracket({at(x, p), at(y, q)}, ScalarVec(std::move(e)));
        }
    }
  return T;
}

}  // namespace twistalg

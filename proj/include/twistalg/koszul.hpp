#pragma once

#include <twistalg/bf.hpp>
#include <twistalg/ce.hpp>
#include <twistalg/complex.hpp>
#include <twistalg/lie.hpp>
#include <twistalg/linf.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

/// Graded dimensions of Sym(h) by weight (the PBW basis of U(h)).
inline std::map<int, std::size_t> pbw_dims(const std::vector<int>& weights, int weight_cap) {
  std::vector<std::size_t> c(static_cast<std::size_t>(weight_cap) + 1, 0);
  c[0] = 1;
  for (int w : weights) {
    if (w <= 0) throw std::invalid_argument("pbw_dims: weights must be positive");
    for (int k = w; k <= weight_cap; ++k) c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k - w)];
  }
  std::map<int, std::size_t> out;
  for (int k = 0; k <= weight_cap; ++k) out[k] = c[static_cast<std::size_t>(k)];
  return out;
}

struct BarTorResult {
  std::map<int, std::map<int, std::size_t>> by_degree;  // weight -> bar degree -> dim H
  std::map<int, std::size_t> totals;                    // weight -> Σ dims
  std::map<int, std::size_t> pbw;
  std::set<int> unresolved;                             // weights the tensor-length cap cannot reach
  std::map<int, std::size_t> chain_dims;                // weight -> size of the bar complex
  bool d_squared_zero = true;

  bool matches_pbw() const {
    for (const auto& [w, n] : totals)
      if (!unresolved.count(w) && pbw.at(w) != n) return false;
    return d_squared_zero;
  }
};

/// Tor^{C*(h)}(Q, Q) by weight via the reduced bar construction on the
/// Chevalley–Eilenberg algebra. Bar element [a_1|…|a_t] has degree
/// Σ(|a_i| - 1); with ε_i = Σ_{k<i}(|a_k| - 1),
///   d = Σ_i -(-1)^{ε_i} [… | d a_i | …] + Σ_i (-1)^{ε_{i+1}} [… | a_i a_{i+1} | …].
inline BarTorResult bar_tor_dims(const LieAlgebra& h, int tensor_cap, int weight_cap) {
  if (tensor_cap < 0 || weight_cap < 0) throw std::invalid_argument("bar_tor_dims: caps must be >= 0");
  if (h.dim() > 4) throw std::invalid_argument("bar_tor_dims: dim h must be <= 4");
  if (!h.weights || static_cast<int>(h.weights->size()) != h.dim())
    throw std::invalid_argument("bar_tor_dims: h needs a positive weight grading (nilpotent)");
  const std::vector<int>& wt = *h.weights;
  for (int a = 0; a < h.dim(); ++a) {
    if (wt[static_cast<std::size_t>(a)] <= 0) throw std::invalid_argument("bar_tor_dims: weights must be positive");
    for (int b = 0; b < h.dim(); ++b)
      for (int c = 0; c < h.dim(); ++c)
        if (!is_zero(h.structure_constant(a, b, c)) &&
            wt[static_cast<std::size_t>(c)] != wt[static_cast<std::size_t>(a)] + wt[static_cast<std::size_t>(b)])
          throw std::invalid_argument("bar_tor_dims: weights are not additive under the bracket");
  }

  const CEAlgebra ce(h.as_linf(), h.dim());
  struct Elem {
    Monomial m;
    int weight;
    int degree;
  };
  std::vector<Elem> abar;
  std::map<Monomial, int> abar_index;
  for (const auto& [k, list] : ce.basis_by_degree())
    for (const auto& m : list) {
      if (m.is_unit()) continue;
      int w = 0;
      for (const auto& [g, e] : m.factors) w += e * wt[static_cast<std::size_t>(g)];
      abar_index[m] = static_cast<int>(abar.size());
      abar.push_back({m, w, m.length()});
    }

  BarTorResult res;
  res.pbw = pbw_dims(wt, weight_cap);
  for (int w = 0; w <= weight_cap; ++w) {
    if (w > tensor_cap) res.unresolved.insert(w);  // tuples of w weight-one letters are cut off
    // enumerate tuples of total weight w with length ≤ tensor_cap
    std::map<int, std::vector<std::vector<int>>> tuples;  // bar degree -> tuples
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int deg) {
      if (rem == 0) {
        tuples[deg].push_back(cur);
        return;
      }
      if (static_cast<int>(cur.size()) >= tensor_cap) return;
      for (std::size_t i = 0; i < abar.size(); ++i)
        if (abar[i].weight <= rem) {
          cur.push_back(static_cast<int>(i));
          rec(rem - abar[i].weight, deg + abar[i].degree - 1);
          cur.pop_back();
        }
    };
    rec(w, 0);
    std::map<int, std::map<std::vector<int>, int>> index;
    std::size_t total_chain = 0;
    for (const auto& [deg, list] : tuples) {
      for (std::size_t i = 0; i < list.size(); ++i) index[deg][list[i]] = static_cast<int>(i);
      total_chain += list.size();
    }
    res.chain_dims[w] = total_chain;

    // differential of one tuple, as a map tuple -> coefficient
    auto diff = [&](const std::vector<int>& t) {
      std::map<std::vector<int>, Q> out;
      int eps = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const Elem& a = abar[static_cast<std::size_t>(t[i])];
        const Poly da = ce.d(Poly::monomial(a.m));
        for (const auto& [m, c] : da.terms()) {
          std::vector<int> nt = t;
          nt[i] = abar_index.at(m);
          out[nt] += c.coeff(0) * (eps % 2 ? 1 : -1);
        }
        eps += a.degree - 1;
        if (i + 1 < t.size()) {
          const Elem& b = abar[static_cast<std::size_t>(t[i + 1])];
          const Poly ab = ce.product(Poly::monomial(a.m), Poly::monomial(b.m));
          for (const auto& [m, c] : ab.terms()) {
            std::vector<int> nt(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
            nt.push_back(abar_index.at(m));
            nt.insert(nt.end(), t.begin() + static_cast<std::ptrdiff_t>(i) + 2, t.end());
            out[nt] += c.coeff(0) * (eps % 2 ? -1 : 1);
          }
        }
      }
      std::erase_if(out, [](const auto& e) { return is_zero(e.second); });
      return out;
    };

    std::map<int, std::vector<QVec>> cols;  // degree -> columns into degree+1
    for (const auto& [deg, list] : tuples) {
      for (const auto& t : list) {
        VecBuilder<Q> v;
        for (const auto& [nt, c] : diff(t)) {
          auto it = index[deg + 1].find(nt);
          if (it == index[deg + 1].end()) throw std::logic_error("bar_tor_dims: differential left the weight piece");
          v.add(it->second, c);
        }
        cols[deg].push_back(v.build());
      }
    }
    // d² = 0
    for (const auto& [deg, cs] : cols) {
      auto nx = cols.find(deg + 1);
      if (nx == cols.end()) continue;
      for (const auto& col : cs) {
        VecBuilder<Q> v;
        for (const auto& [j, c] : col) v.add(nx->second[static_cast<std::size_t>(j)], c);
        if (!v.build().empty()) res.d_squared_zero = false;
      }
    }
    std::map<int, std::size_t> rank;
    for (const auto& [deg, cs] : cols) rank[deg] = rank_of(cs);
    std::size_t tot = 0;
    for (const auto& [deg, list] : tuples) {
      const std::size_t hd = list.size() - rank[deg] - (rank.count(deg - 1) ? rank[deg - 1] : 0);
      if (hd) res.by_degree[w][deg] = hd;
      tot += hd;
    }
    res.totals[w] = tot;
  }
  return res;
}

/// N=1 BF theory on Q[z1,z2]/(z1^{n1}, z2^{n2}) with the extra differential
/// X⊗z1^a z2^b ↦ b κ(X)⊗z1^a z2^{b-1}. The dual summand is truncated one
/// step lower in z2 (exponents < n2 - 1) so that l1 maps onto it.
struct DeformedBF {
  LieAlgebra g;
  int n1 = 1, n2 = 1;
  LInfStructure structure;
  int alpha_count() const { return g.dim() * n1 * n2; }
  int alpha(int a, int i, int j) const { return (a * n1 + i) * n2 + j; }
  int beta(int a, int i, int j) const { return alpha_count() + (a * n1 + i) * (n2 - 1) + j; }
};

inline DeformedBF deformed_bf(const LieAlgebra& g, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("deformed_bf: truncation orders must be >= 1");
  if (!g.form) throw std::invalid_argument("deformed_bf: g needs an invariant form");
  const int d = g.dim();
  {
    std::vector<QVec> rows;
    for (int a = 0; a < d; ++a) {
      VecBuilder<Q> v;
      for (int b = 0; b < d; ++b) v.add(b, (*g.form)[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      rows.push_back(v.build());
    }
    if (static_cast<int>(rank_of(rows)) != d) throw std::invalid_argument("deformed_bf: degenerate form");
  }
  DeformedBF D;
  D.g = g;
  D.n1 = n1;
  D.n2 = n2;
  auto mono = [](int i, int j) {
    std::string s;
    if (i) s += "z1" + (i > 1 ? "^" + std::to_string(i) : std::string());
    if (j) s += (s.empty() ? "" : "*") + std::string("z2") + (j > 1 ? "^" + std::to_string(j) : std::string());
    return s.empty() ? std::string("1") : s;
  };
  std::vector<BasisElement> basis;
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) basis.push_back({g.basis[static_cast<std::size_t>(a)] + "⊗" + mono(i, j), BiDegree(0, 0)});
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j + 1 < n2; ++j)
        basis.push_back({BigradedSpace::dual_name(g.basis[static_cast<std::size_t>(a)]) + "⊗" + mono(i, j), BiDegree(1, 0)});
  D.structure = LInfStructure(BigradedSpace(std::move(basis)), 2);

  for (int a = 0; a < d; ++a)
    for (int i = 0; i < n1; ++i)
      for (int j = 1; j < n2; ++j) {
        VecBuilder<Scalar> v;
        for (int b = 0; b < d; ++b) {
          const Q k = (*g.form)[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
          if (!is_zero(k)) v.add(D.beta(b, i, j - 1), Scalar(k * j));
        }
        D.structure.set_bracket({D.alpha(a, i, j)}, v.build());
      }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
          for (int k = 0; k < n1; ++k)
            for (int l = 0; l < n2; ++l) {
              if (i + k >= n1) continue;
              // [α, α'] = [X, Y] ⊗ product
              if (a < b && j + l < n2) {
                VecBuilder<Scalar> v;
                for (int c = 0; c < d; ++c) {
                  const Q s = g.structure_constant(a, b, c);
                  if (!is_zero(s)) v.add(D.alpha(c, i + k, j + l), Scalar(s));
                }
                D.structure.set_bracket({D.alpha(a, i, j), D.alpha(b, k, l)}, v.build());
              }
              // [α, β] = ad*_X ξ ⊗ product, with ad*_{X_a} ξ^b = Σ_c C^b_{ca} ξ^c
              if (l + 1 < n2 && j + l + 1 < n2) {
                VecBuilder<Scalar> v;
                for (int c = 0; c < d; ++c) {
                  const Q s = g.structure_constant(c, a, b);
                  if (!is_zero(s)) v.add(D.beta(c, i + k, j + l), Scalar(s));
                }
                D.structure.set_bracket({D.alpha(a, i, j), D.beta(b, k, l)}, v.build());
              }
            }
  return D;
}

/// (dim ker, dim coker) of the added differential α ↦ β.
inline std::pair<std::size_t, std::size_t> deformed_l1_kernel_cokernel(const DeformedBF& D) {
  std::vector<QVec> cols;
  for (int x = 0; x < D.alpha_count(); ++x) {
    VecBuilder<Q> v;
    for (const auto& [k, c] : D.structure.bracket(std::vector<int>{x})) v.add(k - D.alpha_count(), c.coeff(0));
    cols.push_back(v.build());
  }
  const std::size_t r = rank_of(cols);
  const std::size_t nbeta = D.structure.dim() - static_cast<std::size_t>(D.alpha_count());
  return {static_cast<std::size_t>(D.alpha_count()) - r, nbeta - r};
}

inline std::map<int, std::size_t> deformed_observables_dims(const LieAlgebra& g, int n1, int n2, int sym_cap) {
  const DeformedBF D = deformed_bf(g, n1, n2);
  const CEAlgebra ce(D.structure, sym_cap);
  std::map<int, std::size_t> out;
  for (const auto& [k, n] : cohomology(ce.complex(), Q(0), false).dims)
    if (n) out[k] = n;
  if (out.empty()) out[0] = 0;
  return out;
}

/// Expected answer: graded Sym on the duals of g⊗z1^i (i < n1), each in degree 1.
inline std::map<int, std::size_t> deformed_expected_dims(const LieAlgebra& g, int n1, int sym_cap) {
  std::map<int, std::size_t> out;
  for (const auto& [k, n] : graded_sym_count(std::vector<int>(static_cast<std::size_t>(g.dim() * n1), 1), sym_cap))
    if (n) out[k] = n;
  return out;
}

}  // namespace twistalg

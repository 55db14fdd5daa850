#pragma once

#include <twistalg/linf.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

/// Finite-dimensional Lie algebra in degree 0 given by structure constants.
struct LieAlgebra {
  std::string name;
  std::vector<std::string> basis;
  /// [x_a, x_b] for a < b, as (c, coefficient) lists.
  std::map<std::pair<int, int>, std::vector<std::pair<int, Q>>> brackets;
  /// Nondegenerate invariant symmetric form, when one is known.
  std::optional<std::vector<std::vector<Q>>> form;
  /// Positive grading making [,] additive (present for the nilpotent ones).
  std::optional<std::vector<int>> weights;

  int dim() const { return static_cast<int>(basis.size()); }

  /// C^c_{ab}: coefficient of x_c in [x_a, x_b].
  Q structure_constant(int a, int b, int c) const {
    if (a == b) return Q(0);
    const int s = a < b ? 1 : -1;
    auto it = brackets.find({std::min(a, b), std::max(a, b)});
    if (it == brackets.end()) return Q(0);
    for (const auto& [k, v] : it->second)
      if (k == c) return v * s;
    return Q(0);
  }

  void set(int a, int b, std::vector<std::pair<int, Q>> out) {
    if (a == b) throw std::invalid_argument("LieAlgebra: [x,x] must vanish");
    if (a > b) {
      for (auto& e : out) e.second = -e.second;
      std::swap(a, b);
    }
    brackets[{a, b}] = std::move(out);
  }

  BigradedSpace space() const {
    std::vector<BasisElement> b;
    for (const auto& n : basis) b.push_back({n, BiDegree(0, 0)});
    return BigradedSpace(std::move(b));
  }

  LInfStructure as_linf(int arity_cap = 3) const {
    LInfStructure L(space(), arity_cap);
    for (const auto& [ab, out] : brackets) {
      std::vector<ScalarVec::Entry> e;
      for (const auto& [c, v] : out) e.emplace_back(c, Scalar(v));
      L.set_bracket({ab.first, ab.second}, ScalarVec(std::move(e)));
    }
    return L;
  }

  bool is_abelian() const {
    for (const auto& [ab, out] : brackets)
      for (const auto& [c, v] : out)
        if (v != 0) return false;
    return true;
  }
};

inline LieAlgebra lie_zero() { return {"zero", {}, {}, std::vector<std::vector<Q>>{}, std::vector<int>{}}; }

inline LieAlgebra lie_abelian(int k) {
  if (k < 0) throw std::invalid_argument("lie_abelian: negative dimension");
  LieAlgebra g;
  g.name = "abelian" + std::to_string(k);
  for (int i = 0; i < k; ++i) g.basis.push_back(k == 1 ? "x" : "x" + std::to_string(i + 1));
  std::vector<std::vector<Q>> f(static_cast<std::size_t>(k), std::vector<Q>(static_cast<std::size_t>(k), Q(0)));
  for (int i = 0; i < k; ++i) f[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  g.form = f;
  g.weights = std::vector<int>(static_cast<std::size_t>(k), 1);
  return g;
}

/// sl2 with basis (h, e, f): [h,e]=2e, [h,f]=-2f, [e,f]=h.
inline LieAlgebra lie_sl2() {
  LieAlgebra g;
  g.name = "sl2";
  g.basis = {"h", "e", "f"};
  g.set(0, 1, {{1, Q(2)}});
  g.set(0, 2, {{2, Q(-2)}});
  g.set(1, 2, {{0, Q(1)}});
  // trace form: (h,h)=2, (e,f)=1
  g.form = std::vector<std::vector<Q>>{{Q(2), Q(0), Q(0)}, {Q(0), Q(0), Q(1)}, {Q(0), Q(1), Q(0)}};
  return g;
}

/// gl2 with basis (E11, E12, E21, E22).
inline LieAlgebra lie_gl2() {
  LieAlgebra g;
  g.name = "gl2";
  g.basis = {"E11", "E12", "E21", "E22"};
  // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
  auto idx = [](int i, int j) { return 2 * i + j; };
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const int i = a / 2, j = a % 2, k = b / 2, l = b % 2;
      std::map<int, Q> out;
      if (j == k) out[idx(i, l)] += 1;
      if (l == i) out[idx(k, j)] -= 1;
      std::vector<std::pair<int, Q>> v;
      for (const auto& [c, q] : out)
        if (q != 0) v.emplace_back(c, q);
      if (!v.empty()) g.set(a, b, v);
    }
  // trace form tr(XY)
  std::vector<std::vector<Q>> f(4, std::vector<Q>(4, Q(0)));
  f[0][0] = 1;
  f[3][3] = 1;
  f[1][2] = 1;
  f[2][1] = 1;
  g.form = f;
  return g;
}

/// Heisenberg algebra (x, y, z) with [x,y]=z; weights 1, 1, 2.
inline LieAlgebra lie_heisenberg() {
  LieAlgebra g;
  g.name = "heisenberg";
  g.basis = {"x", "y", "z"};
  g.set(0, 1, {{2, Q(1)}});
  g.weights = std::vector<int>{1, 1, 2};
  return g;
}

inline LieAlgebra lie_by_name(const std::string& name) {
  if (name == "zero" || name == "0") return lie_zero();
  if (name == "sl2") return lie_sl2();
  if (name == "gl2") return lie_gl2();
  if (name == "heisenberg") return lie_heisenberg();
  if (name.rfind("abelian", 0) == 0) {
    const std::string k = name.substr(7);
    return lie_abelian(k.empty() ? 1 : std::stoi(k));
  }
  throw std::invalid_argument("unknown Lie algebra '" + name + "'");
}

}  // namespace twistalg

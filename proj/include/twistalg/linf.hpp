#pragma once

#include <twistalg/graded_map.hpp>
#include <twistalg/grading.hpp>
#include <twistalg/scalar.hpp>
#include <twistalg/space.hpp>
#include <twistalg/sparse.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

/// Renders a vector in a named basis, e.g. "2*e + -1*h".
inline std::string render(const BigradedSpace& v, const ScalarVec& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : x) {
    if (!first) os << " + ";
    first = false;
    os << (c.is_constant() ? c.str() : "(" + c.str() + ")") << "*" << v[static_cast<std::size_t>(i)].name;
  }
  return os.str();
}

/// Brackets l_1..l_A on a finite bigraded space. l_n has bidegree (2-n, 0)
/// and is graded antisymmetric: swapping neighbours x, y costs -(-1)^{|x||y|}.
/// Each l_n is stored on sorted index tuples only.
class LInfStructure {
 public:
  using Table = std::map<std::vector<int>, ScalarVec>;

  LInfStructure() = default;
  explicit LInfStructure(BigradedSpace space, int arity_cap = 3)
      : space_(std::move(space)), cap_(arity_cap), tables_(static_cast<std::size_t>(arity_cap)) {
    if (arity_cap < 1) throw std::invalid_argument("LInfStructure: arity cap must be >= 1");
  }

  const BigradedSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  int arity_cap() const { return cap_; }
  int parity(int i) const { return space_.parity(static_cast<std::size_t>(i)); }
  const Table& table(int n) const { return tables_.at(static_cast<std::size_t>(n - 1)); }
  bool has_arity(int n) const { return n >= 1 && n <= cap_ && !table(n).empty(); }

  /// Sets l_n(x_{inputs...}) = out. Inputs may be in any order.
  void set_bracket(const std::vector<int>& inputs, const ScalarVec& out) {
    const int n = static_cast<int>(inputs.size());
    if (n < 1 || n > cap_) throw std::invalid_argument("set_bracket: arity outside 1.." + std::to_string(cap_));
    BiDegree target(2 - n, 0);
    for (int i : inputs) {
      if (i < 0 || static_cast<std::size_t>(i) >= dim()) throw std::out_of_range("set_bracket: input index");
      target = target + space_.degree(static_cast<std::size_t>(i));
    }
    for (const auto& [k, c] : out)
      if (space_.degree(static_cast<std::size_t>(k)) != target)
        throw std::invalid_argument("set_bracket: output " + space_[static_cast<std::size_t>(k)].name +
                                    " has the wrong degree for l_" + std::to_string(n));
    auto [key, sign] = canonical(inputs);
    for (std::size_t p = 1; p < key.size(); ++p)
      if (key[p] == key[p - 1] && parity(key[p]) == 0 && !out.empty())
        throw std::invalid_argument("set_bracket: a repeated even input must give zero");
    Table& t = tables_[static_cast<std::size_t>(n - 1)];
    ScalarVec v = out * Scalar(sign);
    if (v.empty()) t.erase(key);
    else t[key] = std::move(v);
  }

  /// l_n on basis elements, in any order.
  ScalarVec bracket(const std::vector<int>& inputs) const {
    const int n = static_cast<int>(inputs.size());
    if (n < 1 || n > cap_) return {};
    const Table& t = table(n);
    if (t.empty()) return {};
    auto [key, sign] = canonical(inputs);
    auto it = t.find(key);
    if (it == t.end()) return {};
    return sign == 1 ? it->second : it->second * Scalar(sign);
  }

  /// Multilinear extension to arbitrary elements.
  ScalarVec bracket(const std::vector<ScalarVec>& xs) const {
    VecBuilder<Scalar> acc;
    std::vector<int> idx(xs.size());
    std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t p, const Scalar& coef) {
      if (p == xs.size()) {
        acc.add(bracket(idx), coef);
        return;
      }
      for (const auto& [i, c] : xs[p]) {
        idx[p] = i;
        rec(p + 1, coef * c);
      }
    };
    if (!xs.empty()) rec(0, Scalar(1));
    return acc.build();
  }

  /// Sorts inputs, returning the sorted tuple and the sign picked up
  /// (0 when an even element repeats).
  std::pair<std::vector<int>, int> canonical(const std::vector<int>& inputs) const {
    std::vector<int> w = inputs;
    int sign = 1;
    for (std::size_t i = 1; i < w.size(); ++i)
      for (std::size_t k = i; k > 0 && w[k - 1] > w[k]; --k) {
        sign = -sign;
        if (parity(w[k - 1]) && parity(w[k])) sign = -sign;
        std::swap(w[k - 1], w[k]);
      }
    return {w, sign};
  }

 private:
  BigradedSpace space_;
  int cap_ = 3;
  std::vector<Table> tables_;
};

struct LinfReport {
  std::vector<std::string> violations;
  std::size_t tuples_checked = 0;
  bool ok() const { return violations.empty(); }
};

namespace detail {

/// Generalized Jacobi expression J_n(x_1..x_n); zero for an L∞ algebra.
inline ScalarVec jacobiator(const LInfStructure& L, const std::vector<int>& xs) {
  const int n = static_cast<int>(xs.size());
  std::vector<int> par(xs.size());
  for (std::size_t p = 0; p < xs.size(); ++p) par[p] = L.parity(xs[p]);
  VecBuilder<Scalar> acc;
  for (int i = 1; i <= n; ++i) {
    const int j = n + 1 - i;
    if (!L.has_arity(i) || !L.has_arity(j)) continue;
    const int outer_sign = (i * (j - 1)) % 2 ? -1 : 1;
    // unshuffles: choose the first block as an increasing subset of size i
    std::vector<int> mask(static_cast<std::size_t>(n), 0);
    std::fill(mask.end() - i, mask.end(), 1);
    do {
      std::vector<int> perm, first, rest;
      for (int p = 0; p < n; ++p)
        if (mask[static_cast<std::size_t>(p)]) {
          perm.push_back(p);
          first.push_back(xs[static_cast<std::size_t>(p)]);
        }
      for (int p = 0; p < n; ++p)
        if (!mask[static_cast<std::size_t>(p)]) {
          perm.push_back(p);
          rest.push_back(xs[static_cast<std::size_t>(p)]);
        }
      const int chi = antisymmetric_sign(perm, par);
      ScalarVec inner = L.bracket(first);
      if (inner.empty()) continue;
      std::vector<int> args(1 + rest.size());
      std::copy(rest.begin(), rest.end(), args.begin() + 1);
      for (const auto& [k, c] : inner) {
        args[0] = k;
        ScalarVec o = L.bracket(args);
        if (!o.empty()) acc.add(o, c * Scalar(chi * outer_sign));
      }
    } while (std::next_permutation(mask.begin(), mask.end()));
  }
  return acc.build();
}

inline std::string tuple_name(const BigradedSpace& v, const std::vector<int>& xs) {
  std::string s = "(";
  for (std::size_t p = 0; p < xs.size(); ++p) {
    if (p) s += ",";
    s += v[static_cast<std::size_t>(xs[p])].name;
  }
  return s + ")";
}

}  // namespace detail

/// Checks the generalized Jacobi identities J_n = 0 for n = 1..arity cap on
/// every sorted basis tuple (J_n is graded antisymmetric, so this suffices).
/// Tuples whose pairwise brackets all vanish are skipped when only l_1, l_2
/// are present, since J_n is then identically zero on them.
inline LinfReport check_linf(const LInfStructure& L, std::size_t max_violations = 50) {
  LinfReport rep;
  const int dim = static_cast<int>(L.dim());
  auto record = [&](const std::vector<int>& xs) {
    ++rep.tuples_checked;
    ScalarVec j = detail::jacobiator(L, xs);
    if (!j.empty() && rep.violations.size() < max_violations)
      rep.violations.push_back("n=" + std::to_string(xs.size()) + " " + detail::tuple_name(L.space(), xs) +
                               ": " + render(L.space(), j));
  };
  auto skip_even_repeat = [&](const std::vector<int>& xs) {
    for (std::size_t p = 1; p < xs.size(); ++p)
      if (xs[p] == xs[p - 1] && L.parity(xs[p]) == 0) return true;
    return false;
  };
  bool only_low = true;
  for (int n = 3; n <= L.arity_cap(); ++n)
    if (L.has_arity(n)) only_low = false;

  for (int n = 1; n <= L.arity_cap(); ++n) {
    if (n == 1) {
      if (L.has_arity(1))
        for (int a = 0; a < dim; ++a) record({a});
      continue;
    }
    if (only_low && n > 3) break;
    if (only_low && n == 3) {
      if (!L.has_arity(2)) continue;
      std::set<std::vector<int>> seen;
      for (const auto& [key, out] : L.table(2))
        for (int c = 0; c < dim; ++c) {
          std::vector<int> t{key[0], key[1], c};
          std::sort(t.begin(), t.end());
          if (skip_even_repeat(t)) continue;
          if (seen.insert(t).second) record(t);
        }
      continue;
    }
    if (only_low && n == 2 && !(L.has_arity(1) && L.has_arity(2))) continue;
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t p, int start) {
      if (p == t.size()) {
        if (!skip_even_repeat(t)) record(t);
        return;
      }
      for (int a = start; a < dim; ++a) {
        t[p] = a;
        rec(p + 1, a);
      }
    };
    rec(0, 0);
  }
  return rep;
}

/// Σ_n (1/n!) l_n(χ,…,χ). χ must be homogeneous of bidegree (1,0).
inline ScalarVec mc_residual(const LInfStructure& L, const ScalarVec& chi) {
  for (const auto& [i, c] : chi)
    if (L.space().degree(static_cast<std::size_t>(i)) != BiDegree(1, 0))
      throw std::invalid_argument("mc_residual: χ has a component of degree " +
                                  L.space().degree(static_cast<std::size_t>(i)).str() + ", expected (1,0)");
  VecBuilder<Scalar> acc;
  Q fact(1);
  for (int n = 1; n <= L.arity_cap(); ++n) {
    fact *= n;
    if (!L.has_arity(n)) continue;
    std::vector<ScalarVec> xs(static_cast<std::size_t>(n), chi);
    acc.add(L.bracket(xs), Scalar(Q(1) / fact));
  }
  return acc.build();
}

/// Graded-symmetric bilinear form ⟨x_i, x_j⟩ = (-1)^{|x_i||x_j|}⟨x_j, x_i⟩,
/// nonzero only when |x_i| + |x_j| = -degree.
class InvariantPairing {
 public:
  InvariantPairing() = default;
  InvariantPairing(const BigradedSpace& space, int degree) : space_(space), degree_(degree) {}

  int degree() const { return degree_; }
  const BigradedSpace& space() const { return space_; }

  void set(int i, int j, const Scalar& v) {
    const BiDegree s = space_.degree(static_cast<std::size_t>(i)) + space_.degree(static_cast<std::size_t>(j));
    if (!v.is_zero() && s != BiDegree(-degree_, 0))
      throw std::invalid_argument("InvariantPairing: entry (" + space_[static_cast<std::size_t>(i)].name + ", " +
                                  space_[static_cast<std::size_t>(j)].name + ") violates the pairing degree");
    const int sw = (space_.parity(static_cast<std::size_t>(i)) && space_.parity(static_cast<std::size_t>(j))) ? -1 : 1;
    put(i, j, v);
    if (i != j) put(j, i, v * Scalar(sw));
  }
  /// Overrides a single entry without symmetrizing (used to build broken pairings).
  void set_raw(int i, int j, const Scalar& v) { put(i, j, v); }

  Scalar value(int i, int j) const {
    auto it = rows_.find(i);
    if (it == rows_.end()) return Scalar(0);
    return it->second.get(j);
  }
  Scalar evaluate(const ScalarVec& a, const ScalarVec& b) const {
    Scalar s(0);
    for (const auto& [i, x] : a) {
      auto it = rows_.find(i);
      if (it == rows_.end()) continue;
      for (const auto& [j, y] : b) s += x * y * it->second.get(j);
    }
    return s;
  }
  /// Nonzero entries in row i.
  const ScalarVec& row(int i) const {
    static const ScalarVec empty;
    auto it = rows_.find(i);
    return it == rows_.end() ? empty : it->second;
  }
  const std::map<int, ScalarVec>& rows() const { return rows_; }

  bool nondegenerate() const {
    std::vector<QVec> cols;
    for (const auto& [i, r] : rows_) {
      std::vector<QVec::Entry> e;
      for (const auto& [j, v] : r) e.emplace_back(j, v.at(Q(0)));
      cols.emplace_back(std::move(e));
    }
    return rank_of(cols) == space_.dim();
  }

 private:
  void put(int i, int j, const Scalar& v) {
    ScalarVec& r = rows_[i];
    r.axpy(Scalar(1), ScalarVec::unit(j, v - r.get(j)));
  }

  BigradedSpace space_;
  int degree_ = 0;
  std::map<int, ScalarVec> rows_;
};

/// Invariance convention: ⟨l2(a,b),c⟩ = ⟨a,l2(b,c)⟩ and
/// ⟨l1 a,b⟩ = -(-1)^{|a|}⟨a,l1 b⟩, plus graded symmetry of the form.
inline LinfReport check_pairing_invariance(const LInfStructure& L, const InvariantPairing& P,
                                           std::size_t max_violations = 50) {
  LinfReport rep;
  const BigradedSpace& V = L.space();
  auto add = [&](const std::string& s) {
    if (rep.violations.size() < max_violations) rep.violations.push_back(s);
  };
  for (const auto& [i, r] : P.rows())
    for (const auto& [j, v] : r) {
      ++rep.tuples_checked;
      const int sw = (L.parity(i) && L.parity(j)) ? -1 : 1;
      if (P.value(j, i) != v * Scalar(sw))
        add("symmetry " + detail::tuple_name(V, {i, j}) + ": " + v.str() + " vs " + P.value(j, i).str());
      const BiDegree s = V.degree(static_cast<std::size_t>(i)) + V.degree(static_cast<std::size_t>(j));
      if (s != BiDegree(-P.degree(), 0)) add("degree " + detail::tuple_name(V, {i, j}));
    }
  if (L.has_arity(1)) {
    std::set<std::pair<int, int>> pairs;
    for (const auto& [key, out] : L.table(1))
      for (const auto& [k, c] : out)
        for (const auto& [x, v] : P.row(k)) {
          pairs.insert({key[0], x});
          pairs.insert({x, key[0]});
        }
    for (const auto& [a, b] : pairs) {
      ++rep.tuples_checked;
      const Scalar lhs = P.evaluate(L.bracket(std::vector<int>{a}), ScalarVec::unit(b));
      const Scalar rhs = P.evaluate(ScalarVec::unit(a), L.bracket(std::vector<int>{b})) *
                         Scalar(L.parity(a) ? 1 : -1);
      if (lhs != rhs) add("l1 " + detail::tuple_name(V, {a, b}) + ": " + lhs.str() + " vs " + rhs.str());
    }
  }
  if (L.has_arity(2)) {
    // candidate triples: those where either side can be nonzero
    std::set<std::vector<int>> triples;
    const int dim = static_cast<int>(L.dim());
    for (const auto& [key, out] : L.table(2))
      for (const auto& [k, c] : out) {
        for (const auto& [x, v] : P.row(k)) {
          triples.insert({key[0], key[1], x});
          triples.insert({key[1], key[0], x});
        }
        for (int a = 0; a < dim; ++a)
          if (!P.value(a, k).is_zero()) {
            triples.insert({a, key[0], key[1]});
            triples.insert({a, key[1], key[0]});
          }
      }
    for (const auto& t : triples) {
      ++rep.tuples_checked;
      const Scalar lhs = P.evaluate(L.bracket(std::vector<int>{t[0], t[1]}), ScalarVec::unit(t[2]));
      const Scalar rhs = P.evaluate(ScalarVec::unit(t[0]), L.bracket(std::vector<int>{t[1], t[2]}));
      if (lhs != rhs) add("l2 " + detail::tuple_name(V, t) + ": " + lhs.str() + " vs " + rhs.str());
    }
  }
  return rep;
}

struct CotangentResult {
  LInfStructure structure;
  InvariantPairing pairing;
};

/// L ⊕ L^∨[-k] with the coadjoint action and the canonical pairing of
/// degree k (so a dual generator ξ^j sits in degree -|x_j| - k). Only l_1
/// and l_2 are lifted.
inline CotangentResult build_cotangent(const LInfStructure& L, int pairing_degree = -3) {
  for (int n = 3; n <= L.arity_cap(); ++n)
    if (L.has_arity(n)) throw std::invalid_argument("build_cotangent: brackets of arity >= 3 are not supported");
  const std::size_t d = L.dim();
  std::vector<BasisElement> basis = L.space().basis();
  for (const auto& b : L.space().basis())
    basis.push_back({BigradedSpace::dual_name(b.name), BiDegree(-b.degree.cohomological - pairing_degree,
                                                                b.degree.fermionic)});
  CotangentResult r{LInfStructure(BigradedSpace(basis), std::max(2, L.arity_cap())), {}};
  LInfStructure& T = r.structure;
  const int D = static_cast<int>(d);
  auto xi = [&](int j) { return D + j; };
  for (int n = 1; n <= 2; ++n) {
    if (!L.has_arity(n)) continue;
    for (const auto& [key, out] : L.table(n)) T.set_bracket(key, out);
  }
  // [x_i, ξ^j] = Σ_m C^j_{mi} ξ^m with C^j_{mi} the x_j-coefficient of l2(x_m, x_i)
  if (L.has_arity(2)) {
    std::map<std::pair<int, int>, VecBuilder<Scalar>> acc;
    for (int m = 0; m < D; ++m)
      for (int i = 0; i < D; ++i) {
        ScalarVec o = L.bracket(std::vector<int>{m, i});
        for (const auto& [j, c] : o) acc[{i, j}].add(xi(m), c);
      }
    for (auto& [ij, b] : acc) T.set_bracket({ij.first, xi(ij.second)}, b.build());
  }
  // l1 ξ^j = Σ_i -(-1)^{|x_i|} D_{ji} ξ^i, D_{ji} the x_j-coefficient of l1 x_i
  if (L.has_arity(1)) {
    std::map<int, VecBuilder<Scalar>> acc;
    for (int i = 0; i < D; ++i)
      for (const auto& [j, c] : L.bracket(std::vector<int>{i}))
        acc[j].add(xi(i), c * Scalar(L.parity(i) ? 1 : -1));
    for (auto& [j, b] : acc) T.set_bracket({xi(j)}, b.build());
  }
  r.pairing = InvariantPairing(T.space(), pairing_degree);
  for (int i = 0; i < D; ++i) r.pairing.set(i, xi(i), Scalar(1));
  return r;
}

}  // namespace twistalg

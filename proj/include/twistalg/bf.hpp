#pragma once

#include <twistalg/algebra.hpp>
#include <twistalg/ce.hpp>
#include <twistalg/lie.hpp>
#include <twistalg/linf.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

/// ε-parameters of the truncated ring for each supersymmetry variant.
inline std::vector<int> bf_eps_degrees(int variant) {
  switch (variant) {
    case 1: return {};
    case 2: return {1};
    case 4: return {1, -1};
    default: throw std::invalid_argument("build_bf: variant must be 1, 2 or 4 (got " + std::to_string(variant) + ")");
  }
}

/// Holomorphic BF model (g⊗R) ⊕ (g^∨⊗R)[-1] on a truncated polydisc ring R.
/// α(a,p) = X_a⊗m_p, β(a,p) = ξ^a⊗m_p. The β copy of m has degree
/// 1 + |m| - |top|, so the coefficient pairing ⟨α(a,p), β(a,q)⟩ = top(m_p m_q)
/// has degree -1 in every variant; the two collapsed Dolbeault directions
/// account for the nominal degree -3 of the field theory.
struct BFStructure {
  LieAlgebra g;
  int n = 1;
  int variant = 1;
  MonomialAlgebra ring;
  LInfStructure structure;
  InvariantPairing pairing;

  static constexpr int kNominalPairingDegree = -3;
  static constexpr int kModelPairingDegree = -1;

  int ring_dim() const { return static_cast<int>(ring.dim()); }
  int alpha_dim() const { return g.dim() * ring_dim(); }
  int alpha(int a, int p) const { return a * ring_dim() + p; }
  int beta(int a, int p) const { return alpha_dim() + a * ring_dim() + p; }
  bool is_alpha(int i) const { return i < alpha_dim(); }
};

inline BFStructure build_bf(const LieAlgebra& g, int n, int variant, int n2 = -1) {
  BFStructure bf;
  bf.g = g;
  bf.n = n;
  bf.variant = variant;
  bf.ring = polydisc_ring(n, n2 < 0 ? n : n2, bf_eps_degrees(variant));
  const MonomialAlgebra& R = bf.ring;
  const int dr = bf.ring_dim(), dg = g.dim();
  const int top_deg = R.top_index() >= 0 ? R.degree(R.top_index()).cohomological : 0;

  std::vector<BasisElement> basis;
  for (int a = 0; a < dg; ++a)
    for (int p = 0; p < dr; ++p) basis.push_back({g.basis[static_cast<std::size_t>(a)] + "⊗" + R.name(p), R.degree(p)});
  for (int a = 0; a < dg; ++a)
    for (int p = 0; p < dr; ++p)
      basis.push_back({BigradedSpace::dual_name(g.basis[static_cast<std::size_t>(a)]) + "⊗" + R.name(p),
                       BiDegree(1 + R.degree(p).cohomological - top_deg, R.degree(p).fermionic)});
  bf.structure = LInfStructure(BigradedSpace(basis), 3);
  LInfStructure& L = bf.structure;

  for (int a = 0; a < dg; ++a)
    for (int b = 0; b < dg; ++b)
      for (int p = 0; p < dr; ++p)
        for (int q = 0; q < dr; ++q) {
          auto [s, r] = R.product(p, q);
          if (s == 0) continue;
          // [X_a⊗m, X_b⊗m'] = [X_a,X_b]⊗mm'
          if (a < b || (a == b && p < q)) {
            std::vector<ScalarVec::Entry> e;
            for (int c = 0; c < dg; ++c) {
              const Q k = g.structure_constant(a, b, c);
              if (k != 0) e.emplace_back(bf.alpha(c, r), Scalar(k * s));
            }
            if (!e.empty()) L.set_bracket({bf.alpha(a, p), bf.alpha(b, q)}, ScalarVec(std::move(e)));
          }
          // [X_a⊗m, ξ^b⊗m'] = (ad*_{X_a} ξ^b)⊗mm',  ad*_{X_a} ξ^b = Σ_c C^b_{ca} ξ^c
          std::vector<ScalarVec::Entry> e;
          for (int c = 0; c < dg; ++c) {
            const Q k = g.structure_constant(c, a, b);
            if (k != 0) e.emplace_back(bf.beta(c, r), Scalar(k * s));
          }
          if (!e.empty()) L.set_bracket({bf.alpha(a, p), bf.beta(b, q)}, ScalarVec(std::move(e)));
        }

  bf.pairing = InvariantPairing(L.space(), BFStructure::kModelPairingDegree);
  for (int a = 0; a < dg; ++a)
    for (int p = 0; p < dr; ++p)
      for (int q = 0; q < dr; ++q) {
        const int t = R.top_coefficient(p, q);
        if (t != 0) bf.pairing.set(bf.alpha(a, p), bf.beta(a, q), Scalar(t));
      }
  return bf;
}

/// Compares build_bf with build_cotangent(g⊗R, -1), identifying the dual
/// basis vector (X_a⊗m_p)^∨ with ±β(a,q) where m_q is complementary to m_p.
/// Returns the list of mismatches (empty when the structures agree).
inline std::vector<std::string> compare_with_cotangent(const BFStructure& bf) {
  std::vector<std::string> out;
  const LInfStructure gR = tensor(bf.g.as_linf(), bf.ring);
  const CotangentResult ct = build_cotangent(gR, BFStructure::kModelPairingDegree);
  const LInfStructure& C = ct.structure;
  const LInfStructure& B = bf.structure;
  if (C.dim() != B.dim()) return {"dimension " + std::to_string(C.dim()) + " vs " + std::to_string(B.dim())};
  const int A = bf.alpha_dim(), dr = bf.ring_dim();
  // φ: cotangent index -> (bf index, sign)
  std::vector<std::pair<int, int>> phi(C.dim(), {-1, 0});
  for (int i = 0; i < A; ++i) phi[static_cast<std::size_t>(i)] = {i, 1};
  for (int a = 0; a < bf.g.dim(); ++a)
    for (int p = 0; p < dr; ++p)
      for (int q = 0; q < dr; ++q) {
        const int t = bf.ring.top_coefficient(p, q);
        if (t != 0) phi[static_cast<std::size_t>(A + bf.alpha(a, p))] = {bf.beta(a, q), t};
      }
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i].first < 0) {
      out.push_back("no partner for " + C.space()[i].name);
      return out;
    }
    if (C.space().degree(i) != B.space().degree(static_cast<std::size_t>(phi[i].first)))
      out.push_back("degree of " + C.space()[i].name + " vs " + B.space()[static_cast<std::size_t>(phi[i].first)].name);
  }
  auto transport = [&](const ScalarVec& v) {
    VecBuilder<Scalar> b;
    for (const auto& [k, c] : v) b.add(phi[static_cast<std::size_t>(k)].first, c * Scalar(phi[static_cast<std::size_t>(k)].second));
    return b.build();
  };
  std::size_t entries = 0;
  for (int n = 1; n <= 2; ++n) {
    if (!C.has_arity(n)) continue;
    for (const auto& [key, val] : C.table(n)) {
      ++entries;
      std::vector<int> args;
      int sign = 1;
      for (int k : key) {
        args.push_back(phi[static_cast<std::size_t>(k)].first);
        sign *= phi[static_cast<std::size_t>(k)].second;
      }
      if (!(B.bracket(args) * Scalar(sign) == transport(val)))
        out.push_back("l" + std::to_string(n) + detail::tuple_name(C.space(), key));
    }
  }
  std::size_t bf_entries = 0;
  for (int n = 1; n <= 2; ++n)
    if (B.has_arity(n)) bf_entries += B.table(n).size();
  if (bf_entries != entries)
    out.push_back("bracket table sizes " + std::to_string(entries) + " vs " + std::to_string(bf_entries));
  for (const auto& [i, row] : ct.pairing.rows())
    for (const auto& [j, v] : row) {
      const auto [bi, si] = phi[static_cast<std::size_t>(i)];
      const auto [bj, sj] = phi[static_cast<std::size_t>(j)];
      if (bf.pairing.value(bi, bj) * Scalar(si * sj) != v) out.push_back("pairing" + detail::tuple_name(C.space(), {i, j}));
    }
  return out;
}

/// CE cohomology dimensions (ħ = 0) of the BF model, by cohomological degree.
inline std::map<int, std::size_t> local_observables(const LieAlgebra& g, int n, int variant, int sym_cap) {
  const BFStructure bf = build_bf(g, n, variant);
  const CEAlgebra ce(bf.structure, sym_cap);
  return cohomology(ce.complex(), Q(0), false).dims;
}

/// Graded monomial count of Sym^{≤cap} on generators of the given degrees
/// (odd degree = exterior), by total degree.
inline std::map<int, std::size_t> graded_sym_count(const std::vector<int>& degrees, int sym_cap) {
  std::map<int, std::size_t> out;
  // dynamic programme over generators: state (length, degree)
  std::map<std::pair<int, int>, std::size_t> st{{{0, 0}, 1}};
  for (int d : degrees) {
    std::map<std::pair<int, int>, std::size_t> nx;
    const int maxk = (d % 2 != 0) ? 1 : sym_cap;
    for (const auto& [ld, c] : st)
      for (int k = 0; k <= maxk && ld.first + k <= sym_cap; ++k) nx[{ld.first + k, ld.second + k * d}] += c;
    st = std::move(nx);
  }
  for (const auto& [ld, c] : st) out[ld.second] += c;
  return out;
}

/// Independent count for the abelian N=4 model: the CE algebra of
/// g⊗Q[z1,z2]/(z^n)⊗Λ[ε1,ε2,ε3] with |ε1| = 1, |ε2| = -1, |ε3| = 1.
inline std::map<int, std::size_t> n4_abelian_pattern(int dim_g, int n, int sym_cap) {
  std::vector<int> gen_degrees;
  for (int a = 0; a < dim_g; ++a)
    for (int z = 0; z < n * n; ++z)
      for (int mask = 0; mask < 8; ++mask) {
        const int deg = ((mask & 1) ? 1 : 0) + ((mask & 2) ? -1 : 0) + ((mask & 4) ? 1 : 0);
        gen_degrees.push_back(1 - deg);
      }
  return graded_sym_count(gen_degrees, sym_cap);
}

struct MCCase {
  std::string description;
  std::string residual;
  bool residual_zero = false;
  bool flat = false;              // α-part of the residual vanishes
  bool coadjoint_closed = false;  // β-part vanishes
  bool consistent() const { return residual_zero == (flat && coadjoint_closed); }
};

/// MC residuals in (L_BF ⊗ Λ[θ1,θ2], l1 = 0), with θ standing in for the
/// antiholomorphic one-forms so that z·X·θ has degree 1.
inline std::vector<MCCase> mc_solutions_shape(const LieAlgebra& g, int n) {
  const BFStructure bf = build_bf(g, n, 1);
  const MonomialAlgebra theta = exterior_algebra(2);
  const LInfStructure L = tensor(bf.structure, theta);
  const int dt = static_cast<int>(theta.dim());
  auto th = [&](std::vector<std::pair<int, int>> f) {
    Monomial m;
    for (auto& x : f) m.factors.push_back(x);
    return theta.index_of(m);
  };
  const int one = theta.unit_index(), t1 = th({{0, 1}}), t2 = th({{1, 1}});
  auto zmono = [&](int a1, int a2) {
    Monomial m;
    if (a1) m.factors.emplace_back(0, a1);
    if (a2) m.factors.emplace_back(1, a2);
    return bf.ring.index_of(m);
  };
  auto elem = [&](bool beta, int a, int zp, int tp) { return (beta ? bf.beta(a, zp) : bf.alpha(a, zp)) * dt + tp; };

  std::vector<std::pair<std::string, ScalarVec>> inputs;
  auto basis_index = [&](const std::string& nm) {
    for (int a = 0; a < g.dim(); ++a)
      if (g.basis[static_cast<std::size_t>(a)] == nm) return a;
    return -1;
  };
  inputs.push_back({"χ=0", ScalarVec()});
  if (g.dim() > 0) inputs.push_back({"α=0, β=" + g.basis[0] + "^∨⊗1", ScalarVec::unit(elem(true, 0, zmono(0, 0), one))});
  const int e = basis_index("e"), f = basis_index("f");
  if (e >= 0 && f >= 0 && n >= 2) {
    inputs.push_back({"α=z1·e·θ1", ScalarVec::unit(elem(false, e, zmono(1, 0), t1))});
    inputs.push_back({"α=z1·e·θ1+z2·f·θ2",
                      ScalarVec::unit(elem(false, e, zmono(1, 0), t1)) + ScalarVec::unit(elem(false, f, zmono(0, 1), t2))});
    inputs.push_back({"α=z1·e·θ1, β=f^∨⊗1",
                      ScalarVec::unit(elem(false, e, zmono(1, 0), t1)) + ScalarVec::unit(elem(true, f, zmono(0, 0), one))});
    inputs.push_back({"α=z1·e·θ1, β=e^∨⊗1",
                      ScalarVec::unit(elem(false, e, zmono(1, 0), t1)) + ScalarVec::unit(elem(true, e, zmono(0, 0), one))});
  }
  std::vector<MCCase> out;
  for (const auto& [desc, chi] : inputs) {
    ScalarVec r = mc_residual(L, chi);
    MCCase c;
    c.description = desc;
    c.residual = render(L.space(), r);
    c.residual_zero = r.empty();
    c.flat = c.coadjoint_closed = true;
    for (const auto& [k, v] : r) {
      if (bf.is_alpha(k / dt)) c.flat = false;
      else c.coadjoint_closed = false;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace twistalg

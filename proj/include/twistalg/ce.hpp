#pragma once

#include <twistalg/complex.hpp>
#include <twistalg/linf.hpp>
#include <twistalg/polynomial.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

/// Chevalley–Eilenberg cochains Sym(L^∨[-1]) truncated at sym_cap. The
/// generator t^i dual to x_i has degree (1 - |x_i|, f_i); the differential
/// is read off from the Maurer–Cartan element χ = Σ t^i ⊗ x_i:
/// d t^k = -(x_k-coefficient of Σ_n l_n(χ,…,χ)/n!).
/// Since d never lowers word length, truncation gives a quotient complex.
class CEAlgebra {
 public:
  CEAlgebra(LInfStructure base, int sym_cap) : base_(std::move(base)), cap_(sym_cap) {
    if (sym_cap < 0) throw std::invalid_argument("ce_cochains: sym_cap must be >= 0");
    const auto& V = base_.space();
    for (std::size_t i = 0; i < V.dim(); ++i) {
      const BiDegree d = V.degree(i);
      alg_.add_generator(static_cast<int>(i), {BigradedSpace::dual_name(V[i].name),
                                               BiDegree(1 - d.cohomological, d.fermionic)});
    }
    build_generator_differentials();
    std::vector<int> gens;
    for (std::size_t i = 0; i < V.dim(); ++i) gens.push_back(static_cast<int>(i));
    for (auto& m : alg_.monomials(gens, 0, cap_)) {
      const int k = alg_.degree(m).cohomological;
      auto& list = by_degree_[k];
      location_[m] = {k, list.size()};
      list.push_back(std::move(m));
    }
    assemble();
    if (auto bad = complex_.square_zero_violation())
      throw std::logic_error("ce_cochains: " + *bad);
  }

  const LInfStructure& base() const { return base_; }
  int sym_cap() const { return cap_; }
  const GradedAlgebra& algebra() const { return alg_; }
  const CochainComplex& complex() const { return complex_; }
  const std::map<int, std::vector<Monomial>>& basis_by_degree() const { return by_degree_; }
  const Poly& generator_differential(int k) const { return dgen_.at(static_cast<std::size_t>(k)); }

  std::optional<std::pair<int, std::size_t>> locate(const Monomial& m) const {
    auto it = location_.find(m);
    if (it == location_.end()) return std::nullopt;
    return it->second;
  }

  Poly d(const Poly& p) const {
    return apply_derivation(alg_, [this](int g) { return dgen_[static_cast<std::size_t>(g)]; }, 1, p, cap_);
  }
  Poly product(const Poly& a, const Poly& b) const { return multiply(alg_, a, b, cap_); }

  /// Failures of d(ab) = (da)b + (-1)^{|a|} a(db) over pairs of basis
  /// monomials whose product survives truncation.
  std::vector<std::string> derivation_violations(std::size_t limit = 20) const {
    std::vector<std::string> out;
    std::vector<const Monomial*> all;
    for (const auto& [k, list] : by_degree_)
      for (const auto& m : list) all.push_back(&m);
    for (const Monomial* a : all)
      for (const Monomial* b : all) {
        if (a->length() + b->length() > cap_) continue;
        Poly pa = Poly::monomial(*a), pb = Poly::monomial(*b);
        Poly lhs = d(product(pa, pb));
        Poly rhs = product(d(pa), pb);
        rhs.add(product(pa, d(pb)), Scalar(alg_.parity(*a) ? -1 : 1));
        // terms longer than the cap are dropped on both sides
        if (!(lhs.truncated(cap_) == rhs.truncated(cap_))) {
          out.push_back(alg_.name(*a) + " · " + alg_.name(*b));
          if (out.size() >= limit) return out;
        }
      }
    return out;
  }

  /// Coordinates of a polynomial in the degree-k basis.
  ScalarVec coordinates(const Poly& p, int k) const {
    VecBuilder<Scalar> b;
    for (const auto& [m, c] : p.terms()) {
      auto loc = locate(m);
      if (!loc) continue;
      if (loc->first != k) throw std::invalid_argument("CEAlgebra: element is not homogeneous of degree " + std::to_string(k));
      b.add(static_cast<int>(loc->second), c);
    }
    return b.build();
  }

 private:
  void build_generator_differentials() {
    dgen_.assign(base_.dim(), Poly());
    Q fact(1);
    for (int n = 1; n <= base_.arity_cap(); ++n) {
      fact *= n;
      if (!base_.has_arity(n)) continue;
      // Σ over ordered tuples (i_1..i_n) of t^{i_1}…t^{i_n} ⊗ l_n(x_{i_1},…,x_{i_n}) with the
      // sign of moving each t past the x's to its left, and of moving l_n past all t's.
      const Q inv = Q(1) / fact;
      auto visit = [&](const std::vector<int>& tuple) {
        ScalarVec out = base_.bracket(tuple);
        if (out.empty()) return;
        int sign = 1;
        int tpar = 0;
        for (std::size_t q = 0; q < tuple.size(); ++q) {
          const int tq = alg_.parity(tuple[q]);
          tpar += tq;
          for (std::size_t p = 0; p < q; ++p)
            if (base_.parity(tuple[p]) && tq) sign = -sign;
        }
        if (((2 - n) % 2 != 0) && (tpar % 2)) sign = -sign;
        auto mono = alg_.normal_order(tuple);
        if (!mono) return;
        sign *= mono->first;
        for (const auto& [k, c] : out)
          dgen_[static_cast<std::size_t>(k)].add(mono->second, c * Scalar(-inv * sign));
      };
      // every ordered tuple with a nonzero bracket is a permutation of a table key
      for (const auto& [key, out] : base_.table(n)) {
        std::vector<int> perm = key;
        do visit(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }

  void assemble() {
    for (const auto& [k, list] : by_degree_) {
      std::vector<BasisElement> b;
      for (const auto& m : list) b.push_back({alg_.name(m), alg_.degree(m)});
      complex_.set_piece(k, BigradedSpace(std::move(b)));
    }
    for (const auto& [k, list] : by_degree_) {
      if (!by_degree_.count(k + 1)) continue;
      GradedMap dk(complex_.piece(k), complex_.piece(k + 1), BiDegree(1, 0));
      bool any = false;
      for (std::size_t j = 0; j < list.size(); ++j) {
        Poly img = d(Poly::monomial(list[j]));
        if (img.is_zero()) continue;
        dk.set_column(j, coordinates(img, k + 1));
        any = true;
      }
      if (any) complex_.set_differential(k, std::move(dk));
    }
  }

  LInfStructure base_;
  int cap_;
  GradedAlgebra alg_;
  std::vector<Poly> dgen_;
  std::map<int, std::vector<Monomial>> by_degree_;
  std::map<Monomial, std::pair<int, std::size_t>> location_;
  CochainComplex complex_;
};

inline CEAlgebra ce_cochains(const LInfStructure& L, int sym_cap) { return CEAlgebra(L, sym_cap); }

}  // namespace twistalg

#pragma once

#include <twistalg/complex.hpp>
#include <twistalg/polynomial.hpp>
#include <twistalg/sparse.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace twistalg {

/// Sites {a,…,b} of the unit lattice; interior {a+1,…,b-1}.
struct LatticeInterval {
  int a = 0, b = 2;
  LatticeInterval() = default;
  LatticeInterval(int lo, int hi) : a(lo), b(hi) {
    if (hi - lo < 2) throw std::invalid_argument("LatticeInterval: need b - a >= 2 (nonempty interior)");
  }
  int sites() const { return b - a + 1; }
  int interior() const { return b - a - 1; }
  bool contains_site(int x) const { return x >= a && x <= b; }
  bool contains(const LatticeInterval& o) const { return a <= o.a && o.b <= b; }
  bool disjoint(const LatticeInterval& o) const { return b < o.a || o.b < a; }
  std::string str() const { return "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }
  friend bool operator==(const LatticeInterval&, const LatticeInterval&) = default;
};

// Generators: a_x (degree 0, the value functional at site x) and, for
// interior x, b_x (degree -1). Codes are global, so inclusion of intervals
// is the identity on polynomials.
inline int site_code(int x) { return 2 * x; }
inline int interior_code(int x) { return 2 * x + 1; }
inline bool is_site_code(int c) { return c % 2 == 0; }
inline int code_site(int c) { return c >= 0 ? c / 2 : -((-c + 1) / 2); }

/// Sign of the pairing {a_x, b_x}. With this choice the factorization
/// commutator of p (left) and q (right) is +ħ.
inline constexpr int kFreeFieldPairingSign = 1;

/// Two-term lattice field complex: functions on sites → functions on the
/// interior by the second difference. Returns (dim H^0, dim H^1).
inline std::pair<std::size_t, std::size_t> field_complex_cohomology(const LatticeInterval& I) {
  std::vector<QVec> cols;
  for (int x = I.a; x <= I.b; ++x) {
    VecBuilder<Q> v;
    for (int j = x - 1; j <= x + 1; ++j)
      if (j > I.a && j < I.b) v.add(j, j == x ? Q(-2) : Q(1));
    cols.push_back(v.build());
  }
  const std::size_t r = rank_of(cols);
  return {static_cast<std::size_t>(I.sites()) - r, static_cast<std::size_t>(I.interior()) - r};
}

struct Observable {
  LatticeInterval support;
  Poly value;
};

/// Polynomial in abstract p, q: (i, j) ↦ coefficient of q^i p^j.
using PQPoly = std::map<std::pair<int, int>, Q>;

/// Element of H*(Obs^q) written in the basis ħ^k q^i p^j: (k, i, j) ↦ coefficient.
using WeylElement = std::map<std::tuple<int, int, int>, Q>;

inline std::string render_weyl(const WeylElement& w) {
  if (w.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [kij, c] : w) {
    const auto [k, i, j] = kij;
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (k) os << "*ħ" << (k > 1 ? "^" + std::to_string(k) : "");
    if (i) os << "*q" << (i > 1 ? "^" + std::to_string(i) : "");
    if (j) os << "*p" << (j > 1 ? "^" + std::to_string(j) : "");
  }
  return os.str();
}

/// Observables of the free scalar field on a lattice interval: Sym of the
/// generators up to sym_cap, classical differential d b_x = a_{x+1} - 2a_x + a_{x-1},
/// BV operator Δ, quantum differential d + ħΔ with ħ truncated at hbar_cap.
class FreeField {
 public:
  FreeField(LatticeInterval I, int sym_cap, int hbar_cap = kDefaultHbarCap)
      : I_(I), cap_(sym_cap), hcap_(hbar_cap) {
    if (sym_cap < 1) throw std::invalid_argument("FreeField: sym_cap must be >= 1");
    if (hbar_cap < 1 || hbar_cap > kDefaultHbarCap)
      throw std::invalid_argument("FreeField: ħ cap must be in [1, " + std::to_string(kDefaultHbarCap) + "]");
    for (int x = I.a; x <= I.b; ++x) {
      alg_.add_generator(site_code(x), {"a" + std::to_string(x), BiDegree(0, 0)});
      if (x > I.a && x < I.b) alg_.add_generator(interior_code(x), {"b" + std::to_string(x), BiDegree(-1, 0)});
    }
    std::vector<int> gens;
    for (const auto& [c, g] : alg_.generators()) gens.push_back(c);
    for (auto& m : alg_.monomials(gens, 0, cap_)) {
      const int k = alg_.degree(m).cohomological;
      auto& list = by_degree_[k];
      location_[m] = {k, list.size()};
      list.push_back(std::move(m));
    }
  }

  const LatticeInterval& interval() const { return I_; }
  int sym_cap() const { return cap_; }
  int hbar_cap() const { return hcap_; }
  const GradedAlgebra& algebra() const { return alg_; }
  const std::map<int, std::vector<Monomial>>& basis_by_degree() const { return by_degree_; }

  Poly unit() const { return Poly::unit(Scalar(Q(1), hcap_)); }
  Poly a(int x) const {
    check_site(x);
    return Poly::generator(site_code(x), Scalar(Q(1), hcap_));
  }
  Poly b(int x) const {
    if (!(x > I_.a && x < I_.b)) throw std::out_of_range("FreeField: b_x needs an interior site");
    return Poly::generator(interior_code(x), Scalar(Q(1), hcap_));
  }
  /// Position observable supported at {x0, x0+1}: the affine extrapolation
  /// of the field to site 0, so that every placement gives the same class.
  Poly q_observable(int x0) const { return a(x0) - p_observable(x0) * Scalar(Q(x0), hcap_); }
  /// Momentum observable: forward difference at x0.
  Poly p_observable(int x0) const {
    check_site(x0);
    if (x0 + 1 > I_.b) throw std::out_of_range("p_observable: x0 + 1 lies outside the interval");
    return a(x0 + 1) - a(x0);
  }
  /// Σ c q^i p^j placed at x0.
  Poly place(const PQPoly& f, int x0) const {
    Poly out;
    const Poly q = q_observable(x0), p = p_observable(x0);
    for (const auto& [ij, c] : f) {
      Poly term = unit();
      for (int k = 0; k < ij.first; ++k) term = multiply(alg_, term, q);
      for (int k = 0; k < ij.second; ++k) term = multiply(alg_, term, p);
      out.add(term, Scalar(c, hcap_));
    }
    return out;
  }

  Poly product(const Poly& x, const Poly& y) const { return multiply(alg_, x, y); }

  Poly d_classical(const Poly& p) const {
    return apply_derivation(
        alg_,
        [this](int c) {
          if (is_site_code(c)) return Poly();
          const int x = code_site(c);
          Poly r;
          r.add(Monomial{{{site_code(x - 1), 1}}}, Scalar(Q(1), hcap_));
          r.add(Monomial{{{site_code(x), 1}}}, Scalar(Q(-2), hcap_));
          r.add(Monomial{{{site_code(x + 1), 1}}}, Scalar(Q(1), hcap_));
          return r;
        },
        1, p);
  }

  /// {f, g} on generators in the convention where {x, -} is a derivation of
  /// degree |x|+1: {a_x, b_x} = s, {b_x, a_x} = -s.
  int generator_bracket(int f, int g) const {
    if (code_site(f) != code_site(g)) return 0;
    if (is_site_code(f) && !is_site_code(g)) return kFreeFieldPairingSign;
    if (!is_site_code(f) && is_site_code(g)) return -kFreeFieldPairingSign;
    return 0;
  }

  /// BV operator: Δ(f_1…f_m) = Σ_{p<q} ε_{pq} (-1)^{|f_p|} {f_p, f_q} · (rest),
  /// ε_{pq} the Koszul sign of bringing f_p f_q to the front.
  Poly bv_laplacian(const Poly& p) const {
    Poly out;
    for (const auto& [m, c] : p.terms()) {
      const std::vector<int> f = m.expanded();
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
          const int br = generator_bracket(f[i], f[j]);
          if (br == 0) continue;
          int sign = br * (alg_.parity(f[i]) ? -1 : 1);
          // move f_i to the front, then f_j to second place
          for (std::size_t k = 0; k < i; ++k)
            if (alg_.parity(f[k]) && alg_.parity(f[i])) sign = -sign;
          for (std::size_t k = 0; k < j; ++k)
            if (k != i && alg_.parity(f[k]) && alg_.parity(f[j])) sign = -sign;
          std::vector<int> rest;
          for (std::size_t k = 0; k < f.size(); ++k)
            if (k != i && k != j) rest.push_back(f[k]);
          out.add(Monomial::from_sorted(rest), c * Scalar(sign));
        }
    }
    return out;
  }

  Poly d_quantum(const Poly& p) const {
    Poly out = d_classical(p);
    out.add(bv_laplacian(p), Scalar::hbar(1, hcap_));
    return out;
  }

  /// Degree-one bracket extended as a biderivation from the generator
  /// pairing, multiplied by (-1)^{|x|}. In this normalization
  /// d1(xy) - (d1 x)y - (-1)^{|x|} x(d1 y) = {x, y} for the ħ-linear part d1.
  Poly bracket(const Poly& x, const Poly& y) const {
    Poly out;
    for (const auto& [mx, cx] : x.terms())
      for (const auto& [my, cy] : y.terms()) {
        const std::vector<int> f = mx.expanded(), g = my.expanded();
        const int px = alg_.parity(mx);
        for (std::size_t i = 0; i < f.size(); ++i)
          for (std::size_t j = 0; j < g.size(); ++j) {
            const int br = generator_bracket(f[i], g[j]);
            if (br == 0) continue;
            int sign = br * (px ? -1 : 1);
            for (std::size_t k = i + 1; k < f.size(); ++k)
              if (alg_.parity(f[k]) && alg_.parity(f[i])) sign = -sign;
            for (std::size_t k = 0; k < j; ++k)
              if (alg_.parity(g[k]) && alg_.parity(g[j])) sign = -sign;
            std::vector<int> word;
            for (std::size_t k = 0; k < f.size(); ++k)
              if (k != i) word.push_back(f[k]);
            for (std::size_t k = 0; k < g.size(); ++k)
              if (k != j) word.push_back(g[k]);
            auto no = alg_.normal_order(word);
            if (!no) continue;
            out.add(no->second, cx * cy * Scalar(sign * no->first));
          }
      }
    return out;
  }

  std::optional<std::pair<int, std::size_t>> locate(const Monomial& m) const {
    auto it = location_.find(m);
    if (it == location_.end()) return std::nullopt;
    return it->second;
  }

  /// Complex at a rational value of ħ (ħ = 0 is the classical complex).
  CochainComplex complex_at(const Q& hbar) const {
    CochainComplex c;
    for (const auto& [k, list] : by_degree_) c.set_piece(k, piece_space(list));
    for (const auto& [k, list] : by_degree_) {
      if (!by_degree_.count(k + 1)) continue;
      GradedMap d(c.piece(k), c.piece(k + 1), BiDegree(1, 0));
      for (std::size_t j = 0; j < list.size(); ++j) {
        Poly img = d_quantum(Poly::monomial(list[j], Scalar(Q(1), hcap_)));
        VecBuilder<Scalar> v;
        for (const auto& [m, s] : img.terms()) {
          auto loc = locate(m);
          if (!loc || loc->first != k + 1) throw std::logic_error("FreeField: differential leaves the truncation");
          v.add(static_cast<int>(loc->second), Scalar(s.at(hbar)));
        }
        d.set_column(j, v.build());
      }
      c.set_differential(k, std::move(d));
    }
    return c;
  }

  /// Dimensions of H* at ħ = hbar, from ranks only.
  std::map<int, std::size_t> cohomology_dims(const Q& hbar) const {
    std::map<int, std::size_t> ranks;
    for (const auto& [k, list] : by_degree_) {
      if (!by_degree_.count(k + 1)) continue;
      Echelon e;
      for (const auto& m : list) {
        Poly img = d_quantum(Poly::monomial(m, Scalar(Q(1), hcap_)));
        VecBuilder<Q> v;
        for (const auto& [mm, s] : img.terms()) v.add(static_cast<int>(locate(mm)->second), s.at(hbar));
        e.insert(v.build());
      }
      ranks[k] = e.rank();
    }
    std::map<int, std::size_t> out;
    for (const auto& [k, list] : by_degree_) out[k] = list.size() - ranks[k] - ranks[k - 1];
    return out;
  }

  // ħ-adic complex over Q: basis (monomial, ħ^k), k < hbar_cap.
  int adic_index(std::size_t mono, int k) const { return static_cast<int>(mono) * hcap_ + k; }

  QVec adic_vector(const Poly& p, int degree) const {
    VecBuilder<Q> v;
    for (const auto& [m, s] : p.terms()) {
      auto loc = locate(m);
      if (!loc) throw std::out_of_range("FreeField: monomial outside the truncation");
      if (loc->first != degree) throw std::invalid_argument("FreeField: element is not of degree " + std::to_string(degree));
      for (int k = 0; k < hcap_; ++k) v.add(adic_index(loc->second, k), s.coeff(k));
    }
    return v.build();
  }

  /// Class coordinates of a degree-0 cocycle in the basis ħ^k q^i p^j at
  /// the left end of the interval. Throws if the element is not a cocycle.
  WeylElement class_of(const Poly& x) const {
    if (!d_quantum(x).is_zero()) throw std::invalid_argument("class_of: element is not closed");
    const Reducer& r = reducer();
    auto coords = r.reducer.coordinates(adic_vector(x, 0));
    if (!coords) throw std::logic_error("class_of: element outside the span of image and class basis");
    WeylElement w;
    for (const auto& [idx, c] : *coords) w[r.labels[static_cast<std::size_t>(idx)]] = c;
    return w;
  }

  std::size_t class_basis_size() const { return reducer().labels.size(); }
  std::size_t class_basis_independent() const { return reducer().reducer.representatives_independent(); }

 private:
  void check_site(int x) const {
    if (!I_.contains_site(x)) throw std::out_of_range("FreeField: site " + std::to_string(x) + " outside " + I_.str());
  }

  BigradedSpace piece_space(const std::vector<Monomial>& list) const {
    std::vector<BasisElement> b;
    b.reserve(list.size());
    for (const auto& m : list) b.push_back({alg_.name(m), alg_.degree(m)});
    return BigradedSpace(std::move(b));
  }

  struct Reducer {
    QuotientReducer reducer;
    std::vector<std::tuple<int, int, int>> labels;
  };

  const Reducer& reducer() const {
    if (!reducer_) {
      std::vector<QVec> image;
      auto it = by_degree_.find(-1);
      if (it != by_degree_.end())
        for (const auto& m : it->second)
          for (int k = 0; k < hcap_; ++k)
            image.push_back(adic_vector(d_quantum(Poly::monomial(m, Scalar::hbar(k, hcap_))), 0));
      std::vector<QVec> reps;
      std::vector<std::tuple<int, int, int>> labels;
      for (int k = 0; k < hcap_; ++k)
        for (int n = 0; n <= cap_; ++n)
          for (int i = n; i >= 0; --i) {
            PQPoly f{{{i, n - i}, Q(1)}};
            Poly x = place(f, I_.a);
            reps.push_back(adic_vector(x, 0) * Q(1));
            // multiply by ħ^k: shift the ħ index
            QVec shifted;
            {
              std::vector<QVec::Entry> e;
              for (const auto& [idx, c] : reps.back())
                if (idx % hcap_ + k < hcap_) e.emplace_back(idx + k, c);
              shifted = QVec(std::move(e));
            }
            reps.back() = std::move(shifted);
            labels.emplace_back(k, i, n - i);
          }
      reducer_.emplace(Reducer{QuotientReducer(image, reps), std::move(labels)});
    }
    return *reducer_;
  }

  LatticeInterval I_;
  int cap_, hcap_;
  GradedAlgebra alg_;
  std::map<int, std::vector<Monomial>> by_degree_;
  std::map<Monomial, std::pair<int, std::size_t>> location_;
  mutable std::optional<Reducer> reducer_;
};

/// Linear observables: (dim H^0, dim H^{-1}) of Sym^1 with the classical differential.
inline std::pair<std::size_t, std::size_t> linear_observable_cohomology(const LatticeInterval& I) {
  // d: span{b_x} → span{a_x} is the transpose of the second difference
  std::vector<QVec> cols;
  for (int x = I.a + 1; x < I.b; ++x) {
    VecBuilder<Q> v;
    v.add(x - 1 - I.a, Q(1));
    v.add(x - I.a, Q(-2));
    v.add(x + 1 - I.a, Q(1));
    cols.push_back(v.build());
  }
  const std::size_t r = rank_of(cols);
  return {static_cast<std::size_t>(I.sites()) - r, static_cast<std::size_t>(I.interior()) - r};
}

inline void require_within(const Observable& o, const LatticeInterval& U) {
  for (const auto& [m, c] : o.value.terms())
    for (const auto& [g, e] : m.factors) {
      const int x = code_site(g);
      const bool ok = is_site_code(g) ? U.contains_site(x) : (x > U.a && x < U.b);
      if (!ok) throw std::invalid_argument("observable uses a generator outside " + U.str());
    }
}

/// Extension by zero along U ⊆ V; the identity on polynomials in global codes.
inline Observable include(const Observable& o, const LatticeInterval& V) {
  if (!V.contains(o.support)) throw std::invalid_argument("include: " + o.support.str() + " is not contained in " + V.str());
  require_within(o, o.support);
  return {V, o.value};
}

inline Observable factorization_product(const FreeField& on_v, const std::vector<Observable>& parts) {
  const LatticeInterval& V = on_v.interval();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!V.contains(parts[i].support))
      throw std::invalid_argument("factorization_product: " + parts[i].support.str() + " is not inside " + V.str());
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (!parts[i].support.disjoint(parts[j].support))
        throw std::invalid_argument("factorization_product: " + parts[i].support.str() + " and " +
                                    parts[j].support.str() + " overlap");
  }
  Poly out = on_v.unit();
  for (const auto& o : parts) out = on_v.product(out, include(o, V).value);
  return {V, out};
}

inline QVec weyl_vector(const WeylElement& w) {
  VecBuilder<Q> v;
  for (const auto& [kij, c] : w) {
    const auto [k, i, j] = kij;
    v.add((k * 64 + i) * 64 + j, c);
  }
  return v.build();
}

inline WeylElement lift(const PQPoly& f) {
  WeylElement w;
  for (const auto& [ij, c] : f)
    if (!is_zero(c)) w[{0, ij.first, ij.second}] = c;
  return w;
}

/// A polynomial supported on U ⊆ V whose class in H(V) is w. Exists because
/// H(U) → H(V) is an isomorphism; the preimage is solved for exactly.
inline Poly local_representative(const FreeField& on_v, const LatticeInterval& U, const WeylElement& w) {
  const FreeField on_u(U, on_v.sym_cap(), on_v.hbar_cap());
  const int K = on_v.hbar_cap();
  std::vector<Poly> basis;
  std::vector<QVec> images;
  for (int k = 0; k < K; ++k)
    for (int n = 0; n <= on_v.sym_cap(); ++n)
      for (int i = n; i >= 0; --i) {
        Poly x = on_u.place({{{i, n - i}, Q(1)}}, U.a) * Scalar::hbar(k, K);
        images.push_back(weyl_vector(on_v.class_of(x)));
        basis.push_back(std::move(x));
      }
  const QuotientReducer solve({}, images);
  auto coords = solve.coordinates(weyl_vector(w));
  if (!coords) throw std::invalid_argument("local_representative: class not reachable from " + U.str());
  Poly out;
  for (const auto& [idx, c] : *coords) out.add(basis[static_cast<std::size_t>(idx)], Scalar(c, K));
  return out;
}

/// Class of A_L·B_R with A represented on [x, x+2] and B on [x+3, x+5].
inline WeylElement ordered_product_class(const FreeField& on_v, const WeylElement& A, const WeylElement& B,
                                         std::optional<int> left = {}) {
  const LatticeInterval& V = on_v.interval();
  const int x = left.value_or(V.a);
  if (x < V.a || x + 5 > V.b)
    throw std::invalid_argument("weyl_commutator: " + V.str() + " cannot hold [" + std::to_string(x) + "," +
                                std::to_string(x + 5) + "] (needs at least 6 sites)");
  const LatticeInterval U1(x, x + 2), U2(x + 3, x + 5);
  const Observable a{U1, local_representative(on_v, U1, A)}, b{U2, local_representative(on_v, U2, B)};
  return on_v.class_of(factorization_product(on_v, {a, b}).value);
}

inline WeylElement weyl_difference(WeylElement a, const WeylElement& b) {
  for (const auto& [kij, c] : b) a[kij] -= c;
  std::erase_if(a, [](const auto& e) { return is_zero(e.second); });
  return a;
}

/// [A, B] = class(A_L B_R) - class(B_L A_R).
inline WeylElement weyl_commutator(const FreeField& on_v, const WeylElement& A, const WeylElement& B,
                                   std::optional<int> left = {}) {
  return weyl_difference(ordered_product_class(on_v, A, B, left), ordered_product_class(on_v, B, A, left));
}
inline WeylElement weyl_commutator(const FreeField& on_v, const PQPoly& A, const PQPoly& B, std::optional<int> left = {}) {
  return weyl_commutator(on_v, lift(A), lift(B), left);
}

/// ½ ħ^{-1} [p², A]; the ħ-division is exact or an error. The result is
/// known to one ħ power less than the cap.
inline WeylElement hamiltonian(const FreeField& on_v, const PQPoly& A, std::optional<int> left = {}) {
  const WeylElement c = weyl_commutator(on_v, PQPoly{{{0, 2}, Q(1)}}, A, left);
  WeylElement out;
  for (const auto& [kij, v] : c) {
    const auto [k, i, j] = kij;
    if (k == 0) throw std::domain_error("hamiltonian: [p², A] is not divisible by ħ");
    out[{k - 1, i, j}] = v / 2;
  }
  return out;
}

inline WeylElement truncate_hbar(WeylElement w, int below) {
  std::erase_if(w, [&](const auto& e) { return std::get<0>(e.first) >= below; });
  return w;
}

struct D1Report {
  std::size_t pairs = 0;
  std::size_t nonzero_deviations = 0;
  std::vector<std::string> witnesses;
};

/// {a,b}^{d1} = d1(ab) - (d1 a)b - (-1)^{|a|} a(d1 b) against the classical
/// bracket, over all ordered pairs of linear generators (plus the unit).
inline D1Report d1_bracket_check(const FreeField& ff) {
  D1Report rep;
  std::vector<Poly> gens{ff.unit()};
  for (const auto& [c, g] : ff.algebra().generators()) gens.push_back(Poly::generator(c, Scalar(Q(1), ff.hbar_cap())));
  auto d1 = [&](const Poly& p) { return ff.bv_laplacian(p); };
  auto parity = [&](const Poly& p) {
    for (const auto& [m, c] : p.terms()) return ff.algebra().parity(m);
    return 0;
  };
  for (const auto& x : gens)
    for (const auto& y : gens) {
      ++rep.pairs;
      Poly lhs = d1(ff.product(x, y));
      lhs -= ff.product(d1(x), y);
      lhs.add(ff.product(x, d1(y)), Scalar(parity(x) ? 1 : -1));
      Poly dev = lhs - ff.bracket(x, y);
      if (!dev.is_zero()) {
        ++rep.nonzero_deviations;
        if (rep.witnesses.size() < 10)
          rep.witnesses.push_back("{" + x.str(ff.algebra()) + ", " + y.str(ff.algebra()) + "}: " + dev.str(ff.algebra()));
      }
    }
  return rep;
}

/// Two-variable monomial count of degree ≤ s.
inline std::size_t pbw_count(int s) { return static_cast<std::size_t>((s + 1) * (s + 2) / 2); }

/// Rank of the inclusion H(U) → H(V) on the class basis of U (ħ-adic).
inline std::size_t inclusion_rank(const FreeField& on_u, const FreeField& on_v) {
  if (!on_v.interval().contains(on_u.interval())) throw std::invalid_argument("inclusion_rank: U ⊄ V");
  std::vector<QVec> images;
  const int K = on_u.hbar_cap();
  for (int k = 0; k < K; ++k)
    for (int n = 0; n <= on_u.sym_cap(); ++n)
      for (int i = n; i >= 0; --i) {
        Poly x = on_u.place({{{i, n - i}, Q(1)}}, on_u.interval().a);
        x = on_u.product(x, Poly::unit(Scalar::hbar(k, K)));
        images.push_back(weyl_vector(on_v.class_of(x)));
      }
  return rank_of(images);
}

}  // namespace twistalg

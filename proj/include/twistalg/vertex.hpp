#pragma once

#include <twistalg/bf.hpp>
#include <twistalg/ce.hpp>
#include <twistalg/complex.hpp>
#include <twistalg/lie.hpp>
#include <twistalg/polynomial.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

using Exp2 = std::array<int, 2>;
/// Polynomial or Laurent polynomial in z1, z2: exponent pair ↦ coefficient.
using ZPoly = std::map<Exp2, Q>;

inline ZPoly zmono(int a, int b, const Q& c = Q(1)) { return {{Exp2{a, b}, c}}; }

inline ZPoly zmul(const ZPoly& f, const ZPoly& g) {
  ZPoly out;
  for (const auto& [a, x] : f)
    for (const auto& [b, y] : g) out[{a[0] + b[0], a[1] + b[1]}] += x * y;
  std::erase_if(out, [](const auto& e) { return is_zero(e.second); });
  return out;
}

inline std::string render_z(const ZPoly& f, const std::string& var = "z") {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (int i = 0; i < 2; ++i)
      if (e[static_cast<std::size_t>(i)] != 0) {
        os << "*" << var << (i + 1);
        if (e[static_cast<std::size_t>(i)] != 1) os << "^" << e[static_cast<std::size_t>(i)];
      }
  }
  return os.str();
}

inline Q factorial(const Exp2& m) { return factorial(m[0]) * factorial(m[1]); }
inline Q binomial(const Exp2& n, const Exp2& k) { return binomial(n[0], k[0]) * binomial(n[1], k[1]); }
inline Exp2 operator+(const Exp2& a, const Exp2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Exp2 operator-(const Exp2& a, const Exp2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline int total(const Exp2& m) { return m[0] + m[1]; }

/// Exponents 0 ≤ e ≤ m componentwise.
inline std::vector<Exp2> below(const Exp2& m) {
  std::vector<Exp2> out;
  for (int i = 0; i <= m[0]; ++i)
    for (int j = 0; j <= m[1]; ++j) out.push_back({i, j});
  return out;
}

/// Monomials z1^i z2^j with i + j ≤ d.
inline std::vector<Exp2> monomials_up_to(int d) {
  std::vector<Exp2> out;
  for (int n = 0; n <= d; ++n)
    for (int i = n; i >= 0; --i) out.push_back({i, n - i});
  return out;
}

/// Cohomology model of the punctured polydisc: H0 = polynomials of degree
/// ≤ D, H1 = span of z1^{-a} z2^{-b} with 1 ≤ a, b ≤ D (degree 1).
struct AnnulusModel {
  int D = 1;
  std::vector<Exp2> h0, h1;

  /// H0·H0, truncated to degree ≤ D.
  ZPoly multiply0(const ZPoly& f, const ZPoly& g) const {
    ZPoly out = zmul(f, g);
    std::erase_if(out, [&](const auto& e) { return total(e.first) > D || e.first[0] < 0 || e.first[1] < 0; });
    return out;
  }
  /// H0 acting on H1: terms with a nonnegative exponent are exact and dropped.
  ZPoly act(const ZPoly& f, const ZPoly& h) const {
    ZPoly out = zmul(f, h);
    std::erase_if(out, [&](const auto& e) {
      return e.first[0] >= 0 || e.first[1] >= 0 || e.first[0] < -D || e.first[1] < -D;
    });
    return out;
  }
};

inline AnnulusModel annulus_model(int D) {
  if (D < 1) throw std::invalid_argument("annulus_model: D must be >= 1");
  AnnulusModel m;
  m.D = D;
  m.h0 = monomials_up_to(D);
  for (int a = 1; a <= D; ++a)
    for (int b = 1; b <= D; ++b) m.h1.push_back({-a, -b});
  return m;
}

/// Coefficient of z1^{-1} z2^{-1} in h·ω, normalized so that residue(z1^{-1}z2^{-1}, 1) = 1.
inline Q residue(const ZPoly& h, const ZPoly& omega) {
  Q r(0);
  for (const auto& [a, x] : h)
    for (const auto& [b, y] : omega)
      if (a[0] + b[0] == -1 && a[1] + b[1] == -1) r += x * y;
  return r;
}

/// Holomorphic functions on the punctured polydisc extend over the puncture:
/// the Laurent monomials in the window [-D, D]² that survive in H0 are
/// exactly the polynomials of degree ≤ D.
inline bool hartogs_consistent(int D) {
  const AnnulusModel m = annulus_model(D);
  std::set<Exp2> from_window;
  for (int i = -D; i <= D; ++i)
    for (int j = -D; j <= D; ++j)
      if (i >= 0 && j >= 0 && i + j <= D) from_window.insert({i, j});
  return from_window == std::set<Exp2>(m.h0.begin(), m.h0.end()) && m.h0.size() == static_cast<std::size_t>((D + 1) * (D + 2) / 2);
}

/// g(z + w) = Σ g'(z) g''(w); the coefficient is carried by g'.
inline std::vector<std::pair<ZPoly, ZPoly>> sweedler(const ZPoly& g) {
  std::vector<std::pair<ZPoly, ZPoly>> out;
  for (const auto& [b, c] : g) {
    std::vector<Exp2> ks = below(b);
    std::reverse(ks.begin(), ks.end());
    for (const auto& k : ks) out.emplace_back(zmono(k[0], k[1], c * binomial(b, k)), zmono(b[0] - k[0], b[1] - k[1]));
  }
  return out;
}

/// Λ-polynomial with observable coefficients: λ^m ↦ element.
using LambdaPoly = std::map<Exp2, Poly>;
/// H1-valued element: (a, b) ↦ coefficient of z1^{-a} z2^{-b}.
using H1Value = std::map<Exp2, Poly>;

/// Linear observables ∂^n X / n! of finitely many generators X, with a
/// two-variable λ-bracket {X_λ Y} given on generators and extended by
/// sesquilinearity. The family {A, B}_f is
///   {A, B}_{z^m} = m! · [λ^m] {B_λ A},
/// a derivation in the first slot. Signs use the shifted parity |x| + 1.
class ConformalModel {
 public:
  static constexpr int kMaxOrder = 24;

  ConformalModel(std::vector<std::string> names, std::vector<int> degrees, int hbar_cap = kDefaultHbarCap)
      : names_(std::move(names)), degrees_(std::move(degrees)), hcap_(hbar_cap) {
    if (names_.size() != degrees_.size()) throw std::invalid_argument("ConformalModel: names/degrees size mismatch");
    for (int g = 0; g < gens(); ++g)
      for (int i = 0; i < kMaxOrder; ++i)
        for (int j = 0; j < kMaxOrder; ++j) {
          std::string nm = names_[static_cast<std::size_t>(g)];
          if (i || j) nm += "_(" + std::to_string(i) + "," + std::to_string(j) + ")";
          alg_.add_generator(code(g, {i, j}), {nm, BiDegree(degrees_[static_cast<std::size_t>(g)], 0)});
        }
  }

  int gens() const { return static_cast<int>(names_.size()); }
  int hbar_cap() const { return hcap_; }
  const GradedAlgebra& algebra() const { return alg_; }
  const std::string& name(int g) const { return names_.at(static_cast<std::size_t>(g)); }

  static int code(int gen, const Exp2& n) {
    if (n[0] < 0 || n[1] < 0 || n[0] >= kMaxOrder || n[1] >= kMaxOrder)
      throw std::out_of_range("ConformalModel: derivative order out of range");
    return (gen * kMaxOrder + n[0]) * kMaxOrder + n[1];
  }
  static int gen_of(int c) { return c / (kMaxOrder * kMaxOrder); }
  static Exp2 order_of(int c) { return {(c / kMaxOrder) % kMaxOrder, c % kMaxOrder}; }

  Poly unit(const Scalar& c = Scalar(1)) const { return Poly::unit(c.with_cap(hcap_)); }
  /// ∂^n X_g / n!: the coefficient of z^n in the field X_g.
  Poly linear(int g, const Exp2& n, const Q& c = Q(1)) const { return Poly::generator(code(g, n), Scalar(c, hcap_)); }

  /// {X_a λ X_b} on generators; entries are linear observables or the unit.
  void set_bracket(int a, int b, LambdaPoly value) {
    check_gen(a);
    check_gen(b);
    for (const auto& [m, v] : value) check_linear(v, "set_bracket");
    base_[{a, b}] = std::move(value);
    cache_.clear();
  }
  bool has_bracket(int a, int b) const { return base_.count({a, b}) > 0; }

  int shifted_parity(int c) const { return 1 - alg_.parity(c); }
  int parity_of(const Poly& p) const {
    for (const auto& [m, c] : p.terms()) return alg_.parity(m);
    return 0;
  }

  /// ∂^r / r! on a linear-plus-unit element.
  Poly divided_derivative(const Poly& v, const Exp2& r) const {
    Poly out;
    for (const auto& [m, c] : v.terms()) {
      if (m.is_unit()) {
        if (r == Exp2{0, 0}) out.add(m, c);
        continue;
      }
      const int x = m.factors.front().first;
      const Exp2 n = order_of(x);
      out.add(Monomial{{{code(gen_of(x), n + r), 1}}}, c * Scalar(binomial(n + r, r), hcap_));
    }
    return out;
  }
  Poly derivative(const Poly& v, int i) const { return divided_derivative(v, i == 0 ? Exp2{1, 0} : Exp2{0, 1}); }

  /// {X_a λ X_b}, falling back to skew-symmetry
  /// {b_λ a} = -(-1)^{p(a)p(b)} {a_{-λ-∂} b}.
  LambdaPoly base(int a, int b) const {
    auto it = base_.find({a, b});
    if (it != base_.end()) return it->second;
    auto jt = base_.find({b, a});
    if (jt == base_.end()) return {};
    const int s = (shifted_parity(code(a, {0, 0})) && shifted_parity(code(b, {0, 0}))) ? 1 : -1;
    LambdaPoly out;
    for (const auto& [q, E] : jt->second)
      for (const auto& i : below(q)) {
        const Q c = Q((total(q) % 2) ? -s : s) * binomial(q, i) * factorial(q - i);
        out[i].add(divided_derivative(E, q - i), Scalar(c, hcap_));
      }
    prune(out);
    return out;
  }

  /// {x_λ y} for linear basis observables x = X_{(j)}, y = Y_{(k)}:
  /// (-λ)^j/j! · (λ+∂)^k/k! {X_λ Y}.
  const LambdaPoly& lambda_bracket(int x, int y) const {
    auto key = std::make_pair(x, y);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const Exp2 j = order_of(x), k = order_of(y);
    LambdaPoly out;
    for (const auto& [q, E] : base(gen_of(x), gen_of(y)))
      for (const auto& i : below(k)) {
        const Q c = Q(total(j) % 2 ? -1 : 1) / (factorial(j) * factorial(i));
        out[q + j + i].add(divided_derivative(E, k - i), Scalar(c, hcap_));
      }
    prune(out);
    return cache_.emplace(key, std::move(out)).first->second;
  }

  /// {x, y}_f for linear basis observables.
  Poly bracket_generators(int x, int y, const ZPoly& f) const {
    Poly out;
    const LambdaPoly& L = lambda_bracket(y, x);
    for (const auto& [m, c] : f) {
      auto it = L.find(m);
      if (it != L.end()) out.add(it->second, Scalar(c * factorial(m), hcap_));
    }
    return out;
  }

  /// {A, B}_f. B must be linear (plus unit terms, which bracket to zero);
  /// A is any polynomial, and {A1 A2, B} = A1 {A2, B} + (-1)^{|A2|(|B|+1)} {A1, B} A2.
  Poly bracket(const Poly& A, const Poly& B, const ZPoly& f) const {
    Poly out;
    if (A.is_zero() || B.is_zero()) return out;
    for (const auto& [mb, cb] : B.terms()) {
      if (mb.is_unit()) continue;
      if (mb.length() != 1) throw std::invalid_argument("bracket_f: second argument must be linear");
      const int y = mb.factors.front().first;
      const int py = alg_.parity(y);
      for (const auto& [ma, ca] : A.terms()) {
        if (ma.length() == 1) {
          out.add(bracket_generators(ma.factors.front().first, y, f), ca * cb);
          continue;
        }
        const std::vector<int> w = ma.expanded();
        for (std::size_t i = 0; i < w.size(); ++i) {
          Poly val = bracket_generators(w[i], y, f);
          if (val.is_zero()) continue;
          int sign = 1;
          for (std::size_t k = i + 1; k < w.size(); ++k)
            if (alg_.parity(w[k]) && !py) sign = -sign;
          const Poly pre = Poly::monomial(Monomial::from_sorted({w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)}), Scalar(Q(1), hcap_));
          const Poly post = Poly::monomial(Monomial::from_sorted({w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end()}), Scalar(Q(1), hcap_));
          out.add(multiply(alg_, multiply(alg_, pre, val), post), ca * cb * Scalar(sign));
        }
      }
    }
    return out;
  }

  /// μ(A, B) for linear A, B: Σ_m m! [λ^m]{B_λ A} z^{-m-1}, keeping |exponents| ≤ D.
  H1Value mu(const Poly& A, const Poly& B, int D = kMaxOrder) const {
    H1Value out;
    for (const auto& [ma, ca] : A.terms())
      for (const auto& [mb, cb] : B.terms()) {
        if (ma.is_unit() || mb.is_unit()) continue;
        if (ma.length() != 1 || mb.length() != 1) throw std::invalid_argument("mu: arguments must be linear");
        for (const auto& [m, v] : lambda_bracket(mb.factors.front().first, ma.factors.front().first)) {
          const Exp2 e = m + Exp2{1, 1};
          if (e[0] > D || e[1] > D) continue;
          out[e].add(v, ca * cb * Scalar(factorial(m), hcap_));
        }
      }
    prune(out);
    return out;
  }

  std::string render(const Poly& p) const { return p.str(alg_); }

 private:
  void check_gen(int g) const {
    if (g < 0 || g >= gens()) throw std::out_of_range("ConformalModel: generator index " + std::to_string(g));
  }
  static void check_linear(const Poly& v, const char* where) {
    for (const auto& [m, c] : v.terms())
      if (m.length() > 1) throw std::invalid_argument(std::string(where) + ": values must be linear or constant");
  }
  static void prune(std::map<Exp2, Poly>& m) {
    std::erase_if(m, [](const auto& e) { return e.second.is_zero(); });
  }

  std::vector<std::string> names_;
  std::vector<int> degrees_;
  int hcap_;
  GradedAlgebra alg_;
  std::map<std::pair<int, int>, LambdaPoly> base_;
  mutable std::map<std::pair<int, int>, LambdaPoly> cache_;
};

/// H1-valued element evaluated against f: Σ coefficient · residue(z^{-e}, f).
inline Poly residue(const H1Value& h, const ZPoly& f) {
  Poly out;
  for (const auto& [e, v] : h) {
    const Q r = residue(zmono(-e[0], -e[1]), f);
    if (!is_zero(r)) out.add(v, Scalar(r));
  }
  return out;
}

/// Constant of the abelian pairing: the residue of the basic H1 class
/// against the unit, i.e. the pairing of 1 with its dual monomial.
inline Q abelian_pairing_constant() { return residue(zmono(-1, -1), zmono(0, 0)); }

/// Abelian N=1 theory: φ (linear observables of the degree-0 field, degree 0)
/// and ψ (of the degree-1 field, degree -1), {ψ_λ φ} = ħ c.
inline ConformalModel abelian_vertex_model(int hbar_cap = kDefaultHbarCap) {
  ConformalModel m({"φ", "ψ"}, {0, -1}, hbar_cap);
  m.set_bracket(1, 0, {{Exp2{0, 0}, m.unit(Scalar::hbar(1, hbar_cap) * Scalar(abelian_pairing_constant(), hbar_cap))}});
  return m;
}
inline constexpr int kPhi = 0;
inline constexpr int kPsi = 1;

/// μ for linear observables of the abelian model, within the annulus model of size D.
inline H1Value mu_abelian(const ConformalModel& m, const Poly& A, const Poly& B, int D) {
  annulus_model(D);
  return m.mu(A, B, D);
}

/// Coefficient c in μ(δ^φ_0, δ^ψ_0) = ħ c z1^{-1} z2^{-1} at truncation D.
inline Q abelian_mu_constant(const ConformalModel& m, int D) {
  const H1Value mu = mu_abelian(m, m.linear(kPhi, {0, 0}), m.linear(kPsi, {0, 0}), D);
  if (mu.size() != 1 || mu.begin()->first != Exp2{1, 1}) throw std::logic_error("abelian μ is not a multiple of z1^-1 z2^-1");
  const Poly& v = mu.begin()->second;
  if (v.terms().size() != 1 || !v.terms().begin()->first.is_unit()) throw std::logic_error("abelian μ is not central");
  const Scalar& s = v.terms().begin()->second;
  if (!is_zero(s.coeff(0)) || s.degree() != 1) throw std::logic_error("abelian μ is not of order ħ");
  return s.coeff(1);
}

/// Current model of a Lie algebra with its invariant form κ:
/// {J^a_λ J^b} = [a,b] + κ(a,b)(λ1 + λ2). Generators in degree -1.
inline ConformalModel current_model(const LieAlgebra& g, int hbar_cap = kDefaultHbarCap) {
  ConformalModel m(g.basis, std::vector<int>(static_cast<std::size_t>(g.dim()), -1), hbar_cap);
  for (int a = 0; a < g.dim(); ++a)
    for (int b = 0; b < g.dim(); ++b) {
      LambdaPoly v;
      Poly lin;
      for (int c = 0; c < g.dim(); ++c) {
        const Q s = g.structure_constant(a, b, c);
        if (!is_zero(s)) lin += m.linear(c, {0, 0}, s);
      }
      if (!lin.is_zero()) v[{0, 0}] = lin;
      if (g.form) {
        const Q k = (*g.form)[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (!is_zero(k)) {
          v[{1, 0}] = m.unit(Scalar(k, hbar_cap));
          v[{0, 1}] = m.unit(Scalar(k, hbar_cap));
        }
      }
      if (!v.empty()) m.set_bracket(a, b, std::move(v));
    }
  return m;
}

/// Pairs (a, b) where the stored table disagrees with skew-symmetry.
inline std::vector<std::string> skew_violations(const ConformalModel& m) {
  std::vector<std::string> out;
  for (int a = 0; a < m.gens(); ++a)
    for (int b = 0; b < m.gens(); ++b) {
      if (!m.has_bracket(a, b)) continue;
      // compare {b_λ a} from the table with the skew transform of {a_λ b}
      const int s = (m.shifted_parity(ConformalModel::code(a, {0, 0})) && m.shifted_parity(ConformalModel::code(b, {0, 0}))) ? 1 : -1;
      LambdaPoly expect;
      for (const auto& [q, E] : m.lambda_bracket(ConformalModel::code(a, {0, 0}), ConformalModel::code(b, {0, 0})))
        for (const auto& i : below(q))
          expect[i].add(m.divided_derivative(E, q - i), Scalar(Q((total(q) % 2) ? -s : s) * binomial(q, i) * factorial(q - i)));
      LambdaPoly got = m.lambda_bracket(ConformalModel::code(b, {0, 0}), ConformalModel::code(a, {0, 0}));
      for (auto& [k, v] : expect) got[k] -= v;
      std::erase_if(got, [](const auto& e) { return e.second.is_zero(); });
      if (!got.empty()) out.push_back(m.name(a) + "," + m.name(b));
    }
  return out;
}

/// {{α,β}_f, γ}_g - {{α,γ}_g, β}_f - Σ {α, {β,γ}_{g'}}_{f g''}.
inline Poly higher_jacobi_deviation(const ConformalModel& m, const Poly& alpha, const Poly& beta, const Poly& gamma,
                                    const ZPoly& f, const ZPoly& g) {
  Poly dev = m.bracket(m.bracket(alpha, beta, f), gamma, g);
  dev -= m.bracket(m.bracket(alpha, gamma, g), beta, f);
  for (const auto& [gp, gpp] : sweedler(g)) dev -= m.bracket(alpha, m.bracket(beta, gamma, gp), zmul(f, gpp));
  return dev;
}

struct JacobiSweep {
  std::size_t triples = 0;
  std::size_t evaluations = 0;
  std::size_t failures = 0;
  std::vector<std::string> witnesses;
  bool ok() const { return failures == 0; }
};

/// Linear observables X_{(n)} with each exponent of n below D.
inline std::vector<Poly> linear_observables(const ConformalModel& m, int D) {
  std::vector<Poly> out;
  for (int g = 0; g < m.gens(); ++g)
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) out.push_back(m.linear(g, {i, j}));
  return out;
}

/// Sweep over all triples and all (f, g). Inner brackets are tabulated per
/// (f, g) so only the outer ones are evaluated per triple.
inline JacobiSweep higher_jacobi_check(const ConformalModel& m, const std::vector<Poly>& obs, const std::vector<Exp2>& fs,
                                       const std::vector<Exp2>& gs) {
  JacobiSweep r;
  const std::size_t n = obs.size();
  r.triples = n * n * n;
  auto table = [&](const ZPoly& h) {
    std::vector<Poly> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t[i * n + j] = m.bracket(obs[i], obs[j], h);
    return t;
  };
  for (const auto& fe : fs)
    for (const auto& ge : gs) {
      const ZPoly f = zmono(fe[0], fe[1]), g = zmono(ge[0], ge[1]);
      const std::vector<Poly> Tf = table(f), Tg = table(g);
      std::vector<std::vector<Poly>> Tgp;
      std::vector<ZPoly> fgpp;
      for (const auto& [gp, gpp] : sweedler(g)) {
        Tgp.push_back(table(gp));
        fgpp.push_back(zmul(f, gpp));
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c) {
            ++r.evaluations;
            Poly dev = m.bracket(Tf[a * n + b], obs[c], g);
            dev -= m.bracket(Tg[a * n + c], obs[b], f);
            for (std::size_t k = 0; k < Tgp.size(); ++k) dev -= m.bracket(obs[a], Tgp[k][b * n + c], fgpp[k]);
            if (dev.is_zero()) continue;
            ++r.failures;
            if (r.witnesses.size() < 5)
              r.witnesses.push_back("(" + m.render(obs[a]) + ", " + m.render(obs[b]) + ", " + m.render(obs[c]) +
                                    "; f=" + render_z(f) + ", g=" + render_z(g) + "): " + m.render(dev));
          }
    }
  return r;
}

/// Index map L_r → L_s (r ≤ s) sending X⊗m to X⊗m; its transpose is the
/// pullback of cochains along the truncation L_s → L_r.
inline std::vector<int> truncation_code_map(const BFStructure& from, const BFStructure& to) {
  std::vector<int> out;
  const int dg = from.g.dim();
  for (int i = 0; i < 2 * from.alpha_dim(); ++i) {
    const bool beta = !from.is_alpha(i);
    const int local = beta ? i - from.alpha_dim() : i;
    const int a = local / from.ring_dim(), p = local % from.ring_dim();
    const int q = to.ring.index_of(from.ring.monomial(p));
    if (q < 0 || a >= dg) throw std::invalid_argument("truncation_code_map: ring monomial missing in the larger truncation");
    out.push_back(beta ? to.beta(a, q) : to.alpha(a, q));
  }
  return out;
}

/// Applies a map on generators (code ↦ polynomial of degree 0 in the target)
/// to every factor position of each monomial, as a derivation along the
/// algebra map `along` (or as an algebra map when `derivation` is false).
inline Poly transport(const CEAlgebra& target, const std::vector<int>& along, const Poly& p,
                      const std::vector<Poly>* derivation = nullptr) {
  const GradedAlgebra& alg = target.algebra();
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    const std::vector<int> w = m.expanded();
    if (!derivation) {
      std::vector<int> img;
      for (int g : w) img.push_back(along[static_cast<std::size_t>(g)]);
      if (auto no = alg.normal_order(img)) out.add(no->second, c * Scalar(no->first));
      continue;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      Poly term = Poly::unit(c);
      for (std::size_t k = 0; k < w.size(); ++k) {
        const Poly f = k == i ? (*derivation)[static_cast<std::size_t>(w[k])]
                              : Poly::generator(along[static_cast<std::size_t>(w[k])]);
        term = multiply(alg, term, f);
      }
      out += term;
    }
  }
  return out;
}

struct LadderStep {
  int r = 0, s = 0;
  std::map<int, std::size_t> source_dims;
  std::map<int, std::size_t> image_ranks;
  bool chain_map = true;
  bool injective() const {
    for (const auto& [k, d] : source_dims) {
      auto it = image_ranks.find(k);
      if (it == image_ranks.end() || it->second != d) return false;
    }
    return true;
  }
};

struct DerivationReport {
  int r = 0;
  bool commute = true;
  bool leibniz = true;
  bool chain_map = true;
  std::size_t monomials_checked = 0;
  bool ok() const { return commute && leibniz && chain_map; }
};

/// Filtered commutative algebra F^r = H*(C*(L_r)) over a truncation ladder,
/// with the derivations ∂/∂z_i : F^r → F^{r+1}.
struct VertexData {
  LieAlgebra g;
  int variant = 1;
  int sym_cap = 2;
  std::vector<int> ladder;
  std::vector<BFStructure> levels;
  std::vector<CEAlgebra> cochains;
  std::vector<CohomologyResult> cohomology;
  std::vector<LadderStep> steps;
  DerivationReport derivations;

  bool ok() const {
    for (const auto& st : steps)
      if (!st.injective() || !st.chain_map) return false;
    return derivations.ok();
  }
};

/// ∂/∂z_i on generators of C*(L_r), landing in C*(L_{r+1}):
/// the dual generator of X⊗z^m goes to (m_i + 1) times that of X⊗z^{m+e_i}.
inline std::vector<Poly> z_derivative_on_generators(const BFStructure& from, const BFStructure& to, int i) {
  std::vector<Poly> out;
  for (int x = 0; x < 2 * from.alpha_dim(); ++x) {
    const bool beta = !from.is_alpha(x);
    const int local = beta ? x - from.alpha_dim() : x;
    const int a = local / from.ring_dim(), p = local % from.ring_dim();
    const Monomial& m = from.ring.monomial(p);
    std::vector<int> w = m.expanded();
    w.push_back(i);
    std::sort(w.begin(), w.end());
    const int q = to.ring.index_of(Monomial::from_sorted(w));
    if (q < 0) throw std::logic_error("z_derivative: shifted monomial missing in the next truncation");
    out.push_back(Poly::generator(beta ? to.beta(a, q) : to.alpha(a, q), Scalar(m.exponent(i) + 1)));
  }
  return out;
}

inline DerivationReport check_derivations(const LieAlgebra& g, int variant, int r, int sym_cap) {
  DerivationReport rep;
  rep.r = r;
  const BFStructure b0 = build_bf(g, r, variant), b1 = build_bf(g, r + 1, variant), b2 = build_bf(g, r + 2, variant);
  const CEAlgebra c0(b0.structure, sym_cap), c1(b1.structure, sym_cap), c2(b2.structure, sym_cap);
  const std::vector<int> p01 = truncation_code_map(b0, b1), p12 = truncation_code_map(b1, b2);
  std::array<std::vector<Poly>, 2> d01{z_derivative_on_generators(b0, b1, 0), z_derivative_on_generators(b0, b1, 1)};
  std::array<std::vector<Poly>, 2> d12{z_derivative_on_generators(b1, b2, 0), z_derivative_on_generators(b1, b2, 1)};
  // ∂1∂2 = ∂2∂1 on generators
  for (std::size_t x = 0; x < d01[0].size(); ++x) {
    const Poly a = transport(c2, p12, d01[1][x], &d12[0]);
    const Poly b = transport(c2, p12, d01[0][x], &d12[1]);
    if (!(a == b)) rep.commute = false;
  }
  for (const auto& [k, list] : c0.basis_by_degree())
    for (const auto& m : list) {
      ++rep.monomials_checked;
      const Poly x = Poly::monomial(m);
      for (int i = 0; i < 2; ++i) {
        const std::vector<Poly>& D = d01[static_cast<std::size_t>(i)];
        // chain map: d ∂ = ∂ d, up to the common word-length truncation
        const Poly lhs = c1.d(transport(c1, p01, x, &D)).truncated(sym_cap);
        const Poly rhs = transport(c1, p01, c0.d(x), &D).truncated(sym_cap);
        if (!(lhs == rhs)) rep.chain_map = false;
        // Leibniz against a split of the monomial into first factor and rest
        const std::vector<int> w = m.expanded();
        if (w.size() >= 2) {
          const Poly u = Poly::generator(w.front());
          const Poly v = Poly::monomial(Monomial::from_sorted({w.begin() + 1, w.end()}));
          const Poly uv = c0.product(u, v);
          Poly expect = c1.product(transport(c1, p01, u, &D), transport(c1, p01, v));
          expect += c1.product(transport(c1, p01, u), transport(c1, p01, v, &D));
          if (!(transport(c1, p01, uv, &D) == expect)) rep.leibniz = false;
        }
      }
    }
  return rep;
}

/// Builds F^r for each r in the ladder (strictly increasing) and checks the
/// structure maps F^r → F^s for injectivity by rank, plus the derivations.
inline VertexData vertex_assemble(const LieAlgebra& g, int variant, const std::vector<int>& ladder, int sym_cap = 2) {
  if (ladder.empty()) throw std::invalid_argument("vertex_assemble: empty ladder");
  for (std::size_t i = 0; i < ladder.size(); ++i)
    if (ladder[i] < 1 || (i > 0 && ladder[i] <= ladder[i - 1]))
      throw std::invalid_argument("vertex_assemble: ladder must be strictly increasing and positive");
  VertexData V;
  V.g = g;
  V.variant = variant;
  V.sym_cap = sym_cap;
  V.ladder = ladder;
  for (int r : ladder) {
    V.levels.push_back(build_bf(g, r, variant));
    V.cochains.emplace_back(V.levels.back().structure, sym_cap);
    V.cohomology.push_back(twistalg::cohomology(V.cochains.back().complex()));
  }
  for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
    LadderStep st;
    st.r = ladder[i];
    st.s = ladder[i + 1];
    const CEAlgebra& cr = V.cochains[i];
    const CEAlgebra& cs = V.cochains[i + 1];
    const std::vector<int> phi = truncation_code_map(V.levels[i], V.levels[i + 1]);
    for (const auto& [k, list] : cr.basis_by_degree()) {
      for (const auto& m : list) {
        const Poly p = Poly::monomial(m);
        if (!(cs.d(transport(cs, phi, p)).truncated(sym_cap) == transport(cs, phi, cr.d(p)).truncated(sym_cap)))
          st.chain_map = false;
      }
    }
    for (const auto& [k, reps] : V.cohomology[i].representatives) {
      st.source_dims[k] = reps.size();
      Echelon span;
      std::size_t base_rank = 0;
      if (const GradedMap* d = cs.complex().differential(k - 1)) {
        for (const auto& col : d->specialize(Q(0))) span.insert(col);
        base_rank = span.rank();
      }
      const auto& list = cr.basis_by_degree().at(k);
      for (const auto& rep : reps) {
        Poly p;
        for (const auto& [idx, c] : rep) p.add(list[static_cast<std::size_t>(idx)], Scalar(c));
        const ScalarVec img = cs.coordinates(transport(cs, phi, p), k);
        VecBuilder<Q> v;
        for (const auto& [idx, c] : img) v.add(idx, c.coeff(0));
        span.insert(v.build());
      }
      st.image_ranks[k] = span.rank() - base_rank;
    }
    V.steps.push_back(std::move(st));
  }
  V.derivations = check_derivations(g, variant, ladder.front(), sym_cap);
  return V;
}

}  // namespace twistalg

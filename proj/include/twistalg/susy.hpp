#pragma once

#include <twistalg/complex.hpp>
#include <twistalg/linf.hpp>
#include <twistalg/rational.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

// Conventions for the four-dimensional spinor data.
//  * V_C ≅ S+ ⊗ S-, s+_i ⊗ s-_j ↦ v_ij (basis order v11, v12, v21, v22).
//  * Real structure σ (antilinear): σ(v11) = v22, σ(v12) = -v21.
//  * Real basis of V_R = Fix(σ):
//      e1 = v11 + v22,  e2 = i(v22 - v11),  e3 = v12 - v21,  e4 = -i(v12 + v21).
//    With these choices Q = s+_1 gives the standard J (e1 ↦ e2, e3 ↦ e4).

/// Gaussian rational a + b·i.
struct GaussQ {
  Q re, im;
  GaussQ(Q r = Q(0), Q i = Q(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  static GaussQ i_unit() { return {Q(0), Q(1)}; }
  GaussQ conj() const { return {re, -im}; }
  bool is_zero() const { return twistalg::is_zero(re) && twistalg::is_zero(im); }
  GaussQ operator+(const GaussQ& o) const { return {re + o.re, im + o.im}; }
  GaussQ operator-(const GaussQ& o) const { return {re - o.re, im - o.im}; }
  GaussQ operator-() const { return {-re, -im}; }
  GaussQ operator*(const GaussQ& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  GaussQ operator/(const GaussQ& o) const {
    const Q n = o.re * o.re + o.im * o.im;
    if (twistalg::is_zero(n)) throw std::domain_error("GaussQ: division by zero");
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }
};

using CMat4 = std::array<std::array<GaussQ, 4>, 4>;
using QMat4 = std::array<std::array<Q, 4>, 4>;

inline CMat4 cmul(const CMat4& a, const CMat4& b) {
  CMat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[i][j] = r[i][j] + a[i][k] * b[k][j];
  return r;
}

inline CMat4 cinverse(CMat4 a) {
  CMat4 inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = GaussQ(Q(1));
  for (int c = 0; c < 4; ++c) {
    int p = c;
    while (p < 4 && a[p][c].is_zero()) ++p;
    if (p == 4) throw std::domain_error("cinverse: singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const GaussQ piv = a[c][c];
    for (int j = 0; j < 4; ++j) {
      a[c][j] = a[c][j] / piv;
      inv[c][j] = inv[c][j] / piv;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const GaussQ f = a[r][c];
      for (int j = 0; j < 4; ++j) {
        a[r][j] = a[r][j] - f * a[c][j];
        inv[r][j] = inv[r][j] - f * inv[c][j];
      }
    }
  }
  return inv;
}

inline Q det4(QMat4 a) {
  Q det(1);
  for (int c = 0; c < 4; ++c) {
    int p = c;
    while (p < 4 && is_zero(a[p][c])) ++p;
    if (p == 4) return Q(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const Q f = a[r][c] / a[c][c];
      for (int j = c; j < 4; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

inline QMat4 qmul(const QMat4& a, const QMat4& b) {
  QMat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      r[i][j] = 0;
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

/// Columns: the real basis e_k written in the v_ij basis.
inline CMat4 real_basis_in_v() {
  const GaussQ one(Q(1)), i = GaussQ::i_unit();
  CMat4 b{};
  // e1 = v11 + v22
  b[0][0] = one;
  b[3][0] = one;
  // e2 = i(v22 - v11)
  b[0][1] = -i;
  b[3][1] = i;
  // e3 = v12 - v21
  b[1][2] = one;
  b[2][2] = -one;
  // e4 = -i(v12 + v21)
  b[1][3] = -i;
  b[2][3] = -i;
  return b;
}

/// σ applied to a vector of v-coordinates.
inline std::array<GaussQ, 4> real_structure(const std::array<GaussQ, 4>& x) {
  // σ(Σ c_ij v_ij) = Σ conj(c_ij) σ(v_ij); σ(v11)=v22, σ(v22)=v11, σ(v12)=-v21, σ(v21)=-v12
  return {x[3].conj(), -x[2].conj(), -x[1].conj(), x[0].conj()};
}

/// Super-translation algebra V_C ⊕ Π(S+⊗W ⊕ S-⊗W*) for dim W = N.
/// Basis: v11, v12, v21, v22, then s+_i⊗w_a (i-major), then s-_j⊗w*_b.
class SuperTranslation {
 public:
  explicit SuperTranslation(int n_w) : n_(n_w) {
    if (n_w < 1) throw std::invalid_argument("SuperTranslation: dim W must be >= 1");
    std::vector<BasisElement> b;
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) b.push_back({"v" + std::to_string(i) + std::to_string(j), BiDegree(0, 0)});
    for (int i = 0; i < 2; ++i)
      for (int a = 0; a < n_; ++a) b.push_back({plus_name(i, a), BiDegree(0, 1)});
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < n_; ++a) b.push_back({minus_name(j, a), BiDegree(0, 1)});
    space_ = BigradedSpace(std::move(b));
  }

  int n() const { return n_; }
  const BigradedSpace& space() const { return space_; }
  static int v(int i, int j) { return 2 * i + j; }  // 0-based i, j
  int plus(int i, int a) const { return 4 + i * n_ + a; }
  int minus(int j, int a) const { return 4 + 2 * n_ + j * n_ + a; }
  bool is_plus(int k) const { return k >= 4 && k < 4 + 2 * n_; }
  bool is_minus(int k) const { return k >= 4 + 2 * n_; }

  /// Supercharge structure as an L∞ algebra (only l2).
  LInfStructure as_linf() const {
    LInfStructure L(space_, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int a = 0; a < n_; ++a) L.set_bracket({plus(i, a), minus(j, a)}, ScalarVec::unit(v(i, j)));
    return L;
  }

  QVec bracket(const QVec& x, const QVec& y) const {
    VecBuilder<Q> b;
    for (const auto& [p, c] : x)
      for (const auto& [q, d] : y) {
        auto pr = pair(p, q);
        if (pr) b.add(*pr, c * d);
      }
    return b.build();
  }

  std::string render(const QVec& x) const {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : x) {
      if (!s.empty()) s += " + ";
      s += c.get_str() + "*" + space_[static_cast<std::size_t>(k)].name;
    }
    return s;
  }

 private:
  std::string plus_name(int i, int a) const {
    return "s+" + std::to_string(i + 1) + (n_ == 1 ? "" : "⊗w" + std::to_string(a + 1));
  }
  std::string minus_name(int j, int a) const {
    return "s-" + std::to_string(j + 1) + (n_ == 1 ? "" : "⊗w" + std::to_string(a + 1) + "*");
  }
  /// Bracket of basis elements; odd-odd brackets are symmetric.
  std::optional<int> pair(int p, int q) const {
    if (is_minus(p) && is_plus(q)) std::swap(p, q);
    if (!(is_plus(p) && is_minus(q))) return std::nullopt;
    const int i = (p - 4) / n_, a = (p - 4) % n_;
    const int j = (q - 4 - 2 * n_) / n_, b = (q - 4 - 2 * n_) % n_;
    if (a != b) return std::nullopt;
    return v(i, j);
  }

  int n_;
  BigradedSpace space_;
};

struct TwistingData {
  QVec q;
  /// Weight of each basis vector w_a; S+⊗w_a has that weight, S-⊗w*_a the opposite.
  std::vector<int> rho_weights;
};

inline std::vector<std::string> validate_twisting(const SuperTranslation& T, const TwistingData& td) {
  std::vector<std::string> out;
  if (static_cast<int>(td.rho_weights.size()) != T.n())
    return {"weight list has " + std::to_string(td.rho_weights.size()) + " entries, expected " + std::to_string(T.n())};
  for (const auto& [k, c] : td.q) {
    if (k < 4) {
      out.push_back("weight violation: " + T.space()[static_cast<std::size_t>(k)].name + " is even");
      continue;
    }
    const int a = T.is_plus(k) ? (k - 4) % T.n() : (k - 4 - 2 * T.n()) % T.n();
    const int w = T.is_plus(k) ? td.rho_weights[static_cast<std::size_t>(a)] : -td.rho_weights[static_cast<std::size_t>(a)];
    if (w != 1)
      out.push_back("weight violation: " + T.space()[static_cast<std::size_t>(k)].name + " has weight " + std::to_string(w));
  }
  const QVec qq = T.bracket(td.q, td.q);
  if (!qq.empty()) out.push_back("[Q,Q] = " + T.render(qq));
  return out;
}

struct Subspace {
  std::vector<QVec> basis;
  std::size_t dim() const { return basis.size(); }
};

/// span{[Q, s-_j⊗w*_b]} inside V_C.
inline Subspace twist_image(const SuperTranslation& T, const QVec& q) {
  Echelon e;
  Subspace s;
  for (int j = 0; j < 2; ++j)
    for (int b = 0; b < T.n(); ++b) {
      QVec img = T.bracket(q, QVec::unit(T.minus(j, b)));
      if (e.insert(img)) s.basis.push_back(img);
    }
  return s;
}

/// 2×N coefficient matrix of the S+⊗W component of Q.
inline std::vector<QVec> plus_component_rows(const SuperTranslation& T, const QVec& q) {
  std::vector<QVec> rows(2);
  for (const auto& [k, c] : q)
    if (T.is_plus(k)) rows[static_cast<std::size_t>((k - 4) / T.n())].add((k - 4) % T.n(), c);
  return rows;
}

inline bool minimal_twist_p(const SuperTranslation& T, const QVec& q) {
  for (const auto& [k, c] : q)
    if (!T.is_plus(k)) return false;
  return rank_of(plus_component_rows(T, q)) <= 1;
}

/// J on V_R in the real basis e1..e4 (row i, column j: e_i-coefficient of J e_j).
inline QMat4 complex_structure_from(const SuperTranslation& T, const QVec& q) {
  if (q.empty()) throw std::invalid_argument("complex_structure_from: Q = 0 defines no complex structure");
  if (!minimal_twist_p(T, q)) throw std::invalid_argument("complex_structure_from: Q is not a minimal (rank-one) supercharge");
  const Subspace img = twist_image(T, q);
  if (img.dim() != 2) throw std::logic_error("complex_structure_from: twist image is not two-dimensional");
  CMat4 m{};
  for (int c = 0; c < 2; ++c) {
    std::array<GaussQ, 4> col{};
    for (const auto& [k, x] : img.basis[static_cast<std::size_t>(c)]) col[static_cast<std::size_t>(k)] = GaussQ(x);
    const auto conj = real_structure(col);
    for (int r = 0; r < 4; ++r) {
      m[r][c] = col[static_cast<std::size_t>(r)];
      m[r][c + 2] = conj[static_cast<std::size_t>(r)];
    }
  }
  CMat4 diag{};
  diag[0][0] = diag[1][1] = -GaussQ::i_unit();
  diag[2][2] = diag[3][3] = GaussQ::i_unit();
  const CMat4 jv = cmul(cmul(m, diag), cinverse(m));
  const CMat4 b = real_basis_in_v();
  const CMat4 je = cmul(cmul(cinverse(b), jv), b);
  QMat4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (!is_zero(je[r][c].im)) throw std::logic_error("complex_structure_from: J is not real");
      out[r][c] = je[r][c].re;
    }
  return out;
}

/// Sign of det(u1, Ju1, u2, Ju2) for a complex basis u1, u2 of (V_R, J).
inline int induced_orientation(const QMat4& J) {
  std::array<Q, 4> u1{Q(1), Q(0), Q(0), Q(0)};
  auto apply = [&](const std::array<Q, 4>& x) {
    std::array<Q, 4> y{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) y[r] += J[r][c] * x[c];
    return y;
  };
  const auto ju1 = apply(u1);
  for (int k = 1; k < 4; ++k) {
    std::array<Q, 4> u2{};
    u2[k] = 1;
    const auto ju2 = apply(u2);
    QMat4 m{};
    for (int r = 0; r < 4; ++r) {
      m[r][0] = u1[r];
      m[r][1] = ju1[r];
      m[r][2] = u2[r];
      m[r][3] = ju2[r];
    }
    const Q d = det4(m);
    if (!is_zero(d)) return sgn(d) > 0 ? 1 : -1;
  }
  throw std::logic_error("induced_orientation: no complex basis found");
}

/// Degree (weight a, cohomological b, fermionic c).
struct TriDegree {
  int a = 0, b = 0, c = 0;
  TriDegree operator+(const TriDegree& o) const { return {a + o.a, b + o.b, mod2(c + o.c)}; }
};

/// Twisting regrades (a, b, c) to (b + a, c + a).
inline BiDegree regrade(const TriDegree& t) { return BiDegree(t.b + t.a, t.c + t.a); }

/// Change of basis g ∈ GL(W): w_a ↦ Σ_b g[b][a] w_b, dual basis by (g^{-1})^T.
inline QVec transform_w(const SuperTranslation& T, const QVec& q, const std::vector<std::vector<Q>>& g,
                        const std::vector<std::vector<Q>>& g_inv) {
  VecBuilder<Q> out;
  const int n = T.n();
  for (const auto& [k, c] : q) {
    if (T.is_plus(k)) {
      const int i = (k - 4) / n, a = (k - 4) % n;
      for (int b = 0; b < n; ++b) out.add(T.plus(i, b), c * g[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]);
    } else if (T.is_minus(k)) {
      const int j = (k - 4 - 2 * n) / n, a = (k - 4 - 2 * n) % n;
      for (int b = 0; b < n; ++b) out.add(T.minus(j, b), c * g_inv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    } else {
      out.add(k, c);
    }
  }
  return out.build();
}

struct GradedSupertranslation {
  LInfStructure dgl;
  CochainComplex complex;
};

/// T^{N=1} regraded by the weight-one action: S- in degree -1, V_C in
/// degree 0, S+ in degree 1, with l1 = [Q,-] and the supertranslation bracket.
inline GradedSupertranslation graded_supertranslation(const QVec& q) {
  const SuperTranslation T(1);
  for (const auto& [k, c] : q)
    if (!T.is_plus(k)) throw std::invalid_argument("graded_supertranslation: Q must lie in S+ for the weight-one grading");
  std::vector<BasisElement> sm, vv, sp;
  for (int j = 0; j < 2; ++j) sm.push_back({T.space()[static_cast<std::size_t>(T.minus(j, 0))].name, regrade({-1, 0, 1})});
  for (int k = 0; k < 4; ++k) vv.push_back({T.space()[static_cast<std::size_t>(k)].name, BiDegree(0, 0)});
  for (int i = 0; i < 2; ++i) sp.push_back({T.space()[static_cast<std::size_t>(T.plus(i, 0))].name, regrade({1, 0, 1})});
  GradedSupertranslation out;
  std::vector<BasisElement> all = sm;
  all.insert(all.end(), vv.begin(), vv.end());
  all.insert(all.end(), sp.begin(), sp.end());
  // index maps: S- → 0..1, V → 2..5, S+ → 6..7
  auto to_new = [&](int k) { return T.is_minus(k) ? k - T.minus(0, 0) : (k < 4 ? 2 + k : 6 + (k - T.plus(0, 0))); };
  out.dgl = LInfStructure(BigradedSpace(all), 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.dgl.set_bracket({to_new(T.plus(i, 0)), to_new(T.minus(j, 0))}, ScalarVec::unit(2 + SuperTranslation::v(i, j)));
  GradedMap d(BigradedSpace(sm), BigradedSpace(vv), BiDegree(1, 0));
  for (int j = 0; j < 2; ++j) {
    QVec img = T.bracket(q, QVec::unit(T.minus(j, 0)));
    std::vector<ScalarVec::Entry> e, e2;
    for (const auto& [k, c] : img) {
      e.emplace_back(k, Scalar(c));
      e2.emplace_back(2 + k, Scalar(c));
    }
    d.set_column(static_cast<std::size_t>(j), ScalarVec(e));
    if (!e2.empty()) out.dgl.set_bracket({j}, ScalarVec(e2));
  }
  out.complex.set_piece(-1, BigradedSpace(sm));
  out.complex.set_piece(0, BigradedSpace(vv));
  out.complex.set_piece(1, BigradedSpace(sp));
  if (!d.is_zero()) out.complex.set_differential(-1, std::move(d));
  return out;
}

}  // namespace twistalg

#pragma once

#include <twistalg/grading.hpp>
#include <twistalg/scalar.hpp>
#include <twistalg/space.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

/// Normal-ordered monomial: (generator, exponent) pairs sorted by generator
/// code. Odd generators never carry an exponent above 1.
struct Monomial {
  std::vector<std::pair<int, int>> factors;

  bool is_unit() const { return factors.empty(); }
  int length() const {
    int n = 0;
    for (const auto& f : factors) n += f.second;
    return n;
  }
  /// Flattened factor list, repeating even generators.
  std::vector<int> expanded() const {
    std::vector<int> out;
    for (const auto& [g, e] : factors)
      for (int k = 0; k < e; ++k) out.push_back(g);
    return out;
  }
  static Monomial from_sorted(const std::vector<int>& gens) {
    Monomial m;
    for (int g : gens) {
      if (!m.factors.empty() && m.factors.back().first == g) ++m.factors.back().second;
      else m.factors.emplace_back(g, 1);
    }
    return m;
  }
  int exponent(int g) const {
    for (const auto& [h, e] : factors)
      if (h == g) return e;
    return 0;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    return a.factors <=> b.factors;
  }
};

/// Generator data for a free graded-commutative algebra.
struct Generator {
  std::string name;
  BiDegree degree;
  int parity() const { return degree.parity(); }
};

/// Free graded-commutative algebra on a finite generator table; even
/// generators commute, odd generators anticommute and square to zero.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;
  explicit GradedAlgebra(std::map<int, Generator> gens) : gens_(std::move(gens)) {}

  void add_generator(int code, Generator g) {
    if (!gens_.emplace(code, std::move(g)).second)
      throw std::invalid_argument("GradedAlgebra: duplicate generator code");
  }
  const std::map<int, Generator>& generators() const { return gens_; }
  bool has(int code) const { return gens_.count(code) != 0; }
  const Generator& generator(int code) const {
    auto it = gens_.find(code);
    if (it == gens_.end()) throw std::out_of_range("GradedAlgebra: unknown generator " + std::to_string(code));
    return it->second;
  }
  int parity(int code) const { return generator(code).parity(); }

  BiDegree degree(const Monomial& m) const {
    BiDegree d;
    for (const auto& [g, e] : m.factors)
      for (int k = 0; k < e; ++k) d = d + generator(g).degree;
    return d;
  }
  int parity(const Monomial& m) const { return degree(m).parity(); }

  /// Product of two normal-ordered monomials: sign and result, or nullopt
  /// when an odd generator would appear twice.
  std::optional<std::pair<int, Monomial>> multiply(const Monomial& a, const Monomial& b) const {
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    int sign = 1;
    // count of odd generators of `a` strictly greater than the current b-generator
    std::size_t i = 0, j = 0;
    int odd_a_remaining = 0;
    for (const auto& [g, e] : a.factors)
      if (parity(g)) odd_a_remaining += e;
    while (i < a.factors.size() || j < b.factors.size()) {
      if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
        if (parity(a.factors[i].first)) odd_a_remaining -= a.factors[i].second;
        out.factors.push_back(a.factors[i++]);
      } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
        const auto& [g, e] = b.factors[j];
        if (parity(g) && (odd_a_remaining % 2)) sign = -sign;
        out.factors.push_back(b.factors[j++]);
      } else {
        const int g = a.factors[i].first;
        if (parity(g)) return std::nullopt;
        out.factors.emplace_back(g, a.factors[i].second + b.factors[j].second);
        ++i;
        ++j;
      }
    }
    return std::make_pair(sign, std::move(out));
  }

  /// Normal-orders an arbitrary ordered word of generators.
  std::optional<std::pair<int, Monomial>> normal_order(const std::vector<int>& word) const {
    std::vector<int> w = word;
    int sign = 1;
    // insertion sort with Koszul signs
    for (std::size_t i = 1; i < w.size(); ++i)
      for (std::size_t k = i; k > 0 && w[k - 1] > w[k]; --k) {
        if (parity(w[k - 1]) && parity(w[k])) sign = -sign;
        std::swap(w[k - 1], w[k]);
      }
    for (std::size_t i = 1; i < w.size(); ++i)
      if (w[i] == w[i - 1] && parity(w[i])) return std::nullopt;
    return std::make_pair(sign, Monomial::from_sorted(w));
  }

  std::string name(const Monomial& m) const {
    if (m.is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, e] : m.factors) {
      if (!first) os << "*";
      first = false;
      os << generator(g).name;
      if (e > 1) os << "^" << e;
    }
    return os.str();
  }

  /// All monomials in the given generators with length in [min_len, max_len],
  /// ordered by length then lexicographically on generator order.
  std::vector<Monomial> monomials(const std::vector<int>& gens, int min_len, int max_len) const {
    std::vector<int> sorted = gens;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Monomial> out;
    for (int len = std::max(0, min_len); len <= max_len; ++len) {
      std::vector<int> current;
      std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
        if (left == 0) {
          out.push_back(Monomial::from_sorted(current));
          return;
        }
        for (std::size_t k = start; k < sorted.size(); ++k) {
          const int g = sorted[k];
          if (parity(g) && !current.empty() && current.back() == g) continue;
          current.push_back(g);
          rec(parity(g) ? k + 1 : k, left - 1);
          current.pop_back();
        }
      };
      rec(0, len);
    }
    return out;
  }

 private:
  std::map<int, Generator> gens_;
};

/// Element of a graded-commutative algebra with Scalar coefficients.
class Poly {
 public:
  Poly() = default;
  static Poly unit(Scalar c = Scalar(1)) {
    Poly p;
    p.add(Monomial{}, c);
    return p;
  }
  static Poly generator(int code, Scalar c = Scalar(1)) {
    Poly p;
    p.add(Monomial{{{code, 1}}}, c);
    return p;
  }
  static Poly monomial(Monomial m, Scalar c = Scalar(1)) {
    Poly p;
    p.add(std::move(m), c);
    return p;
  }

  void add(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(const Poly& p, const Scalar& factor = Scalar(1)) {
    for (const auto& [m, c] : p.terms_) add(m, c * factor);
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  Scalar coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  std::size_t size() const { return terms_.size(); }

  Poly& operator+=(const Poly& o) {
    add(o);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    add(o, Scalar(-1));
    return *this;
  }
  Poly operator-() const {
    Poly r;
    r.add(*this, Scalar(-1));
    return r;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Scalar& s) {
    Poly r;
    r.add(a, s);
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Drop monomials longer than max_len.
  Poly truncated(int max_len) const {
    Poly r;
    for (const auto& [m, c] : terms_)
      if (m.length() <= max_len) r.terms_.emplace(m, c);
    return r;
  }

  std::string str(const GradedAlgebra& alg) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      if (!m.is_unit()) os << "*" << alg.name(m);
    }
    return os.str();
  }

 private:
  std::map<Monomial, Scalar> terms_;
};

inline Poly multiply(const GradedAlgebra& alg, const Poly& a, const Poly& b, int max_len = -1) {
  Poly r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (max_len >= 0 && ma.length() + mb.length() > max_len) continue;
      auto prod = alg.multiply(ma, mb);
      if (!prod) continue;
      r.add(prod->second, ca * cb * Scalar(prod->first));
    }
  return r;
}

/// Extends a degree-`odd` map on generators to a derivation: D(xy) =
/// D(x)y + (-1)^{odd·|x|} x D(y). Results longer than max_len are dropped.
inline Poly apply_derivation(const GradedAlgebra& alg, const std::function<Poly(int)>& on_generator,
                             int derivation_parity, const Poly& p, int max_len = -1) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    int prefix_parity = 0;
    for (std::size_t k = 0; k < m.factors.size(); ++k) {
      const auto [g, e] = m.factors[k];
      Poly dg = on_generator(g);
      if (!dg.is_zero()) {
        Monomial before, after;
        before.factors.assign(m.factors.begin(), m.factors.begin() + static_cast<std::ptrdiff_t>(k));
        if (e > 1) before.factors.emplace_back(g, e - 1);
        after.factors.assign(m.factors.begin() + static_cast<std::ptrdiff_t>(k) + 1, m.factors.end());
        const int sign = (derivation_parity && prefix_parity % 2) ? -1 : 1;
        // even generators with e > 1: the e copies contribute identically
        Scalar coef = c * Scalar(sign * e);
        Poly term = multiply(alg, multiply(alg, Poly::monomial(before), dg), Poly::monomial(after), max_len);
        out.add(term, coef);
      }
      prefix_parity += e * alg.parity(g);
    }
  }
  return out;
}

}  // namespace twistalg

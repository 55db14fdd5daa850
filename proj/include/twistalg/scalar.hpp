#pragma once

#include <twistalg/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistalg {

inline constexpr int kDefaultHbarCap = 4;

/// A polynomial in the formal parameter ħ with rational coefficients,
/// truncated at ħ^cap. Products drop every power >= cap; the cap of a
/// binary result is the smaller of the two input caps.
class Scalar {
 public:
  Scalar() : cap_(kDefaultHbarCap) {}
  Scalar(const Q& c, int cap = kDefaultHbarCap) : cap_(cap) {  // NOLINT
    if (cap_ < 1) throw std::invalid_argument("Scalar: ħ cap must be >= 1");
    if (!twistalg::is_zero(c)) coeffs_.push_back(c);
  }
  Scalar(long c) : Scalar(Q(c)) {}  // NOLINT
  Scalar(int c) : Scalar(Q(c)) {}   // NOLINT

  static Scalar hbar(int power = 1, int cap = kDefaultHbarCap) {
    Scalar s(Q(0), cap);
    if (power < cap) {
      s.coeffs_.assign(static_cast<std::size_t>(power) + 1, Q(0));
      s.coeffs_.back() = 1;
    }
    return s;
  }

  static Scalar from_coeffs(std::vector<Q> coeffs, int cap = kDefaultHbarCap) {
    Scalar s(Q(0), cap);
    if (coeffs.size() > static_cast<std::size_t>(cap)) coeffs.resize(static_cast<std::size_t>(cap));
    s.coeffs_ = std::move(coeffs);
    s.trim();
    return s;
  }

  int cap() const { return cap_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Coefficient of ħ^k.
  Q coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Q(0);
    return coeffs_[static_cast<std::size_t>(k)];
  }
  const std::vector<Q>& coeffs() const { return coeffs_; }

  /// Evaluate at a rational value of ħ.
  Q at(const Q& h) const {
    Q r(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * h + *it;
    return r;
  }

  Scalar with_cap(int cap) const { return from_coeffs(coeffs_, cap); }

  /// Exact division by ħ. Throws unless the constant term vanishes; the cap
  /// drops by one since the top coefficient is no longer determined.
  Scalar divided_by_hbar() const {
    if (!is_zero() && !twistalg::is_zero(coeffs_[0]))
      throw std::domain_error("Scalar: not divisible by ħ (nonzero constant term)");
    if (cap_ < 2) throw std::domain_error("Scalar: ħ cap too small to divide by ħ");
    std::vector<Q> c;
    if (!coeffs_.empty()) c.assign(coeffs_.begin() + 1, coeffs_.end());
    return from_coeffs(std::move(c), cap_ - 1);
  }

  Scalar& operator+=(const Scalar& o) {
    cap_ = std::min(cap_, o.cap_);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Q(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar operator-() const {
    Scalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  Scalar& operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
  }
  Scalar& operator*=(const Q& q) {
    if (twistalg::is_zero(q)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= q;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    const int cap = std::min(a.cap_, b.cap_);
    Scalar r(Q(0), cap);
    if (a.is_zero() || b.is_zero()) return r;
    const std::size_t n = std::min<std::size_t>(a.coeffs_.size() + b.coeffs_.size() - 1,
                                                static_cast<std::size_t>(cap));
    r.coeffs_.assign(n, Q(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size() && i + j < n; ++j)
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    r.trim();
    return r;
  }
  friend Scalar operator*(Scalar a, const Q& q) { return a *= q; }
  friend Scalar operator*(const Q& q, Scalar a) { return a *= q; }

  /// Equality compares coefficients only; caps are bookkeeping.
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Q& c = coeffs_[k];
      if (twistalg::is_zero(c)) continue;
      if (!first) os << (sgn(c) < 0 ? " - " : " + ");
      else if (sgn(c) < 0) os << "-";
      first = false;
      Q a = abs(c);
      if (k == 0) {
        os << a.get_str();
      } else {
        if (a != 1) os << a.get_str() << "*";
        os << "ħ";
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && twistalg::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<Q> coeffs_;
  int cap_;
};

}  // namespace twistalg

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace twistalg {

/// Exact rational numbers. Every coefficient in the library is one of these.
using Q = mpq_class;

inline Q make_q(std::int64_t num, std::int64_t den = 1) {
  Q q(static_cast<long>(num), static_cast<unsigned long>(den < 0 ? -den : den));
  if (den < 0) q = -q;
  q.canonicalize();
  return q;
}

inline std::string to_string(const Q& q) { return q.get_str(); }

inline bool is_zero(const Q& q) { return sgn(q) == 0; }

inline Q binomial(int n, int k) {
  if (k < 0 || k > n) return Q(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Q(r);
}

inline Q factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return Q(r);
}

}  // namespace twistalg

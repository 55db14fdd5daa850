#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <twistalg/complex.hpp>
#include <twistalg/graded_map.hpp>
#include <twistalg/grading.hpp>
#include <twistalg/scalar.hpp>
#include <twistalg/sparse.hpp>
#include <twistalg/sym.hpp>

using namespace twistalg;

namespace {

// sign by sorting with adjacent swaps, counting odd-odd swaps
int bubble_sign(std::vector<int> perm, const std::vector<int>& parities) {
  int s = 1;
  for (std::size_t pass = 0; pass < perm.size(); ++pass)
    for (std::size_t i = 0; i + 1 < perm.size(); ++i)
      if (perm[i] > perm[i + 1]) {
        if (parities[static_cast<std::size_t>(perm[i])] % 2 && parities[static_cast<std::size_t>(perm[i + 1])] % 2) s = -s;
        std::swap(perm[i], perm[i + 1]);
      }
  return s;
}

std::size_t dense_rank(std::vector<std::vector<Q>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Q f = m[i][c] / m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

BigradedSpace space_of(std::vector<std::pair<std::string, int>> v) {
  std::vector<BasisElement> b;
  for (auto& [n, d] : v) b.push_back({n, BiDegree(d, 0)});
  return BigradedSpace(b);
}

}  // namespace

TEST(KoszulSign, SpecCases) {
  const std::vector<int> id{0, 1, 2}, odd3{1, 1, 1};
  EXPECT_EQ(koszul_sign(id, odd3), 1);
  const std::vector<int> sw{1, 0}, oo{1, 1}, oe{1, 0};
  EXPECT_EQ(koszul_sign(sw, oo), -1);
  EXPECT_EQ(koszul_sign(sw, oe), 1);
}

TEST(KoszulSign, AgreesWithBubbleSortOnAllPermutations) {
  std::mt19937 rng(7);
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<int> par(static_cast<std::size_t>(n));
      for (auto& p : par) p = static_cast<int>(rng() % 2);
      auto p2 = perm;
      do {
        EXPECT_EQ(koszul_sign(p2, par), bubble_sign(p2, par));
        std::vector<int> zero(static_cast<std::size_t>(n), 1);
        EXPECT_EQ(permutation_sign(p2), bubble_sign(p2, zero));
      } while (std::next_permutation(p2.begin(), p2.end()));
    }
  }
}

TEST(KoszulSign, RejectsNonPermutation) {
  const std::vector<int> bad{0, 0}, par{1, 1};
  EXPECT_THROW(koszul_sign(bad, par), std::invalid_argument);
}

TEST(BiDegree, ParityAndArithmetic) {
  const BiDegree a(1, 1), b(-2, 1);
  EXPECT_EQ(a.parity(), 0);
  EXPECT_EQ((a + b), BiDegree(-1, 0));
  EXPECT_EQ((-a).cohomological, -1);
  EXPECT_EQ(BiDegree(3, -1).fermionic, 1);
}

TEST(ScalarTest, TruncatedMultiplicationMatchesConvolution) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int cap = 1 + static_cast<int>(rng() % 4);
    std::vector<Q> x(4), y(4);
    for (auto& c : x) c = Q(static_cast<int>(rng() % 7) - 3);
    for (auto& c : y) c = Q(static_cast<int>(rng() % 7) - 3);
    const Scalar sx = Scalar::from_coeffs(x, cap), sy = Scalar::from_coeffs(y, cap);
    const Scalar p = sx * sy;
    for (int k = 0; k < 4; ++k) {
      Q want = 0;
      if (k < cap)
        for (int i = 0; i <= k; ++i) want += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(k - i)];
      EXPECT_EQ(p.coeff(k), want);
    }
    EXPECT_EQ(p.cap(), cap);
  }
}

TEST(ScalarTest, CapPropagatesAndHbarPowersVanish) {
  const Scalar h = Scalar::hbar(1, 2);
  EXPECT_TRUE((h * h).is_zero());
  EXPECT_EQ((h + Scalar(Q(1), 4)).cap(), 2);
  EXPECT_EQ(Scalar::hbar(2, 4).at(Q(3)), Q(9));
  EXPECT_EQ(Scalar::hbar(1).divided_by_hbar(), Scalar(1));
  EXPECT_THROW(Scalar(1).divided_by_hbar(), std::domain_error);
  EXPECT_EQ((Scalar(Q(1, 2)) - Scalar::hbar(1)).str(), "1/2 - ħ");
}

TEST(SparseTest, EchelonRankMatchesDenseElimination) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
    std::vector<std::vector<Q>> dense(static_cast<std::size_t>(rows), std::vector<Q>(static_cast<std::size_t>(cols)));
    std::vector<QVec> vs;
    for (int r = 0; r < rows; ++r) {
      VecBuilder<Q> b;
      for (int c = 0; c < cols; ++c) {
        const int v = (rng() % 3 == 0) ? static_cast<int>(rng() % 5) - 2 : 0;
        dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
        if (v) b.add(c, Q(v));
      }
      vs.push_back(b.build());
    }
    EXPECT_EQ(rank_of(vs), dense_rank(dense));
  }
}

TEST(SymPower, SpecCases) {
  const BigradedSpace x = space_of({{"x", 0}});
  const BigradedSpace s = sym_power(x, 2);
  ASSERT_EQ(s.dim(), 1u);
  EXPECT_EQ(s[0].name, "x^2");
  EXPECT_EQ(sym_power(space_of({{"θ", 1}}), 2).dim(), 0u);
  EXPECT_EQ(sym_power(space_of({{"x", 0}, {"y", 0}}), 2).dim(), 3u);
}

TEST(SymPower, CountsMatchMultisetFormula) {
  for (int even = 0; even <= 3; ++even)
    for (int odd = 0; odd <= 3; ++odd) {
      std::vector<std::pair<std::string, int>> gens;
      for (int i = 0; i < even; ++i) gens.push_back({"x" + std::to_string(i), 0});
      for (int i = 0; i < odd; ++i) gens.push_back({"t" + std::to_string(i), 1});
      const BigradedSpace v = space_of(gens);
      for (int n = 0; n <= 4; ++n) {
        // multisets of evens times subsets of odds, counted directly
        long long want = 0;
        for (int k = 0; k <= std::min(n, odd); ++k) {
          Q sub = binomial(odd, k);
          Q multi = even == 0 ? Q(n - k == 0 ? 1 : 0) : binomial(even + n - k - 1, n - k);
          want += Q(sub * multi).get_num().get_si();
        }
        EXPECT_EQ(static_cast<long long>(sym_power(v, n).dim()), want) << even << " " << odd << " " << n;
        EXPECT_EQ(sym_count(even, odd, n), want);
      }
    }
}

TEST(SymPower, DegreeCap) {
  const BigradedSpace v = space_of({{"x", 0}, {"t", 1}});
  EXPECT_EQ(sym_power(v, 2, 0).dim(), 1u);
  EXPECT_EQ(sym_power(v, 2, 1).dim(), 2u);
}

TEST(SpaceTest, DualNegatesAndRoundTrips) {
  const BigradedSpace v = space_of({{"a", 1}, {"b", -2}});
  const BigradedSpace d = v.dual();
  EXPECT_EQ(d.degree(0).cohomological, -1);
  EXPECT_EQ(d[1].name, "b^∨");
  EXPECT_EQ(d.dual(), v);
  EXPECT_EQ(v.shift(1).degree(0).cohomological, 0);
  EXPECT_EQ(direct_sum(v, d).dim(), 4u);
  EXPECT_EQ(tensor(v, v).degree(3).cohomological, -4);
  EXPECT_THROW(space_of({{"a", 0}, {"a", 1}}), std::invalid_argument);
}

TEST(GradedMapTest, ComposeAndDualize) {
  const BigradedSpace v = space_of({{"a", 0}, {"b", 1}});
  const BigradedSpace w = space_of({{"c", 1}, {"e", 2}});
  GradedMap f(v, w, BiDegree(1, 0));
  f.set(0, 0, Scalar(2));
  f.set(1, 1, Scalar(Q(-3)));
  EXPECT_EQ(compose(GradedMap::identity(w), f), f);
  EXPECT_EQ(compose(f, GradedMap::identity(v)), f);
  EXPECT_EQ(dualize(GradedMap::identity(v)), GradedMap::identity(v.dual()));
  EXPECT_EQ(dualize(dualize(f)), f);
  EXPECT_THROW(compose(f, f), std::invalid_argument);
}

TEST(CohomologyTest, ZeroDifferentialAndIdentity) {
  CochainComplex c;
  c.set_piece(0, space_of({{"a", 0}, {"b", 0}}));
  c.set_piece(1, space_of({{"c", 1}}));
  auto r = cohomology(c);
  EXPECT_EQ(r.dims[0], 2u);
  EXPECT_EQ(r.dims[1], 1u);

  CochainComplex e;
  const BigradedSpace s0 = space_of({{"u", 0}}), s1 = space_of({{"v", 1}});
  e.set_piece(0, s0);
  e.set_piece(1, s1);
  GradedMap d(s0, s1, BiDegree(1, 0));
  d.set(0, 0, Scalar(1));
  e.set_differential(0, d);
  auto r2 = cohomology(e);
  EXPECT_EQ(r2.dims[0], 0u);
  EXPECT_EQ(r2.dims[1], 0u);
}

TEST(CohomologyTest, SecondDifferenceComplex) {
  for (int n = 3; n <= 12; ++n) {
    std::vector<std::pair<std::string, int>> a, b;
    for (int x = 0; x < n; ++x) a.push_back({"a" + std::to_string(x), 0});
    for (int x = 1; x + 1 < n; ++x) b.push_back({"b" + std::to_string(x), 1});
    const BigradedSpace A = space_of(a), B = space_of(b);
    GradedMap d(A, B, BiDegree(1, 0));
    for (int x = 1; x + 1 < n; ++x) {
      const auto row = static_cast<std::size_t>(x - 1);
      d.set(row, static_cast<std::size_t>(x - 1), Scalar(1));
      d.set(row, static_cast<std::size_t>(x), Scalar(-2));
      d.set(row, static_cast<std::size_t>(x + 1), Scalar(1));
    }
    CochainComplex c;
    c.set_piece(0, A);
    c.set_piece(1, B);
    c.set_differential(0, d);
    auto r = cohomology(c);
    EXPECT_EQ(r.dims[0], 2u);
    EXPECT_EQ(r.dims[1], 0u);
    EXPECT_EQ(r.euler_characteristic(), 2);
  }
}

TEST(CohomologyTest, HbarSpecialization) {
  // d = ħ: acyclic for ħ ≠ 0, two classes at ħ = 0
  const BigradedSpace s0 = space_of({{"u", 0}}), s1 = space_of({{"v", 1}});
  GradedMap d(s0, s1, BiDegree(1, 0));
  d.set(0, 0, Scalar::hbar(1));
  CochainComplex c;
  c.set_piece(0, s0);
  c.set_piece(1, s1);
  c.set_differential(0, d);
  EXPECT_EQ(cohomology(c, Q(0)).dims[0], 1u);
  EXPECT_EQ(cohomology(c, Q(2)).dims[0], 0u);
}

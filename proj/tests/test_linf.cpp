#include <gtest/gtest.h>

#include <array>
#include <random>
#include <vector>

#include <twistalg/algebra.hpp>
#include <twistalg/bf.hpp>
#include <twistalg/ce.hpp>
#include <twistalg/lie.hpp>
#include <twistalg/linf.hpp>

using namespace twistalg;

namespace {

using Mat2 = std::array<std::array<Q, 2>, 2>;

Mat2 commutator(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
  return r;
}

// Jacobi on raw structure constants; true when every triple vanishes
bool jacobi_oracle(const LieAlgebra& g) {
  const int n = g.dim();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int out = 0; out < n; ++out) {
          Q s = 0;
          for (int m = 0; m < n; ++m) {
            s += g.structure_constant(b, c, m) * g.structure_constant(a, m, out);
            s += g.structure_constant(c, a, m) * g.structure_constant(b, m, out);
            s += g.structure_constant(a, b, m) * g.structure_constant(c, m, out);
          }
          if (s != 0) return false;
        }
  return true;
}

BigradedSpace space_of(std::vector<std::pair<std::string, int>> v) {
  std::vector<BasisElement> b;
  for (auto& [n, d] : v) b.push_back({n, BiDegree(d, 0)});
  return BigradedSpace(b);
}

}  // namespace

TEST(CheckLinf, AbelianIsClean) {
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(check_linf(lie_abelian(k).as_linf()).ok());
}

TEST(CheckLinf, Sl2StandardIsClean) {
  const LieAlgebra g = lie_sl2();
  EXPECT_EQ(g.structure_constant(1, 2, 0), 1);   // [e,f]=h
  EXPECT_EQ(g.structure_constant(0, 1, 1), 2);   // [h,e]=2e
  EXPECT_EQ(g.structure_constant(0, 2, 2), -2);  // [h,f]=-2f
  EXPECT_TRUE(jacobi_oracle(g));
  EXPECT_TRUE(check_linf(g.as_linf()).ok());
}

TEST(CheckLinf, AlteredSl2NamesTheTriple) {
  LieAlgebra g = lie_sl2();
  g.set(0, 1, {{1, Q(3)}});
  EXPECT_FALSE(jacobi_oracle(g));
  const LinfReport r = check_linf(g.as_linf());
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.violations.front().find("(h,e,f)"), std::string::npos) << r.violations.front();
}

TEST(CheckLinf, Gl2MatchesMatrixCommutators) {
  const LieAlgebra g = lie_gl2();
  ASSERT_EQ(g.dim(), 4);
  auto unit = [](int idx) {
    Mat2 m{};
    m[idx / 2][idx % 2] = 1;
    return m;
  };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Mat2 c = commutator(unit(a), unit(b));
      for (int out = 0; out < 4; ++out) EXPECT_EQ(g.structure_constant(a, b, out), c[out / 2][out % 2]);
    }
  EXPECT_TRUE(check_linf(g.as_linf()).ok());
}

TEST(CheckLinf, RandomStructureConstantsAgreeWithOracle) {
  std::mt19937 rng(20);
  int failing = 0;
  for (int trial = 0; trial < 60; ++trial) {
    LieAlgebra g = lie_abelian(3);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        std::vector<std::pair<int, Q>> out;
        for (int c = 0; c < 3; ++c)
          if (rng() % 3 == 0) out.emplace_back(c, Q(static_cast<int>(rng() % 3) - 1));
        g.set(a, b, out);
      }
    const bool want = jacobi_oracle(g);
    failing += want ? 0 : 1;
    EXPECT_EQ(check_linf(g.as_linf()).ok(), want);
  }
  EXPECT_GT(failing, 0);
}

TEST(CheckLinf, DifferentialSquareDetected) {
  LInfStructure L(space_of({{"a", 0}, {"b", 1}, {"c", 2}}));
  L.set_bracket({0}, ScalarVec::unit(1));
  L.set_bracket({1}, ScalarVec::unit(2));
  EXPECT_FALSE(check_linf(L).ok());
}

TEST(CheckLinf, AntisymmetryOfStoredBrackets) {
  const LInfStructure L = lie_sl2().as_linf();
  const ScalarVec ef = L.bracket(std::vector<int>{1, 2}), fe = L.bracket(std::vector<int>{2, 1});
  EXPECT_EQ(ef, fe * Scalar(-1));
}

TEST(CE, OneEvenGeneratorHasZeroDifferential) {
  const CEAlgebra ce(lie_abelian(1).as_linf(), 2);
  EXPECT_TRUE(ce.generator_differential(0).is_zero());
  const auto h = cohomology(ce.complex()).dims;
  EXPECT_EQ(h.at(0), 1u);
  EXPECT_EQ(h.at(1), 1u);
}

TEST(CE, Sl2CohomologyIsExteriorOnDegreeThree) {
  // H*(sl2) = Λ[c3]
  const CEAlgebra ce(lie_sl2().as_linf(), 3);
  const auto h = cohomology(ce.complex()).dims;
  EXPECT_EQ(h.at(0), 1u);
  EXPECT_EQ(h.at(1), 0u);
  EXPECT_EQ(h.at(2), 0u);
  EXPECT_EQ(h.at(3), 1u);
  EXPECT_FALSE(ce.complex().square_zero_violation());
  EXPECT_TRUE(ce.derivation_violations().empty());
}

TEST(CE, AbelianCohomologyIsWholeExteriorAlgebra) {
  for (int k = 1; k <= 3; ++k) {
    const CEAlgebra ce(lie_abelian(k).as_linf(), k);
    const auto h = cohomology(ce.complex()).dims;
    for (int d = 0; d <= k; ++d) EXPECT_EQ(h.at(d), static_cast<std::size_t>(binomial(k, d).get_num().get_si()));
  }
}

TEST(CE, HeisenbergEulerCharacteristicVanishes) {
  const CEAlgebra ce(lie_heisenberg().as_linf(), 3);
  EXPECT_EQ(cohomology(ce.complex()).euler_characteristic(), 0);
  EXPECT_FALSE(ce.complex().square_zero_violation());
}

TEST(MC, ZeroAndAbelian) {
  const LInfStructure L = tensor(lie_abelian(2).as_linf(), exterior_algebra(1));
  EXPECT_TRUE(mc_residual(L, ScalarVec()).empty());
  ScalarVec chi;
  for (std::size_t i = 0; i < L.dim(); ++i)
    if (L.space().degree(i) == BiDegree(1, 0)) chi += ScalarVec::unit(static_cast<int>(i), Scalar(Q(static_cast<int>(i) + 2)));
  ASSERT_FALSE(chi.empty());
  EXPECT_TRUE(mc_residual(L, chi).empty());
}

TEST(MC, Sl2WithOddParameters) {
  const MonomialAlgebra th = exterior_algebra(2);
  const LInfStructure L = tensor(lie_sl2().as_linf(), th);
  const int dt = static_cast<int>(th.dim());
  auto idx = [&](int x, int gen) {
    Monomial m;
    m.factors.emplace_back(gen, 1);
    return x * dt + th.index_of(m);
  };
  // [eθ1, eθ1] = 0
  EXPECT_TRUE(mc_residual(L, ScalarVec::unit(idx(1, 0))).empty());
  // eθ1 + fθ2: residual is [e,f]θ1θ2 = hθ1θ2
  const ScalarVec chi = ScalarVec::unit(idx(1, 0)) + ScalarVec::unit(idx(2, 1));
  const ScalarVec r = mc_residual(L, chi);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(L.space()[static_cast<std::size_t>(r.lead_index())].name.substr(0, 1), "h");
  EXPECT_THROW(mc_residual(L, ScalarVec::unit(0)), std::invalid_argument);
}

TEST(Cotangent, OneDimensionalAbelian) {
  const CotangentResult ct = build_cotangent(lie_abelian(1).as_linf());
  ASSERT_EQ(ct.structure.dim(), 2u);
  EXPECT_EQ(ct.structure.space().degree(1), BiDegree(3, 0));
  EXPECT_EQ(ct.pairing.value(0, 1), Scalar(1));
  EXPECT_FALSE(ct.structure.has_arity(2));
}

TEST(Cotangent, CoadjointMatchesStructureConstants) {
  const LieAlgebra g = lie_sl2();
  const CotangentResult ct = build_cotangent(g.as_linf());
  const int D = g.dim();
  // ⟨x_m, [x_i, ξ^j]⟩ = ⟨[x_m, x_i], ξ^j⟩ = C^j_{mi}
  for (int m = 0; m < D; ++m)
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        const ScalarVec br = ct.structure.bracket(std::vector<int>{i, D + j});
        EXPECT_EQ(ct.pairing.evaluate(ScalarVec::unit(m), br), Scalar(g.structure_constant(m, i, j)));
      }
  EXPECT_TRUE(check_linf(ct.structure).ok());
  EXPECT_TRUE(check_pairing_invariance(ct.structure, ct.pairing).ok());
  EXPECT_TRUE(ct.pairing.nondegenerate());
}

TEST(PairingInvariance, AbelianAnySymmetricPairing) {
  const LInfStructure L = lie_abelian(2).as_linf();
  InvariantPairing P(L.space(), 0);
  P.set(0, 0, Scalar(3));
  P.set(0, 1, Scalar(Q(-1)));
  EXPECT_TRUE(check_pairing_invariance(L, P).ok());
}

TEST(PairingInvariance, PerturbedBFPairingFails) {
  BFStructure bf = build_bf(lie_sl2(), 2, 1);
  ASSERT_TRUE(check_pairing_invariance(bf.structure, bf.pairing).ok());
  InvariantPairing P = bf.pairing;
  const int a = bf.alpha(0, 0);
  int partner = -1;
  for (const auto& [j, v] : P.row(a)) partner = j;
  ASSERT_GE(partner, 0);
  P.set_raw(a, partner, P.value(a, partner) * Scalar(2));
  P.set_raw(partner, a, P.value(partner, a) * Scalar(2));
  EXPECT_FALSE(check_pairing_invariance(bf.structure, P).ok());
}

TEST(PairingInvariance, DegreeIsEnforced) {
  const LInfStructure L = lie_abelian(1).as_linf();
  InvariantPairing P(L.space(), -3);
  EXPECT_THROW(P.set(0, 0, Scalar(1)), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <algorithm>

#include "helpers.hpp"

using namespace radau;

namespace {

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

// det by Gaussian elimination on the oracle side
double determinant(const RealMatrix& a) {
  auto m = testutil::dense(a);
  const std::size_t n = m.size();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

}  // namespace

TEST(DetX, ThreeByThreeCofactorExpansion) {
  const double x1 = 1.0 / (2.0 * std::sqrt(3.0));
  const double x2 = 1.0 / (2.0 * std::sqrt(15.0));
  const double b3 = 1.0 / 10.0;
  // | 1/2  -x1   0 |
  // | x1    0  -x2 |
  // | 0    x2   b3 |
  const double cof = 0.5 * (0.0 * b3 + x2 * x2) + x1 * (x1 * b3 - 0.0);
  EXPECT_NEAR(det_x(3), cof, 1e-16);
  EXPECT_NEAR(det_x(3), 1.0 / 60.0, 1e-16);
}

TEST(DetX, ClosedFormMatchesEliminationForManyS) {
  for (unsigned s = 2; s <= 10; ++s) {
    const double d = determinant(w_transform_matrix(s));
    EXPECT_NEAR(det_x(s) / d, 1.0, 1e-12) << "s=" << s;
  }
  EXPECT_NEAR(det_x(2), 1.0 / 6.0, 1e-16);
  EXPECT_THROW((void)det_x(1), Error);
}

TEST(TargetPivot, MatchesTabulatedValues) {
  EXPECT_NEAR(target_pivot(2), 1.0 / std::sqrt(6.0), 1e-16);
  for (unsigned s = 2; s <= 5; ++s) EXPECT_NEAR(target_pivot(s), tabulated_pivot(s), 1e-15) << s;
}

TEST(AuxAbscissae, TableLookupAndRange) {
  const auto c2 = aux_abscissae(2);
  const double r6 = std::sqrt(6.0);
  EXPECT_NEAR(c2[0], (6.0 - r6) / (6.0 + 2.0 * r6), 1e-16);
  EXPECT_EQ(c2[1], 1.0);
  EXPECT_NEAR(aux_abscissae(5)[3], 0.60680555490108389442, 1e-16);
  EXPECT_EQ(code_of([] { (void)aux_abscissae(6); }), ErrorCode::Unsupported);
  EXPECT_EQ(code_of([] { (void)aux_abscissae(1); }), ErrorCode::Unsupported);
}

TEST(AuxAbscissae, TabulatedValuesEqualizeCroutPivots) {
  for (unsigned s = 2; s <= 5; ++s) {
    const auto piv = crout_pivots_at(aux_abscissae(s));
    EXPECT_LE(spread(piv), 1e-12) << "s=" << s;
    for (double p : piv) EXPECT_NEAR(p, target_pivot(s), 1e-12);
  }
}

TEST(AuxAbscissae, RadauNodesDoNotEqualizePivots) {
  for (unsigned s = 3; s <= 5; ++s) EXPECT_GT(spread(crout_pivots_at(radau_nodes(s))), 1e-3);
}

TEST(BuildSplit, FactorsAndDerivedMatrices) {
  for (unsigned s = 2; s <= 5; ++s) {
    const auto sp = build_split(s);
    EXPECT_LE(max_abs(sp.L_hat() * sp.U_hat() - sp.K_hat), 1e-13);
    // K_hat = P_hat X P_hat^{-1} computed on the oracle side
    const auto Pi = oracle::gauss_inverse(testutil::dense(sp.P_hat));
    const auto K = oracle::multiply(oracle::multiply(testutil::dense(sp.P_hat), testutil::dense(w_transform_matrix(s))), Pi);
    EXPECT_LE(testutil::max_diff(K, testutil::dense(sp.K_hat)), 1e-13);
    // L^{-1} = diag(1/d) - S
    const auto Li = oracle::gauss_inverse(testutil::dense(sp.L_hat()));
    for (unsigned i = 0; i < s; ++i) {
      EXPECT_EQ(sp.tri.pivots[i], sp.d);
      for (unsigned j = 0; j < s; ++j) {
        const double expect = (i == j ? 1.0 / sp.d : 0.0) - sp.S()(i, j);
        EXPECT_NEAR(Li[i][j], expect, 1e-12);
        if (j >= i) {
          EXPECT_EQ(sp.S()(i, j), 0.0);
        }
        if (j <= i) {
          EXPECT_EQ(sp.C()(i, j), 0.0);
        }
        if (j > i) {
          EXPECT_EQ(sp.C()(i, j), sp.U_hat()(i, j));
        }
      }
    }
  }
}

TEST(BuildSplit, UpperFactorMinusIdentityIsNilpotent) {
  for (unsigned s = 2; s <= 5; ++s) {
    const auto sp = build_split(s);
    EXPECT_LE(inf_norm(mat_power(sp.C(), s)), 1e-13);
    EXPECT_GT(inf_norm(mat_power(sp.C(), s - 1)), 1e-6);
  }
}

TEST(BuildSplit, RejectsBadAbscissae) {
  auto c = aux_abscissae(3);
  c[0] += 1e-3;
  EXPECT_EQ(code_of([&] { (void)build_split(3, c); }), ErrorCode::PivotMismatch);
  EXPECT_EQ(code_of([] { (void)build_split(3, {0.6, 0.5, 1.0}); }), ErrorCode::NonMonotonic);
  EXPECT_EQ(code_of([] { (void)build_split(3, {0.0, 0.5, 1.0}); }), ErrorCode::NonMonotonic);
  EXPECT_EQ(code_of([] { (void)build_split(3, {0.2, 0.5, 0.9}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { (void)build_split(3, {0.2, 1.0}); }), ErrorCode::DimensionMismatch);
  // P_hat X P_hat^{-1} with c_hat = Radau nodes is A itself: distinct pivots
  EXPECT_EQ(code_of([] { (void)build_split(3, radau_nodes(3)); }), ErrorCode::PivotMismatch);
}

TEST(SolveAux, ConvergesToTableFromRadauSeeds) {
  for (unsigned s = 2; s <= 5; ++s) {
    const auto res = solve_aux(s, radau_nodes(s));
    const auto ref = aux_abscissae(s);
    EXPECT_LE(testutil::max_diff(res.c_hat, ref), 1e-10) << "s=" << s;
    EXPECT_LE(res.residual, 1e-13);
    EXPECT_LE(res.iterations, 20);
    EXPECT_EQ(res.c_hat.back(), 1.0);
  }
}

TEST(SolveAux, ErrorPaths) {
  EXPECT_EQ(code_of([] { (void)solve_aux(3, {0.5, 0.2, 1.0}); }), ErrorCode::NonMonotonic);
  EXPECT_EQ(code_of([] { (void)solve_aux(3, {0.5, 1.0}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { (void)solve_aux(1, {1.0}); }), ErrorCode::InvalidArgument);
  // no equal-pivot solution is reached from the Radau seeds beyond s = 5
  try {
    (void)solve_aux(6, radau_nodes(6));
    ADD_FAILURE() << "expected failure";
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::NonMonotonic) << e.what();
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
}

TEST(CroutOfA, FactorsRadauMatrix) {
  for (unsigned s = 2; s <= 5; ++s) {
    const auto tab = build_collocation(s);
    const auto tri = crout_of_A(tab);
    EXPECT_LE(max_abs(tri.L * tri.U - tab.A), 1e-13);
    EXPECT_GT(spread(tri.pivots), 1e-3) << "s=" << s;
  }
}

TEST(Augmented, BlockStructureAndConsistency) {
  for (unsigned s = 2; s <= 5; ++s) {
    const auto tab = build_collocation(s);
    const auto sp = build_split(s);
    const auto aug = augmented_tableau(tab, sp);
    ASSERT_EQ(aug.stages(), 2u * s);
    const auto Pi = inverse(tab.P);
    const RealMatrix upper = sp.P_hat * tab.X * Pi;
    for (unsigned i = 0; i < 2 * s; ++i) {
      double row = 0.0;
      for (unsigned j = 0; j < 2 * s; ++j) row += aug.A(i, j);
      EXPECT_NEAR(row, aug.c[i], 1e-13);
      for (unsigned j = 0; j < s; ++j) EXPECT_EQ(aug.A(i, j), 0.0);
      if (i < s) {
        EXPECT_NEAR(aug.c[i], sp.c_hat[i], 1e-13);
        for (unsigned j = 0; j < s; ++j) EXPECT_NEAR(aug.A(i, s + j), upper(i, j), 1e-14);
      } else {
        EXPECT_NEAR(aug.c[i], tab.c[i - s], 1e-13);
        for (unsigned j = 0; j < s; ++j) EXPECT_NEAR(aug.A(i, s + j), tab.A(i - s, j), 1e-13);
      }
    }
    for (unsigned j = 0; j < s; ++j) {
      EXPECT_EQ(aug.b[j], 0.0);
      EXPECT_NEAR(aug.b[s + j], tab.b[j], 1e-15);
    }
  }
  EXPECT_EQ(code_of([] { (void)augmented_tableau(build_collocation(3), build_split(2)); }), ErrorCode::DimensionMismatch);
}

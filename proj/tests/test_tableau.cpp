#include <gtest/gtest.h>

#include <numbers>

#include "helpers.hpp"

using namespace radau;

namespace {

double stability_function(const CollocationTableau& tab, double q) {
  // R(q) = 1 + q b^T (I - qA)^{-1} e
  const auto s = tab.s;
  oracle::Dense<double> m(s, std::vector<double>(s));
  for (unsigned i = 0; i < s; ++i)
    for (unsigned j = 0; j < s; ++j) m[i][j] = (i == j ? 1.0 : 0.0) - q * tab.A(i, j);
  const auto k = oracle::gauss_solve(m, std::vector<double>(s, 1.0));
  double r = 1.0;
  for (unsigned i = 0; i < s; ++i) r += q * tab.b[i] * k[i];
  return r;
}

}  // namespace

TEST(Legendre, MatchesExplicitCoefficients) {
  for (int j = 0; j <= 8; ++j) {
    const auto c = oracle::shifted_legendre_coeffs(j);
    for (double x : {0.0, 0.1, 0.37, 0.5, 0.81, 1.0}) {
      EXPECT_NEAR(legendre_eval(j, x), oracle::horner(c, x), 1e-11 * std::max(1.0, std::abs(oracle::horner(c, x))))
          << "j=" << j << " x=" << x;
    }
  }
}

TEST(Legendre, OrthonormalOnUnitInterval) {
  for (unsigned i = 0; i <= 5; ++i) {
    for (unsigned j = 0; j <= 5; ++j) {
      const double ip = oracle::simpson([&](double x) { return legendre_eval(i, x) * legendre_eval(j, x); }, 0.0, 1.0, 20000);
      EXPECT_NEAR(ip, i == j ? 1.0 : 0.0, 1e-10) << i << "," << j;
    }
  }
}

TEST(RadauNodes, ClosedFormsForSmallS) {
  EXPECT_EQ(radau_nodes(1), std::vector<double>{1.0});
  const auto c2 = radau_nodes(2);
  EXPECT_NEAR(c2[0], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(c2[1], 1.0);
  const auto c3 = radau_nodes(3);
  const double r6 = std::sqrt(6.0);
  EXPECT_NEAR(c3[0], (4.0 - r6) / 10.0, 1e-15);
  EXPECT_NEAR(c3[1], (4.0 + r6) / 10.0, 1e-15);
  EXPECT_EQ(c3[2], 1.0);
  EXPECT_THROW((void)radau_nodes(0), Error);
}

TEST(RadauNodes, SortedInsideUnitIntervalAndRootsOfDefiningPolynomial) {
  for (unsigned s = 2; s <= 9; ++s) {
    const auto c = radau_nodes(s);
    ASSERT_EQ(c.size(), s);
    EXPECT_EQ(c.back(), 1.0);
    double prev = 0.0;
    for (double x : c) {
      EXPECT_GT(x, prev);
      prev = x;
      // roots of L_s(2x-1) - L_{s-1}(2x-1) via the orthonormal basis
      const double ls = legendre_eval(s, x) / std::sqrt(2.0 * s + 1.0);
      const double ls1 = legendre_eval(s - 1, x) / std::sqrt(2.0 * s - 1.0);
      EXPECT_NEAR(ls - ls1, 0.0, 1e-13) << "s=" << s;
    }
  }
}

TEST(Quadrature, ExactToDegreeTwoSMinusTwo) {
  for (unsigned s = 2; s <= 7; ++s) {
    const auto tab = build_collocation(s);
    for (unsigned k = 0; k <= 2 * s - 2; ++k) {
      double sum = 0.0;
      for (unsigned i = 0; i < s; ++i) sum += tab.b[i] * std::pow(tab.c[i], k);
      EXPECT_NEAR(sum, 1.0 / (k + 1.0), 1e-13) << "s=" << s << " k=" << k;
    }
    double sum = 0.0;
    for (unsigned i = 0; i < s; ++i) sum += tab.b[i] * std::pow(tab.c[i], 2 * s - 1);
    EXPECT_GT(std::abs(sum - 1.0 / (2.0 * s)), 1e-10) << "degree 2s-1 must not be exact, s=" << s;
  }
}

TEST(Collocation, SimplifyingConditionsAndStiffAccuracy) {
  for (unsigned s = 2; s <= 6; ++s) {
    const auto tab = build_collocation(s);
    for (unsigned k = 1; k <= s; ++k) {
      for (unsigned i = 0; i < s; ++i) {
        double sum = 0.0;
        for (unsigned j = 0; j < s; ++j) sum += tab.A(i, j) * std::pow(tab.c[j], k - 1.0);
        EXPECT_NEAR(sum, std::pow(tab.c[i], k) / k, 1e-13) << "s=" << s << " k=" << k;
      }
    }
    for (unsigned j = 0; j < s; ++j) EXPECT_NEAR(tab.A(s - 1, j), tab.b[j], 1e-13);
  }
}

TEST(Collocation, KnownTwoStageMatrix) {
  const auto tab = build_collocation(2);
  EXPECT_NEAR(tab.A(0, 0), 5.0 / 12.0, 1e-15);
  EXPECT_NEAR(tab.A(0, 1), -1.0 / 12.0, 1e-15);
  EXPECT_NEAR(tab.A(1, 0), 3.0 / 4.0, 1e-15);
  EXPECT_NEAR(tab.A(1, 1), 1.0 / 4.0, 1e-15);
}

TEST(Collocation, StabilityFunctionIsSubdiagonalPade) {
  const auto t2 = build_collocation(2);
  const auto t3 = build_collocation(3);
  for (double q : {-0.5, -3.0, -40.0, 0.7}) {
    const double r2 = (1.0 + q / 3.0) / (1.0 - 2.0 * q / 3.0 + q * q / 6.0);
    const double r3 = (1.0 + 2.0 * q / 5.0 + q * q / 20.0) / (1.0 - 3.0 * q / 5.0 + 3.0 * q * q / 20.0 - q * q * q / 60.0);
    EXPECT_NEAR(stability_function(t2, q), r2, 1e-13);
    EXPECT_NEAR(stability_function(t3, q), r3, 1e-13);
  }
  for (unsigned s = 2; s <= 5; ++s) EXPECT_LT(std::abs(stability_function(build_collocation(s), -1e8)), 1e-7);
}

TEST(WTransform, EntriesAndSimilarity) {
  const auto X = w_transform_matrix(4);
  EXPECT_EQ(X(0, 0), 0.5);
  EXPECT_NEAR(X(0, 1), -1.0 / (2.0 * std::sqrt(3.0)), 1e-16);
  EXPECT_NEAR(X(1, 0), 1.0 / (2.0 * std::sqrt(3.0)), 1e-16);
  EXPECT_NEAR(X(2, 1), 1.0 / (2.0 * std::sqrt(15.0)), 1e-16);
  EXPECT_NEAR(X(3, 3), 1.0 / 14.0, 1e-16);
  EXPECT_EQ(X(1, 1), 0.0);
  EXPECT_EQ(X(0, 2), 0.0);
  EXPECT_THROW((void)w_transform_matrix(1), Error);
  for (unsigned s = 2; s <= 6; ++s) {
    const auto tab = build_collocation(s);
    EXPECT_LE(max_abs(tab.A * tab.P - tab.P * tab.X), 1e-13);
  }
}

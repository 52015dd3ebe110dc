#pragma once

#include <vector>

#include "oracles.hpp"
#include "radau/radau.hpp"

namespace testutil {

inline oracle::Dense<double> dense(const radau::RealMatrix& a) {
  oracle::Dense<double> out(a.rows(), std::vector<double>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  return out;
}

inline oracle::Dense<radau::Complex> dense(const radau::ComplexMatrix& a) {
  oracle::Dense<radau::Complex> out(a.rows(), std::vector<radau::Complex>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  return out;
}

template <class T>
double max_diff(const oracle::Dense<T>& a, const oracle::Dense<T>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out = std::max(out, std::abs(a[i][j] - b[i][j]));
  return out;
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

/// Linear problem y' = J y with a constant matrix.
inline radau::IvpProblem linear_problem(const radau::RealMatrix& J, std::vector<double> y0) {
  radau::IvpProblem p;
  p.name = "linear";
  p.m = J.rows();
  p.y0 = std::move(y0);
  p.f = [J](std::span<const double> y, std::span<double> dy) {
    for (std::size_t i = 0; i < J.rows(); ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < J.cols(); ++j) acc += J(i, j) * y[j];
      dy[i] = acc;
    }
  };
  p.jac = [J](std::span<const double>, radau::RealMatrix& out) { out = J; };
  return p;
}

/// A fixed 4x4 test matrix whose eigenvalues are -1, -2, -3, -4 times `scale`.
inline radau::RealMatrix sample_matrix4(double scale) {
  // V diag(-1,-2,-3,-4) V^{-1} with a well-conditioned V
  const oracle::Dense<double> V{{1.0, 0.2, 0.0, 0.1}, {0.1, 1.0, 0.3, 0.0}, {0.0, 0.2, 1.0, 0.2}, {0.3, 0.0, 0.1, 1.0}};
  const auto Vi = oracle::gauss_inverse(V);
  oracle::Dense<double> D(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i) D[i][i] = -(i + 1.0) * scale;
  const auto M = oracle::multiply(oracle::multiply(V, D), Vi);
  radau::RealMatrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = M[i][j];
  return out;
}

}  // namespace testutil

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radau/linalg.hpp"

namespace radau {

using RhsFn = std::function<void(std::span<const double> y, std::span<double> dy)>;
using JacFn = std::function<void(std::span<const double> y, RealMatrix& jac)>;
using ReferenceFn = std::function<std::vector<double>(double t)>;

/// Autonomous initial value problem y' = f(y), y(t0) = y0. Time-dependent
/// problems carry t as their last state component.
struct IvpProblem {
  std::string name;
  std::size_t m = 0;
  RhsFn f;
  JacFn jac;
  double t0 = 0.0;
  std::vector<double> y0;
  ReferenceFn reference;  // optional exact solution

  [[nodiscard]] std::vector<double> rhs(std::span<const double> y) const {
    std::vector<double> dy(m);
    f(y, dy);
    return dy;
  }
  [[nodiscard]] RealMatrix jacobian(std::span<const double> y) const {
    RealMatrix J(m, m);
    jac(y, J);
    return J;
  }
};

/// Largest relative mismatch between the analytic Jacobian and a central
/// finite-difference approximation at y, normalized by max|J|.
inline double jacobian_mismatch(const IvpProblem& p, std::span<const double> y) {
  const RealMatrix J = p.jacobian(y);
  std::vector<double> yp(y.begin(), y.end()), ym(y.begin(), y.end());
  std::vector<double> fp(p.m), fm(p.m);
  double worst = 0.0;
  const double scale = std::max(max_abs(J), 1e-300);
  for (std::size_t k = 0; k < p.m; ++k) {
    const double step = 1e-6 * std::max(1.0, std::abs(y[k]));
    yp[k] = y[k] + step;
    ym[k] = y[k] - step;
    p.f(yp, fp);
    p.f(ym, fm);
    yp[k] = ym[k] = y[k];
    for (std::size_t i = 0; i < p.m; ++i) {
      const double fd = (fp[i] - fm[i]) / (2.0 * step);
      worst = std::max(worst, std::abs(fd - J(i, k)) / scale);
    }
  }
  return worst;
}

}  // namespace radau

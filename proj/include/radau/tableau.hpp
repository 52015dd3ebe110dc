#pragma once

// Radau IIA collocation data built through the W-transform:
//   A = P X_s P^{-1},  P_ij = P_{j}(c_i)
// where P_j are the shifted, orthonormal Legendre polynomials on [0,1].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "radau/error.hpp"
#include "radau/linalg.hpp"

namespace radau {

/// Shifted orthonormal Legendre polynomial on [0,1], int_0^1 P_i P_j = delta_ij.
/// Three-term recurrence in the orthonormal basis.
inline double legendre_eval(unsigned j, double x) {
  const double t = 2.0 * x - 1.0;
  auto b = [](unsigned k) {
    const double kk = static_cast<double>(k);
    return kk / std::sqrt(4.0 * kk * kk - 1.0);
  };
  double prev = 0.0;
  double cur = 1.0;
  for (unsigned k = 0; k < j; ++k) {
    const double next = (t * cur - (k == 0 ? 0.0 : b(k) * prev)) / b(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace detail {

// Classical Legendre L_n(t) and derivative on [-1,1].
inline void classical_legendre(unsigned n, double t, double& value, double& deriv) {
  double p0 = 1.0, p1 = t;
  double d0 = 0.0, d1 = 1.0;
  if (n == 0) {
    value = 1.0;
    deriv = 0.0;
    return;
  }
  for (unsigned k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk + 1.0) * t * p1 - kk * p0) / (kk + 1.0);
    const double d2 = d0 + (2.0 * kk + 1.0) * p1;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
  }
  value = p1;
  deriv = d1;
}

}  // namespace detail

/// Right Radau points on [0,1]: the s roots of L_s(2x-1) - L_{s-1}(2x-1),
/// the last being exactly 1.
inline std::vector<double> radau_nodes(unsigned s) {
  if (s < 1) throw Error(ErrorCode::InvalidArgument, "radau_nodes needs s >= 1");
  std::vector<double> nodes(s, 1.0);
  if (s == 1) return nodes;

  // Interior roots in t = 2x-1, found by simultaneous Newton with deflation
  // against the known root t = 1 and the other iterates.
  const std::size_t n = s - 1;
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = std::cos(2.0 * std::numbers::pi * static_cast<double>(n - k) / (2.0 * s - 1.0));
  }
  auto q = [s](double x, double& v, double& dv) {
    double a, da, b, db;
    detail::classical_legendre(s, x, a, da);
    detail::classical_legendre(s - 1, x, b, db);
    v = a - b;
    dv = da - db;
  };

  constexpr int kMaxIter = 200;
  bool converged = false;
  for (int iter = 0; iter < kMaxIter && !converged; ++iter) {
    double largest = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double v, dv;
      q(t[k], v, dv);
      double sum = 1.0 / (t[k] - 1.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) sum += 1.0 / (t[k] - t[j]);
      }
      const double ratio = v / dv;
      double step = ratio / (1.0 - ratio * sum);
      double next = t[k] - step;
      // keep iterates inside (-1, 1)
      while (!(next > -1.0 && next < 1.0)) {
        step *= 0.5;
        next = t[k] - step;
      }
      largest = std::max(largest, std::abs(step));
      t[k] = next;
    }
    converged = largest <= 1e-15;
  }
  std::sort(t.begin(), t.end());
  for (std::size_t k = 0; k < n; ++k) {
    double v, dv;
    q(t[k], v, dv);
    if (!(std::abs(v / dv) <= 1e-14)) {
      throw Error(ErrorCode::NoConvergence, "radau_nodes did not converge for s = " + std::to_string(s));
    }
    nodes[k] = 0.5 * (1.0 + t[k]);
  }
  nodes[s - 1] = 1.0;
  return nodes;
}

/// Interpolatory quadrature weights on [0,1] from the moment system
/// sum_i b_i c_i^k = 1/(k+1), k = 0..s-1.
inline std::vector<double> quadrature_weights(const std::vector<double>& c) {
  const std::size_t s = c.size();
  RealMatrix V(s, s);
  std::vector<double> moments(s);
  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t i = 0; i < s; ++i) V(k, i) = std::pow(c[i], static_cast<double>(k));
    moments[k] = 1.0 / static_cast<double>(k + 1);
  }
  return lu_solve(lu_factor(V), std::span<const double>(moments));
}

/// P_ij = P_j(x_i), the Legendre evaluation matrix at the given abscissae.
inline RealMatrix legendre_matrix(const std::vector<double>& x) {
  const std::size_t s = x.size();
  RealMatrix out(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) out(i, j) = legendre_eval(static_cast<unsigned>(j), x[i]);
  return out;
}

inline double xi_coefficient(unsigned i) {
  const double ii = static_cast<double>(i);
  return 1.0 / (2.0 * std::sqrt(4.0 * ii * ii - 1.0));
}

inline double beta_coefficient(unsigned s) { return 1.0 / (4.0 * s - 2.0); }

/// X_s: 1/2 in the corner, +-xi_i off the diagonal, beta_s bottom right.
inline RealMatrix w_transform_matrix(unsigned s) {
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "X_s needs s >= 2");
  RealMatrix X(s, s);
  X(0, 0) = 0.5;
  for (unsigned i = 1; i < s; ++i) {
    const double xi = xi_coefficient(i);
    X(i - 1, i) = -xi;
    X(i, i - 1) = xi;
  }
  X(s - 1, s - 1) = beta_coefficient(s);
  return X;
}

struct CollocationTableau {
  unsigned s = 0;
  std::vector<double> c;
  std::vector<double> b;
  RealMatrix A;
  RealMatrix P;
  RealMatrix X;
};

inline CollocationTableau build_collocation(unsigned s) {
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "build_collocation needs s >= 2");
  CollocationTableau tab;
  tab.s = s;
  tab.c = radau_nodes(s);
  tab.b = quadrature_weights(tab.c);
  tab.P = legendre_matrix(tab.c);
  tab.X = w_transform_matrix(s);
  tab.A = tab.P * tab.X * inverse(tab.P);
  return tab;
}

/// Generic Butcher tableau; used for the 2s-stage augmented form.
struct ButcherTableau {
  std::vector<double> c;
  RealMatrix A;
  std::vector<double> b;

  [[nodiscard]] std::size_t stages() const noexcept { return c.size(); }
};

}  // namespace radau

#pragma once

// Linear convergence analysis of a triangular splitting A ~ L U applied to
// y' = lambda y, q = h lambda. The inner iteration error obeys
//    e_{nu+1} = M(q) e_nu,   M(q) = q (I - q L)^{-1} L (U - I).

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "radau/linalg.hpp"
#include "radau/splitting.hpp"
#include "radau/tableau.hpp"

namespace radau {

enum class Scheme { CroutOfA, LowRankSplit };

constexpr std::string_view to_string(Scheme s) noexcept {
  return s == Scheme::CroutOfA ? "crout-of-A" : "lowrank-split";
}

inline RealMatrix strictly_upper_part(const RealMatrix& U) {
  RealMatrix N = U;
  for (std::size_t i = 0; i < N.rows(); ++i) N(i, i) = 0.0;
  return N;
}

inline ComplexMatrix amplification_matrix(Complex q, const RealMatrix& L, const RealMatrix& U) {
  const ComplexMatrix Lc = to_complex(L);
  const ComplexMatrix rhs = to_complex(L * strictly_upper_part(U));
  ComplexMatrix M = shifted_lower_solve(Lc, q, rhs);
  M *= q;
  return M;
}

/// Nonstiff amplification factor rho(L (U - I)).
inline double rho_tilde(const RealMatrix& L, const RealMatrix& U) {
  return spectral_radius(L * strictly_upper_part(U));
}

struct AxisMaximum {
  double value = 0.0;
  double x = 0.0;
};

struct AxisScan {
  double x_min = 1e-3;
  double x_max = 1e6;
  int points = 600;
  double rel_tol = 1e-8;
};

/// Maximizes objective(x) over x > 0 on a log grid, then refines by golden
/// section in log x between the neighbours of the best grid point.
inline AxisMaximum maximize_on_axis(const std::function<double(double)>& objective,
                                    const AxisScan& scan = {}) {
  const double lo = std::log(scan.x_min);
  const double hi = std::log(scan.x_max);
  const int n = scan.points;
  std::vector<double> values(n);
  int best = 0;
  for (int k = 0; k < n; ++k) {
    values[k] = objective(std::exp(lo + (hi - lo) * k / (n - 1)));
    if (values[k] > values[best]) best = k;
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / (n - 1);
  double b = lo + (hi - lo) * std::min(best + 1, n - 1) / (n - 1);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = objective(std::exp(x1));
  double f2 = objective(std::exp(x2));
  // in log x, a relative tolerance in x is an absolute one
  while (b - a > scan.rel_tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = objective(std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = objective(std::exp(x2));
    }
  }
  AxisMaximum out{values[best], std::exp(lo + (hi - lo) * best / (n - 1))};
  const double xm = 0.5 * (a + b);
  const double fm = objective(std::exp(xm));
  if (fm > out.value) out = {fm, std::exp(xm)};
  return out;
}

/// Maximum amplification factor rho* = max_x rho(M(ix)) and its argmax.
inline AxisMaximum rho_star(const RealMatrix& L, const RealMatrix& U, const AxisScan& scan = {}) {
  return maximize_on_axis(
      [&](double x) { return spectral_radius(amplification_matrix(Complex(0.0, x), L, U)); }, scan);
}

struct AveragedFactors {
  double rho_tilde = 0.0;
  double rho_star = 0.0;
  double rho_inf = 0.0;
};

/// nu-step averaged factors with the infinity norm.
inline AveragedFactors averaged_factors(const RealMatrix& L, const RealMatrix& U, unsigned nu,
                                        const AxisScan& scan = {}) {
  if (nu < 1) throw Error(ErrorCode::InvalidArgument, "averaged_factors needs nu >= 1");
  const double inv = 1.0 / nu;
  const RealMatrix N = strictly_upper_part(U);
  AveragedFactors out;
  out.rho_tilde = std::pow(inf_norm(mat_power(RealMatrix(L * N), nu)), inv);
  out.rho_inf = std::pow(inf_norm(mat_power(N, nu)), inv);
  out.rho_star = maximize_on_axis(
                     [&](double x) {
                       return std::pow(inf_norm(mat_power(amplification_matrix(Complex(0.0, x), L, U), nu)), inv);
                     },
                     scan)
                     .value;
  return out;
}

struct AmplificationReport {
  unsigned s = 0;
  Scheme scheme = Scheme::LowRankSplit;
  double rho_tilde = 0.0;
  double rho_star = 0.0;
  double rho_inf = 0.0;
  double x_star = 0.0;
  std::vector<unsigned> nus;
  std::vector<AveragedFactors> averaged;

  [[nodiscard]] bool a_convergent() const noexcept { return rho_star <= 1.0; }
};

inline AmplificationReport amplification_report(unsigned s, Scheme scheme, const RealMatrix& L,
                                                const RealMatrix& U, std::vector<unsigned> nus = {}) {
  AmplificationReport rep;
  rep.s = s;
  rep.scheme = scheme;
  rep.rho_tilde = rho_tilde(L, U);
  const auto star = rho_star(L, U);
  rep.rho_star = star.value;
  rep.x_star = star.x;
  rep.rho_inf = spectral_radius(strictly_upper_part(U));
  rep.nus = std::move(nus);
  for (unsigned nu : rep.nus) rep.averaged.push_back(averaged_factors(L, U, nu));
  return rep;
}

/// Factors for one of the two in-scope schemes on the s-stage method.
inline TriangularSplitting scheme_factors(unsigned s, Scheme scheme) {
  if (scheme == Scheme::CroutOfA) return crout_of_A(build_collocation(s));
  return build_split(s).tri;
}

struct GridSpec {
  double re_min = -20.0;
  double re_max = 1.0;
  double im_min = -20.0;
  double im_max = 20.0;
  unsigned n_re = 100;
  unsigned n_im = 100;
};

struct RegionSample {
  double re = 0.0;
  double im = 0.0;
  double rho = 0.0;
};

struct RegionScan {
  std::vector<RegionSample> samples;
  double max_left_half_plane = 0.0;  // max over samples with Re q <= 0
  [[nodiscard]] bool contracts_on_left_half_plane() const noexcept { return max_left_half_plane < 1.0; }
};

/// Samples rho(q) (nu == 0) or ||M(q)^nu||^{1/nu} (nu >= 1) on a grid.
/// Points where I - qL is singular are reported as +infinity.
inline RegionScan convergence_region_scan(const RealMatrix& L, const RealMatrix& U, const GridSpec& grid,
                                          unsigned nu = 0) {
  if (grid.n_re < 1 || grid.n_im < 1) throw Error(ErrorCode::InvalidArgument, "empty grid");
  RegionScan out;
  out.samples.reserve(static_cast<std::size_t>(grid.n_re) * grid.n_im);
  auto coord = [](double lo, double hi, unsigned n, unsigned k) {
    return n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
  };
  for (unsigned i = 0; i < grid.n_re; ++i) {
    const double re = coord(grid.re_min, grid.re_max, grid.n_re, i);
    for (unsigned j = 0; j < grid.n_im; ++j) {
      const double im = coord(grid.im_min, grid.im_max, grid.n_im, j);
      double value;
      try {
        const auto M = amplification_matrix(Complex(re, im), L, U);
        value = nu == 0 ? spectral_radius(M) : std::pow(inf_norm(mat_power(M, nu)), 1.0 / nu);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularShift) throw;
        value = std::numeric_limits<double>::infinity();
      }
      out.samples.push_back({re, im, value});
      if (re <= 0.0) out.max_left_half_plane = std::max(out.max_left_half_plane, value);
    }
  }
  return out;
}

}  // namespace radau

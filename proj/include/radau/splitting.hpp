#pragma once

// Auxiliary abscissae and the triangular splitting built on them.
//
// With P_hat the Legendre matrix at the auxiliary abscissae, the Crout
// factors of K = P_hat X_s P_hat^{-1} = L U have a constant diagonal d_s
// when the abscissae are chosen correctly. The inner iteration then needs a
// single factorization of (h d_s)^{-1} I - J.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "radau/error.hpp"
#include "radau/linalg.hpp"
#include "radau/tableau.hpp"

namespace radau {

/// Diagonal spread of L above which the abscissae are considered wrong.
inline constexpr double kPivotMismatchTol = 1e-8;

/// det(X_s) in closed form: 2^{1-s} / prod (4 i^2 - 1) over i = 2-eta, 4-eta,
/// ..., 2 floor(s/2) - eta, with eta = 1 for even s and 0 for odd s.
inline double det_x(unsigned s) {
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "det_x needs s >= 2");
  const int eta = (s % 2 == 0) ? 1 : 0;
  const int lo = 2 - eta;
  const int hi = 2 * static_cast<int>(s / 2) - eta;
  double prod = 1.0;
  for (int i = lo; i <= hi; i += 2) prod *= 4.0 * i * i - 1.0;
  return std::pow(2.0, 1.0 - static_cast<double>(s)) / prod;
}

/// The common Crout pivot d_s = det(X_s)^{1/s}.
inline double target_pivot(unsigned s) { return std::pow(det_x(s), 1.0 / static_cast<double>(s)); }

namespace detail {

struct AuxTableRow {
  unsigned s;
  std::array<std::string_view, 4> c_hat;  // first s-1 entries used
  std::string_view d;
};

inline constexpr std::array<AuxTableRow, 4> kAuxTable{{
    {2, {"", "", "", ""}, "0.40824829046386301636621401245098"},
    {3,
     {"0.18589230221764097222357873465176", "0.50022434784008286059148415923632", "", ""},
     "0.25543647746451770219954184281099"},
    {4,
     {"0.12661575733255931078112184952036", "0.34154548143311325099490740728171",
      "0.56937072098419698874387077046544", ""},
     "0.18575057999133599176307088298897"},
    {5,
     {"0.09527975140867214336447374571157", "0.28143874673988994521203045137949",
      "0.38152142820340929736570124768463", "0.60680555490108389442461323421422"},
     "0.14591154019899779261811749554182"},
}};

inline double parse_literal(std::string_view text) {
  const std::string buf(text);
  return std::strtod(buf.c_str(), nullptr);
}

inline const AuxTableRow& aux_row(unsigned s) {
  if (s < 2 || s > 5) {
    throw Error(ErrorCode::Unsupported, "tabulated abscissae exist for s = 2..5 only; use solve_aux");
  }
  return kAuxTable[s - 2];
}

}  // namespace detail

/// Tabulated auxiliary abscissae for s = 2..5; the last entry is 1.
inline std::vector<double> aux_abscissae(unsigned s) {
  const auto& row = detail::aux_row(s);
  std::vector<double> out(s, 1.0);
  if (s == 2) {
    const double r6 = std::sqrt(6.0);
    out[0] = (6.0 - r6) / (6.0 + 2.0 * r6);
  } else {
    for (unsigned i = 0; i + 1 < s; ++i) out[i] = detail::parse_literal(row.c_hat[i]);
  }
  return out;
}

/// Tabulated value of the common pivot (as printed, parsed to double).
inline double tabulated_pivot(unsigned s) { return detail::parse_literal(detail::aux_row(s).d); }

/// Crout factors of a triangular splitting together with the matrices used by
/// the fast inner sweep: L^{-1} = diag(pivots)^{-1} - S and C = U - I.
struct TriangularSplitting {
  RealMatrix L;
  RealMatrix U;
  std::vector<double> pivots;
  RealMatrix S;  // strictly lower
  RealMatrix C;  // strictly upper

  [[nodiscard]] unsigned stages() const noexcept { return static_cast<unsigned>(pivots.size()); }
};

inline TriangularSplitting make_triangular_splitting(const RealMatrix& K) {
  auto cf = crout_factor(K);
  const std::size_t s = K.rows();
  TriangularSplitting out;
  out.pivots = cf.pivots();
  const RealMatrix Linv = inverse(cf.L);
  out.S = RealMatrix(s, s);
  out.C = RealMatrix(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < i; ++j) out.S(i, j) = -Linv(i, j);
    for (std::size_t j = i + 1; j < s; ++j) out.C(i, j) = cf.U(i, j);
  }
  out.L = std::move(cf.L);
  out.U = std::move(cf.U);
  return out;
}

struct SplitData {
  unsigned s = 0;
  std::vector<double> c_hat;
  RealMatrix P_hat;
  RealMatrix K_hat;  // P_hat X_s P_hat^{-1}
  double d = 0.0;    // common pivot d_s
  TriangularSplitting tri;

  [[nodiscard]] const RealMatrix& L_hat() const noexcept { return tri.L; }
  [[nodiscard]] const RealMatrix& U_hat() const noexcept { return tri.U; }
  [[nodiscard]] const RealMatrix& S() const noexcept { return tri.S; }
  [[nodiscard]] const RealMatrix& C() const noexcept { return tri.C; }
};

namespace detail {

inline void check_abscissae(const std::vector<double>& c_hat) {
  const std::size_t s = c_hat.size();
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 auxiliary abscissae");
  if (c_hat.back() != 1.0) throw Error(ErrorCode::InvalidArgument, "last auxiliary abscissa must be 1");
  double prev = 0.0;
  for (double x : c_hat) {
    if (!(x > prev)) throw Error(ErrorCode::NonMonotonic, "auxiliary abscissae must satisfy 0 < c_1 < ... < c_s = 1");
    prev = x;
  }
}

inline RealMatrix aux_similarity(const std::vector<double>& c_hat, RealMatrix* P_hat_out = nullptr) {
  const auto s = static_cast<unsigned>(c_hat.size());
  RealMatrix P_hat = legendre_matrix(c_hat);
  RealMatrix K = P_hat * w_transform_matrix(s) * inverse(P_hat);
  if (P_hat_out) *P_hat_out = std::move(P_hat);
  return K;
}

}  // namespace detail

/// Diagonal of the Crout factor L of P_hat X_s P_hat^{-1}.
inline std::vector<double> crout_pivots_at(const std::vector<double>& c_hat) {
  return crout_factor(detail::aux_similarity(c_hat)).pivots();
}

inline SplitData build_split(unsigned s, const std::vector<double>& c_hat) {
  if (c_hat.size() != s) throw Error(ErrorCode::DimensionMismatch, "build_split: abscissae count != s");
  detail::check_abscissae(c_hat);
  SplitData out;
  out.s = s;
  out.c_hat = c_hat;
  out.K_hat = detail::aux_similarity(c_hat, &out.P_hat);
  out.tri = make_triangular_splitting(out.K_hat);
  out.d = target_pivot(s);
  const auto [lo, hi] = std::minmax_element(out.tri.pivots.begin(), out.tri.pivots.end());
  if (*hi - *lo > kPivotMismatchTol) {
    throw Error(ErrorCode::PivotMismatch,
                "Crout pivots spread " + std::to_string(*hi - *lo) + " exceeds tolerance");
  }
  // The sweep keys its factorizations on the pivots: one shared value, one LU.
  std::fill(out.tri.pivots.begin(), out.tri.pivots.end(), out.d);
  return out;
}

inline SplitData build_split(unsigned s) { return build_split(s, aux_abscissae(s)); }

/// Crout splitting of the Radau matrix A itself (distinct pivots).
inline TriangularSplitting crout_of_A(const CollocationTableau& tab) {
  return make_triangular_splitting(tab.A);
}

struct AuxSolveOptions {
  double tolerance = 1e-13;
  double fd_step = 1e-7;
  int max_iterations = 100;
};

struct AuxSolveResult {
  std::vector<double> c_hat;
  double residual = 0.0;
  int iterations = 0;
};

/// Solves pivot_j(c_hat) = d_s, j = 1..s-1, for the free abscissae by damped
/// Newton with a central-difference Jacobian. c_hat_s stays fixed at 1.
inline AuxSolveResult solve_aux(unsigned s, std::vector<double> guess, const AuxSolveOptions& opt = {}) {
  if (s < 2) throw Error(ErrorCode::InvalidArgument, "solve_aux needs s >= 2");
  if (guess.size() != s) throw Error(ErrorCode::DimensionMismatch, "solve_aux: guess size != s");
  guess.back() = 1.0;
  detail::check_abscissae(guess);
  const double d = target_pivot(s);
  const std::size_t n = s - 1;

  auto residual = [&](const std::vector<double>& x) {
    const auto piv = crout_pivots_at(x);
    std::vector<double> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = piv[j] - d;
    return r;
  };
  auto norm = [](const std::vector<double>& r) {
    double out = 0.0;
    for (double v : r) out = std::max(out, std::abs(v));
    return out;
  };
  auto ordered = [](const std::vector<double>& x) {
    double prev = 0.0;
    for (double v : x) {
      if (!(v > prev)) return false;
      prev = v;
    }
    return true;
  };

  std::vector<double> x = guess;
  std::vector<double> r = residual(x);
  double rn = norm(r);
  AuxSolveResult result;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    result.iterations = iter;
    if (rn <= opt.tolerance) break;
    RealMatrix jac(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      auto xp = x, xm = x;
      xp[k] += opt.fd_step;
      xm[k] -= opt.fd_step;
      const auto rp = residual(xp);
      const auto rm = residual(xm);
      for (std::size_t j = 0; j < n; ++j) jac(j, k) = (rp[j] - rm[j]) / (2.0 * opt.fd_step);
    }
    std::vector<double> neg(n);
    for (std::size_t j = 0; j < n; ++j) neg[j] = -r[j];
    const auto dx = lu_solve(lu_factor(jac), std::span<const double>(neg));

    double lambda = 1.0;
    bool moved = false;
    bool stayed_ordered = false;
    while (lambda >= 1e-10) {
      auto trial = x;
      for (std::size_t k = 0; k < n; ++k) trial[k] += lambda * dx[k];
      if (ordered(trial)) {
        stayed_ordered = true;
        const auto rt = residual(trial);
        const double rtn = norm(rt);
        if (rtn < (1.0 - 1e-4 * lambda) * rn || rtn <= opt.tolerance) {
          x = std::move(trial);
          r = rt;
          rn = rtn;
          moved = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!moved) {
      if (!stayed_ordered) {
        throw Error(ErrorCode::NonMonotonic, "Newton iterate left the ordered simplex");
      }
      // Newton stalls at the roundoff floor; accept if already tight enough.
      break;
    }
  }
  result.c_hat = x;
  result.residual = rn;
  if (!(rn <= opt.tolerance)) {
    throw Error(ErrorCode::NoConvergence, "solve_aux best residual " + std::to_string(rn));
  }
  return result;
}

}  // namespace radau

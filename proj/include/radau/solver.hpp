#pragma once

// Radau IIA integrator with three interchangeable linear-solve backends for
// the simplified Newton iteration:
//
//   FullLu        factor I - h A (x) J, dimension s*m
//   SplitLowRank  low-rank stage variables, inner triangular sweeps with a
//                 single LU of (h d_s)^{-1} I - J
//   CroutOfA      inner triangular sweeps on the Crout factors of A itself,
//                 one LU per distinct pivot
//
// The inner sweep follows the recurrence
//   w_0 = R
//   solve [(h p_i)^{-1} I - J] D_i = h^{-1} sum_{j<i} S_ij D_j + w_i =: v_i
//   w   = (C (x) I) [(h p)^{-1} D - v] + R
// which needs the LU solves and O(s^2 m) extra work per sweep, no products
// with J.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "radau/error.hpp"
#include "radau/ivp.hpp"
#include "radau/linalg.hpp"
#include "radau/splitting.hpp"
#include "radau/tableau.hpp"

namespace radau {

enum class Backend { FullLu, SplitLowRank, CroutOfA };

constexpr std::string_view to_string(Backend b) noexcept {
  switch (b) {
    case Backend::FullLu: return "full";
    case Backend::SplitLowRank: return "split";
    case Backend::CroutOfA: return "crout-a";
  }
  return "?";
}

struct NewtonConfig {
  unsigned max_outer = 10;
  unsigned inner_sweeps = 2;         // nu
  bool inner_to_convergence = false;  // sweep until stationary, capped by inner_cap
  unsigned inner_cap = 50;
  double kappa = 1e-2;
  double rtol = 1e-8;
  double atol = 1e-8;
  Backend backend = Backend::SplitLowRank;

  void validate() const {
    if (inner_sweeps < 1) throw Error(ErrorCode::InvalidArgument, "inner sweeps must be >= 1");
    if (!(kappa > 0.0 && kappa < 1.0)) throw Error(ErrorCode::InvalidArgument, "kappa must lie in (0,1)");
    if (max_outer < 1) throw Error(ErrorCode::InvalidArgument, "max_outer must be >= 1");
    if (!(rtol >= 0.0 && atol >= 0.0 && rtol + atol > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "tolerances must be nonnegative and not both zero");
    }
  }
};

struct StepStats {
  std::size_t steps = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t f_evals = 0;
  std::size_t jac_evals = 0;
  std::size_t lu_factorizations = 0;
  std::size_t inner_sweeps_total = 0;
  std::size_t lu_dim_max = 0;  // largest matrix dimension factored

  StepStats& operator+=(const StepStats& o) {
    steps += o.steps;
    accepted += o.accepted;
    rejected += o.rejected;
    f_evals += o.f_evals;
    jac_evals += o.jac_evals;
    lu_factorizations += o.lu_factorizations;
    inner_sweeps_total += o.inner_sweeps_total;
    lu_dim_max = std::max(lu_dim_max, o.lu_dim_max);
    return *this;
  }
};

/// s blocks of dimension m, stored contiguously.
class StageVector {
 public:
  StageVector() = default;
  StageVector(unsigned s, std::size_t m, double fill = 0.0) : s_(s), m_(m), data_(s * m, fill) {}

  static StageVector broadcast(unsigned s, std::span<const double> y) {
    StageVector out(s, y.size());
    for (unsigned i = 0; i < s; ++i) std::copy(y.begin(), y.end(), out.block(i).begin());
    return out;
  }

  [[nodiscard]] unsigned stages() const noexcept { return s_; }
  [[nodiscard]] std::size_t dim() const noexcept { return m_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

  std::span<double> block(unsigned i) noexcept { return {data_.data() + i * m_, m_}; }
  std::span<const double> block(unsigned i) const noexcept { return {data_.data() + i * m_, m_}; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  double& operator[](std::size_t k) noexcept { return data_[k]; }
  double operator[](std::size_t k) const noexcept { return data_[k]; }

  StageVector& operator+=(const StageVector& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  [[nodiscard]] double max_abs() const noexcept {
    double out = 0.0;
    for (double v : data_) out = std::max(out, std::abs(v));
    return out;
  }

 private:
  unsigned s_ = 0;
  std::size_t m_ = 0;
  std::vector<double> data_;
};

/// (M (x) I) x for an s x s matrix M acting blockwise.
inline StageVector kron_apply(const RealMatrix& M, const StageVector& x) {
  StageVector out(static_cast<unsigned>(M.rows()), x.dim());
  for (unsigned i = 0; i < M.rows(); ++i) {
    auto oi = out.block(i);
    for (unsigned j = 0; j < M.cols(); ++j) {
      const double a = M(i, j);
      if (a == 0.0) continue;
      const auto xj = x.block(j);
      for (std::size_t k = 0; k < oi.size(); ++k) oi[k] += a * xj[k];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inner sweep

/// LU factors of (h p)^{-1} I - J, one per distinct pivot p.
struct SweepFactors {
  double h = 0.0;
  std::vector<double> pivots;             // per stage
  std::vector<LuFactors<double>> lus;     // per distinct pivot
  std::vector<std::size_t> stage_lu;      // stage -> index into lus
};

inline SweepFactors factor_sweep(const TriangularSplitting& tri, double h, const RealMatrix& J) {
  SweepFactors out;
  out.h = h;
  out.pivots = tri.pivots;
  std::vector<double> distinct;
  for (double p : tri.pivots) {
    auto it = std::find(distinct.begin(), distinct.end(), p);
    if (it == distinct.end()) {
      distinct.push_back(p);
      RealMatrix M = -1.0 * J;
      for (std::size_t i = 0; i < M.rows(); ++i) M(i, i) += 1.0 / (h * p);
      out.lus.push_back(lu_factor(std::move(M)));
      it = distinct.end() - 1;
    }
    out.stage_lu.push_back(static_cast<std::size_t>(it - distinct.begin()));
  }
  return out;
}

/// One sweep: given w, overwrite delta with the new iterate and w with the
/// right-hand side for the next sweep.
inline void sweep_once(const TriangularSplitting& tri, const SweepFactors& fac, const StageVector& R,
                       StageVector& w, StageVector& delta) {
  const unsigned s = tri.stages();
  const std::size_t m = R.dim();
  const double inv_h = 1.0 / fac.h;
  StageVector v(s, m);
  for (unsigned i = 0; i < s; ++i) {
    auto vi = v.block(i);
    const auto wi = w.block(i);
    std::copy(wi.begin(), wi.end(), vi.begin());
    for (unsigned j = 0; j < i; ++j) {
      const double a = tri.S(i, j) * inv_h;
      if (a == 0.0) continue;
      const auto dj = delta.block(j);
      for (std::size_t k = 0; k < m; ++k) vi[k] += a * dj[k];
    }
    auto di = delta.block(i);
    std::copy(vi.begin(), vi.end(), di.begin());
    lu_solve_inplace(fac.lus[fac.stage_lu[i]], di);
  }
  // (I (x) J) delta recovered as (h p)^{-1} delta - v
  StageVector jd(s, m);
  for (unsigned j = 0; j < s; ++j) {
    const double a = 1.0 / (fac.h * fac.pivots[j]);
    auto out = jd.block(j);
    const auto dj = delta.block(j);
    const auto vj = v.block(j);
    for (std::size_t k = 0; k < m; ++k) out[k] = a * dj[k] - vj[k];
  }
  for (unsigned i = 0; i < s; ++i) {
    auto wi = w.block(i);
    const auto ri = R.block(i);
    std::copy(ri.begin(), ri.end(), wi.begin());
    for (unsigned j = i + 1; j < s; ++j) {
      const double c = tri.C(i, j);
      if (c == 0.0) continue;
      const auto jj = jd.block(j);
      for (std::size_t k = 0; k < m; ++k) wi[k] += c * jj[k];
    }
  }
}

struct SweepResult {
  StageVector delta;
  unsigned sweeps = 0;
};

/// nu sweeps from delta_0 = 0, w_0 = R. With to_convergence, sweeps continue
/// (up to cap) until the iterate stops changing.
inline SweepResult inner_sweep(const TriangularSplitting& tri, const SweepFactors& fac, const StageVector& R,
                               unsigned nu, bool to_convergence = false, unsigned cap = 50) {
  SweepResult out{StageVector(R.stages(), R.dim()), 0};
  StageVector w = R;
  const unsigned limit = to_convergence ? cap : nu;
  StageVector previous;
  for (unsigned it = 0; it < limit; ++it) {
    if (to_convergence) previous = out.delta;
    sweep_once(tri, fac, R, w, out.delta);
    ++out.sweeps;
    if (to_convergence) {
      double change = 0.0;
      for (std::size_t k = 0; k < out.delta.size(); ++k) {
        change = std::max(change, std::abs(out.delta[k] - previous[k]));
      }
      if (change <= 4.0 * std::numeric_limits<double>::epsilon() * out.delta.max_abs()) break;
    }
  }
  return out;
}

/// R = -(1/h) (L^{-1} (x) I) G with L^{-1} = diag(p)^{-1} - S.
inline StageVector sweep_rhs(const TriangularSplitting& tri, double h, const StageVector& G) {
  const unsigned s = tri.stages();
  StageVector R(s, G.dim());
  const double inv_h = 1.0 / h;
  for (unsigned i = 0; i < s; ++i) {
    auto ri = R.block(i);
    const auto gi = G.block(i);
    const double a = -inv_h / tri.pivots[i];
    for (std::size_t k = 0; k < ri.size(); ++k) ri[k] = a * gi[k];
    for (unsigned j = 0; j < i; ++j) {
      const double b = inv_h * tri.S(i, j);
      if (b == 0.0) continue;
      const auto gj = G.block(j);
      for (std::size_t k = 0; k < ri.size(); ++k) ri[k] += b * gj[k];
    }
  }
  return R;
}

// ---------------------------------------------------------------------------
// Stage system

/// Nonlinear stage system in working variables u:
///   G(u) = u - e (x) y0 - h (K (x) I) f((T (x) I) u)
/// with Newton matrix coefficient N = K T.
struct StageSystem {
  unsigned s = 0;
  RealMatrix K;
  RealMatrix T;
  bool identity_transform = true;
  RealMatrix N;
  TriangularSplitting tri;
  Backend backend = Backend::FullLu;
};

inline StageSystem make_stage_system(const CollocationTableau& tab, const SplitData& split, Backend backend) {
  StageSystem sys;
  sys.s = tab.s;
  sys.backend = backend;
  switch (backend) {
    case Backend::FullLu:
      sys.K = tab.A;
      sys.T = RealMatrix::identity(tab.s);
      sys.N = tab.A;
      break;
    case Backend::CroutOfA:
      sys.K = tab.A;
      sys.T = RealMatrix::identity(tab.s);
      sys.N = tab.A;
      sys.tri = crout_of_A(tab);
      break;
    case Backend::SplitLowRank: {
      if (split.s != tab.s) throw Error(ErrorCode::DimensionMismatch, "tableau and split disagree on s");
      const RealMatrix Pinv = inverse(tab.P);
      sys.K = split.P_hat * tab.X * Pinv;
      sys.T = tab.P * inverse(split.P_hat);
      sys.identity_transform = false;
      sys.N = split.K_hat;
      sys.tri = split.tri;
      break;
    }
  }
  return sys;
}

inline StageVector to_original_stages(const StageSystem& sys, const StageVector& u) {
  return sys.identity_transform ? u : kron_apply(sys.T, u);
}

inline StageVector stage_residual(const StageSystem& sys, const IvpProblem& problem, std::span<const double> y0,
                                  double h, const StageVector& u, StepStats& stats) {
  const StageVector Y = to_original_stages(sys, u);
  StageVector F(sys.s, problem.m);
  for (unsigned i = 0; i < sys.s; ++i) problem.f(Y.block(i), F.block(i));
  stats.f_evals += sys.s;
  for (double v : F.data()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "right-hand side returned a non-finite value");
  }
  StageVector G = kron_apply(sys.K, F);
  for (unsigned i = 0; i < sys.s; ++i) {
    auto gi = G.block(i);
    const auto ui = u.block(i);
    for (std::size_t k = 0; k < gi.size(); ++k) gi[k] = ui[k] - y0[k] - h * gi[k];
  }
  return G;
}

/// G_hat(y_hat) for the low-rank formulation.
inline StageVector residual(const CollocationTableau& tab, const SplitData& split, std::span<const double> y0,
                            double h, const StageVector& y_hat, const IvpProblem& problem) {
  StepStats scratch;
  return stage_residual(make_stage_system(tab, split, Backend::SplitLowRank), problem, y0, h, y_hat, scratch);
}

struct NewtonResult {
  StageVector work;    // iterate in the backend's working variables
  StageVector stages;  // original collocation stages y_1..y_s
  bool converged = false;
  unsigned iterations = 0;
  double last_increment = 0.0;  // scaled norm
  StepStats stats;

  /// Advancing value: the last stage (c_s = 1, and c_hat_s = 1 for the low-rank form).
  [[nodiscard]] std::vector<double> advance() const {
    const auto last = work.block(work.stages() - 1);
    return {last.begin(), last.end()};
  }
};

/// Solves the stage equations of one step of size h. Owns its stage system;
/// factorizations are created per (J, h) and reused across solves.
class RadauStepper {
 public:
  struct Factorization {
    double h = 0.0;
    std::vector<LuFactors<double>> full;  // FullLu only
    SweepFactors sweep;                   // sweep backends
  };

  RadauStepper(const CollocationTableau& tab, const SplitData& split, NewtonConfig cfg)
      : sys_(make_stage_system(tab, split, cfg.backend)), cfg_(cfg) {
    cfg_.validate();
  }

  [[nodiscard]] const NewtonConfig& config() const noexcept { return cfg_; }
  NewtonConfig& config() noexcept { return cfg_; }
  [[nodiscard]] const StageSystem& system() const noexcept { return sys_; }

  Factorization factor(const RealMatrix& J, double h, StepStats& stats) const {
    Factorization fac;
    fac.h = h;
    const std::size_t m = J.rows();
    if (sys_.backend == Backend::FullLu) {
      const unsigned s = sys_.s;
      RealMatrix big(s * m, s * m);
      for (unsigned i = 0; i < s; ++i)
        for (unsigned j = 0; j < s; ++j) {
          const double a = -h * sys_.N(i, j);
          for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) big(i * m + r, j * m + c) = a * J(r, c);
        }
      for (std::size_t k = 0; k < s * m; ++k) big(k, k) += 1.0;
      fac.full.push_back(lu_factor(std::move(big)));
      stats.lu_factorizations += 1;
      stats.lu_dim_max = std::max(stats.lu_dim_max, s * m);
    } else {
      fac.sweep = factor_sweep(sys_.tri, h, J);
      stats.lu_factorizations += fac.sweep.lus.size();
      stats.lu_dim_max = std::max(stats.lu_dim_max, m);
    }
    return fac;
  }

  NewtonResult solve(const IvpProblem& problem, std::span<const double> y0, const Factorization& fac) const {
    const double h = fac.h;
    NewtonResult res;
    res.work = StageVector::broadcast(sys_.s, y0);
    std::vector<double> scale(problem.m);
    for (std::size_t k = 0; k < problem.m; ++k) scale[k] = cfg_.atol + cfg_.rtol * std::abs(y0[k]);

    double previous = std::numeric_limits<double>::infinity();
    int growth = 0;
    for (unsigned it = 1; it <= cfg_.max_outer; ++it) {
      const StageVector G = stage_residual(sys_, problem, y0, h, res.work, res.stats);
      StageVector delta;
      if (sys_.backend == Backend::FullLu) {
        delta = StageVector(sys_.s, problem.m);
        for (std::size_t k = 0; k < G.size(); ++k) delta[k] = -G[k];
        lu_solve_inplace(fac.full.front(), delta.data());
      } else {
        const StageVector R = sweep_rhs(sys_.tri, h, G);
        auto sw = inner_sweep(sys_.tri, fac.sweep, R, cfg_.inner_sweeps, cfg_.inner_to_convergence, cfg_.inner_cap);
        res.stats.inner_sweeps_total += sw.sweeps;
        delta = std::move(sw.delta);
      }
      res.work += delta;
      res.iterations = it;

      double sum = 0.0;
      for (unsigned i = 0; i < sys_.s; ++i) {
        const auto d = delta.block(i);
        for (std::size_t k = 0; k < d.size(); ++k) sum += (d[k] / scale[k]) * (d[k] / scale[k]);
      }
      const double norm = std::sqrt(sum / static_cast<double>(delta.size()));
      res.last_increment = norm;
      const bool at_roundoff =
          delta.max_abs() <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, res.work.max_abs());
      if (!std::isfinite(norm)) throw Error(ErrorCode::NonFinite, "Newton increment is not finite");
      if (norm <= cfg_.kappa || at_roundoff) {
        res.converged = true;
        break;
      }
      if (norm > previous) {
        if (++growth >= 2) throw Error(ErrorCode::NewtonDiverged, "increment grew twice in a row");
      } else {
        growth = 0;
      }
      previous = norm;
    }
    res.stages = to_original_stages(sys_, res.work);
    return res;
  }

 private:
  StageSystem sys_;
  NewtonConfig cfg_;
};

/// One simplified Newton solve with J = f'(y0) and initial guess e (x) y0.
inline NewtonResult newton_solve(const CollocationTableau& tab, const SplitData& split, const IvpProblem& problem,
                                 std::span<const double> y0, double h, const NewtonConfig& cfg) {
  RadauStepper stepper(tab, split, cfg);
  StepStats stats;
  const RealMatrix J = problem.jacobian(y0);
  stats.jac_evals += 1;
  const auto fac = stepper.factor(J, h, stats);
  auto res = stepper.solve(problem, y0, fac);
  stats += res.stats;
  res.stats = stats;
  return res;
}

struct IntegrationResult {
  std::vector<double> y;
  double t = 0.0;
  StepStats stats;
};

/// n_steps steps of size h with a fresh Jacobian and factorization per step.
inline IntegrationResult integrate_fixed(const IvpProblem& problem, const CollocationTableau& tab,
                                         const SplitData& split, double h, std::size_t n_steps,
                                         const NewtonConfig& cfg) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step size must be positive");
  RadauStepper stepper(tab, split, cfg);
  IntegrationResult out{problem.y0, problem.t0, {}};
  for (std::size_t n = 0; n < n_steps; ++n) {
    const RealMatrix J = problem.jacobian(out.y);
    out.stats.jac_evals += 1;
    const auto fac = stepper.factor(J, h, out.stats);
    const auto res = stepper.solve(problem, out.y, fac);
    out.stats += res.stats;
    out.stats.steps += 1;
    if (!res.converged) {
      out.stats.rejected += 1;
      throw Error(ErrorCode::NewtonDiverged, "no convergence in fixed step " + std::to_string(n));
    }
    out.stats.accepted += 1;
    out.y = res.advance();
    out.t = problem.t0 + static_cast<double>(n + 1) * h;
  }
  return out;
}

/// Step-doubling error control: each attempt takes one step of size h and two
/// of size h/2 from a single Jacobian; the two-half-step value advances.
inline IntegrationResult integrate_adaptive(const IvpProblem& problem, const CollocationTableau& tab,
                                            const SplitData& split, double t_end, double rtol, double atol,
                                            double h0, NewtonConfig cfg) {
  if (!(rtol > 0.0 && atol > 0.0 && h0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rtol, atol and h0 must be positive");
  }
  if (!(t_end > problem.t0)) throw Error(ErrorCode::InvalidArgument, "t_end must exceed t0");
  cfg.rtol = rtol;
  cfg.atol = atol;
  RadauStepper stepper(tab, split, cfg);

  const double span = t_end - problem.t0;
  const double h_min = 1e-14 * span;
  const double order = 2.0 * tab.s - 1.0;
  const double denom = std::pow(2.0, order) - 1.0;
  const double expo = -1.0 / (2.0 * tab.s);

  IntegrationResult out{problem.y0, problem.t0, {}};
  double h = h0;
  bool after_reject = false;  // no growth on the step following a rejection
  while (t_end - out.t > 1e-15 * span) {
    const double remaining = t_end - out.t;
    const bool last = h >= remaining;
    if (last) h = remaining;
    if (h < h_min) throw Error(ErrorCode::StepSizeUnderflow, "step size fell below h_min at t = " + std::to_string(out.t));

    out.stats.steps += 1;
    const RealMatrix J = problem.jacobian(out.y);
    out.stats.jac_evals += 1;

    bool ok = true;
    std::vector<double> coarse, fine;
    try {
      const auto fac_h = stepper.factor(J, h, out.stats);
      const auto big = stepper.solve(problem, out.y, fac_h);
      out.stats += big.stats;
      const auto fac_half = stepper.factor(J, 0.5 * h, out.stats);
      const auto first = stepper.solve(problem, out.y, fac_half);
      out.stats += first.stats;
      ok = big.converged && first.converged;
      if (ok) {
        const auto mid = first.advance();
        const auto second = stepper.solve(problem, mid, fac_half);
        out.stats += second.stats;
        ok = second.converged;
        coarse = big.advance();
        fine = second.advance();
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NewtonDiverged && e.code() != ErrorCode::NonFinite &&
          e.code() != ErrorCode::SingularMatrix) {
        throw;
      }
      ok = false;
    }
    if (!ok) {
      out.stats.rejected += 1;
      h *= 0.5;
      after_reject = true;
      continue;
    }

    double sum = 0.0;
    for (std::size_t k = 0; k < problem.m; ++k) {
      const double sc = atol + rtol * std::max(std::abs(out.y[k]), std::abs(fine[k]));
      const double e = (fine[k] - coarse[k]) / sc;
      sum += e * e;
    }
    const double est = std::sqrt(sum / static_cast<double>(problem.m)) / denom;
    double factor = est == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(est, expo)));
    if (est <= 1.0) {
      out.stats.accepted += 1;
      out.y = std::move(fine);
      out.t = last ? t_end : out.t + h;
      if (after_reject) factor = std::min(factor, 1.0);
      after_reject = false;
    } else {
      out.stats.rejected += 1;
      factor = std::min(factor, 1.0);
      after_reject = true;
    }
    h *= factor;
  }
  return out;
}

/// Mixed-error significant correct digits, capped at 16.
inline double mescd(std::span<const double> y, std::span<const double> yref) {
  if (y.size() != yref.size()) throw Error(ErrorCode::DimensionMismatch, "mescd");
  double worst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    worst = std::max(worst, std::abs(y[i] - yref[i]) / (1.0 + std::abs(yref[i])));
  }
  if (worst == 0.0) return 16.0;
  return std::min(16.0, -std::log10(worst));
}

/// One step of an arbitrary implicit Runge-Kutta tableau solved with full
/// Newton (Jacobians re-evaluated at every iterate) to roundoff.
inline std::vector<double> implicit_rk_step(const ButcherTableau& tab, const IvpProblem& problem,
                                            std::span<const double> y0, double h, unsigned max_iter = 50) {
  const auto S = static_cast<unsigned>(tab.stages());
  const std::size_t m = problem.m;
  StageVector Y = StageVector::broadcast(S, y0);
  StageVector F(S, m);
  for (unsigned it = 0; it < max_iter; ++it) {
    for (unsigned i = 0; i < S; ++i) problem.f(Y.block(i), F.block(i));
    const StageVector AF = kron_apply(tab.A, F);
    std::vector<double> rhs(S * m);
    for (unsigned i = 0; i < S; ++i)
      for (std::size_t k = 0; k < m; ++k) rhs[i * m + k] = -(Y.block(i)[k] - y0[k] - h * AF.block(i)[k]);

    RealMatrix big = RealMatrix::identity(S * m);
    for (unsigned j = 0; j < S; ++j) {
      const RealMatrix Jj = problem.jacobian(Y.block(j));
      for (unsigned i = 0; i < S; ++i) {
        const double a = h * tab.A(i, j);
        if (a == 0.0) continue;
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < m; ++c) big(i * m + r, j * m + c) -= a * Jj(r, c);
      }
    }
    lu_solve_inplace(lu_factor(std::move(big)), std::span<double>(rhs));
    double dmax = 0.0;
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      Y[k] += rhs[k];
      dmax = std::max(dmax, std::abs(rhs[k]));
    }
    if (dmax <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, Y.max_abs())) break;
  }
  for (unsigned i = 0; i < S; ++i) problem.f(Y.block(i), F.block(i));
  std::vector<double> y1(y0.begin(), y0.end());
  for (unsigned i = 0; i < S; ++i)
    for (std::size_t k = 0; k < m; ++k) y1[k] += h * tab.b[i] * F.block(i)[k];
  return y1;
}

}  // namespace radau

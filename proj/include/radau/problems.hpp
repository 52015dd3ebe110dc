#pragma once

// Bundled test problems. Names and parameters follow the `name[:p1,p2]`
// syntax accepted by make_problem():
//
//   test_equation:lambda            y' = lambda y                     (m = 1)
//   test_equation:a,b               lambda = a + ib as a real 2x2 block (m = 2)
//   prothero_robinson:lambda        y' = lambda (y - cos t) - sin t    (m = 2, t appended)
//   van_der_pol:eps                 relaxation oscillator              (m = 2)
//   robertson                       chemical kinetics                  (m = 3)
//   diffusion_chain:m               method-of-lines heat equation      (m interior points)

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radau/error.hpp"
#include "radau/ivp.hpp"

namespace radau {

enum class ReferenceSource { ClosedForm, Pinned, None };

struct ProblemSpec {
  IvpProblem problem;
  double t_end = 1.0;
  double h0 = 1e-3;
  std::string stiffness;
  ReferenceSource source = ReferenceSource::None;
  std::vector<double> pinned;  // reference state at t_end when source == Pinned

  [[nodiscard]] std::optional<std::vector<double>> reference_at_end() const {
    switch (source) {
      case ReferenceSource::ClosedForm: return problem.reference(t_end);
      case ReferenceSource::Pinned: return pinned;
      case ReferenceSource::None: return std::nullopt;
    }
    return std::nullopt;
  }
};

inline ProblemSpec test_equation(double lambda) {
  ProblemSpec spec;
  auto& p = spec.problem;
  p.name = "test_equation";
  p.m = 1;
  p.y0 = {1.0};
  p.f = [lambda](std::span<const double> y, std::span<double> dy) { dy[0] = lambda * y[0]; };
  p.jac = [lambda](std::span<const double>, RealMatrix& J) { J(0, 0) = lambda; };
  p.reference = [lambda](double t) { return std::vector<double>{std::exp(lambda * t)}; };
  spec.t_end = 1.0;
  spec.h0 = 1e-3;
  spec.stiffness = lambda < -1e3 ? "stiff" : "nonstiff";
  spec.source = ReferenceSource::ClosedForm;
  return spec;
}

/// lambda = a + ib embedded as y' = [[a, -b], [b, a]] y.
inline ProblemSpec test_equation(double a, double b) {
  ProblemSpec spec;
  auto& p = spec.problem;
  p.name = "test_equation";
  p.m = 2;
  p.y0 = {1.0, 0.0};
  p.f = [a, b](std::span<const double> y, std::span<double> dy) {
    dy[0] = a * y[0] - b * y[1];
    dy[1] = b * y[0] + a * y[1];
  };
  p.jac = [a, b](std::span<const double>, RealMatrix& J) {
    J(0, 0) = a;
    J(0, 1) = -b;
    J(1, 0) = b;
    J(1, 1) = a;
  };
  p.reference = [a, b](double t) {
    const double g = std::exp(a * t);
    return std::vector<double>{g * std::cos(b * t), g * std::sin(b * t)};
  };
  spec.t_end = 1.0;
  spec.h0 = 1e-3;
  spec.stiffness = std::hypot(a, b) > 1e3 ? "stiff" : "nonstiff";
  spec.source = ReferenceSource::ClosedForm;
  return spec;
}

/// y' = lambda (y - cos t) - sin t with exact solution cos t; state (y, t).
inline ProblemSpec prothero_robinson(double lambda) {
  ProblemSpec spec;
  auto& p = spec.problem;
  p.name = "prothero_robinson";
  p.m = 2;
  p.y0 = {1.0, 0.0};
  p.f = [lambda](std::span<const double> y, std::span<double> dy) {
    dy[0] = lambda * (y[0] - std::cos(y[1])) - std::sin(y[1]);
    dy[1] = 1.0;
  };
  p.jac = [lambda](std::span<const double> y, RealMatrix& J) {
    J(0, 0) = lambda;
    J(0, 1) = lambda * std::sin(y[1]) - std::cos(y[1]);
    J(1, 0) = 0.0;
    J(1, 1) = 0.0;
  };
  p.reference = [](double t) { return std::vector<double>{std::cos(t), t}; };
  spec.t_end = 2.0;
  spec.h0 = 1e-3;
  spec.stiffness = lambda < -1e2 ? "stiff" : "nonstiff";
  spec.source = ReferenceSource::ClosedForm;
  return spec;
}

namespace detail {
// Self-generated with the full-LU backend, s = 5, rtol = atol = 1e-13.
inline const std::vector<double> kVanDerPolReference{1.7061674375429041, -0.89281001655141157};
inline const std::vector<double> kRobertsonReference{0.71582706871940271, 9.1855347645614692e-06, 0.28416374574583286};
inline constexpr double kVanDerPolDefaultEps = 1e-6;
}  // namespace detail

inline ProblemSpec van_der_pol(double eps = detail::kVanDerPolDefaultEps) {
  ProblemSpec spec;
  auto& p = spec.problem;
  p.name = "van_der_pol";
  p.m = 2;
  p.y0 = {2.0, -0.66};
  p.f = [eps](std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = ((1.0 - y[0] * y[0]) * y[1] - y[0]) / eps;
  };
  p.jac = [eps](std::span<const double> y, RealMatrix& J) {
    J(0, 0) = 0.0;
    J(0, 1) = 1.0;
    J(1, 0) = (-2.0 * y[0] * y[1] - 1.0) / eps;
    J(1, 1) = (1.0 - y[0] * y[0]) / eps;
  };
  spec.t_end = 2.0;
  spec.h0 = 1e-6;
  spec.stiffness = "stiff";
  if (eps == detail::kVanDerPolDefaultEps) {
    spec.source = ReferenceSource::Pinned;
    spec.pinned = detail::kVanDerPolReference;
  }
  return spec;
}

inline ProblemSpec robertson() {
  ProblemSpec spec;
  auto& p = spec.problem;
  p.name = "robertson";
  p.m = 3;
  p.y0 = {1.0, 0.0, 0.0};
  p.f = [](std::span<const double> y, std::span<double> dy) {
    dy[0] = -0.04 * y[0] + 1e4 * y[1] * y[2];
    dy[2] = 3e7 * y[1] * y[1];
    dy[1] = -dy[0] - dy[2];
  };
  p.jac = [](std::span<const double> y, RealMatrix& J) {
    J(0, 0) = -0.04;
    J(0, 1) = 1e4 * y[2];
    J(0, 2) = 1e4 * y[1];
    J(2, 0) = 0.0;
    J(2, 1) = 6e7 * y[1];
    J(2, 2) = 0.0;
    for (int k = 0; k < 3; ++k) J(1, k) = -J(0, k) - J(2, k);
  };
  spec.t_end = 40.0;
  spec.h0 = 1e-6;
  spec.stiffness = "stiff";
  spec.source = ReferenceSource::Pinned;
  spec.pinned = detail::kRobertsonReference;
  return spec;
}

/// u_t = u_xx on (0,1), zero Dirichlet data, m interior points. The initial
/// profile mixes the modes 1, 3 and m so the exact semi-discrete solution is
/// known: sum_k a_k exp(mu_k t) sin(k pi x_j).
inline ProblemSpec diffusion_chain(std::size_t m = 80) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "diffusion_chain needs m >= 1");
  ProblemSpec spec;
  auto& p = spec.problem;
  p.name = "diffusion_chain";
  p.m = m;
  const double n1 = static_cast<double>(m + 1);
  const double scale = n1 * n1;
  struct Mode {
    double k;
    double amplitude;
  };
  std::vector<Mode> modes{{1.0, 1.0}, {3.0, 0.5}};
  if (m > 3) modes.push_back({static_cast<double>(m), 0.1});
  auto profile = [=](double t) {
    std::vector<double> u(m, 0.0);
    for (const auto& md : modes) {
      const double sn = std::sin(md.k * std::numbers::pi / (2.0 * n1));
      const double mu = -4.0 * scale * sn * sn;
      const double g = md.amplitude * std::exp(mu * t);
      for (std::size_t j = 0; j < m; ++j) {
        u[j] += g * std::sin(md.k * std::numbers::pi * static_cast<double>(j + 1) / n1);
      }
    }
    return u;
  };
  p.y0 = profile(0.0);
  p.f = [m, scale](std::span<const double> y, std::span<double> dy) {
    for (std::size_t j = 0; j < m; ++j) {
      const double left = j > 0 ? y[j - 1] : 0.0;
      const double right = j + 1 < m ? y[j + 1] : 0.0;
      dy[j] = scale * (left - 2.0 * y[j] + right);
    }
  };
  p.jac = [m, scale](std::span<const double>, RealMatrix& J) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) J(j, k) = 0.0;
      J(j, j) = -2.0 * scale;
      if (j > 0) J(j, j - 1) = scale;
      if (j + 1 < m) J(j, j + 1) = scale;
    }
  };
  p.reference = profile;
  spec.t_end = 0.5;
  spec.h0 = 1e-4;
  spec.stiffness = "stiff";
  spec.source = ReferenceSource::ClosedForm;
  return spec;
}

namespace detail {

inline std::vector<double> parse_params(std::string_view text) {
  std::vector<double> out;
  for (;;) {
    const auto comma = text.find(',');
    const std::string item(text.substr(0, comma));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(ErrorCode::InvalidArgument, "bad problem parameter '" + item + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

/// Looks up a problem by `name[:params]`.
inline ProblemSpec make_problem(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const auto params =
      colon == std::string_view::npos ? std::vector<double>{} : detail::parse_params(spec.substr(colon + 1));
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi) {
      throw Error(ErrorCode::InvalidArgument, "wrong number of parameters for " + std::string(name));
    }
  };
  if (name == "test_equation") {
    arity(0, 2);
    if (params.size() == 2) return test_equation(params[0], params[1]);
    return test_equation(params.empty() ? -1.0 : params[0]);
  }
  if (name == "prothero_robinson") {
    arity(0, 1);
    return prothero_robinson(params.empty() ? -1e4 : params[0]);
  }
  if (name == "van_der_pol") {
    arity(0, 1);
    return van_der_pol(params.empty() ? detail::kVanDerPolDefaultEps : params[0]);
  }
  if (name == "robertson") {
    arity(0, 0);
    return robertson();
  }
  if (name == "diffusion_chain") {
    arity(0, 1);
    const double mm = params.empty() ? 80.0 : params[0];
    if (!(mm >= 1.0) || mm != std::floor(mm)) throw Error(ErrorCode::InvalidArgument, "diffusion_chain needs integer m >= 1");
    return diffusion_chain(static_cast<std::size_t>(mm));
  }
  throw Error(ErrorCode::UnknownProblem, "unknown problem '" + std::string(name) + "'");
}

/// Default-parameter instance of every bundled problem.
inline std::vector<ProblemSpec> registry() {
  return {test_equation(-1.0), test_equation(-1.0, 10.0), prothero_robinson(-1e4), van_der_pol(), robertson(),
          diffusion_chain(80)};
}

}  // namespace radau

#pragma once

// Reference computations for the tests, written without the library's own
// linear algebra so they can serve as independent checks.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

template <class T>
using Dense = std::vector<std::vector<T>>;

/// Gaussian elimination with partial pivoting on a copy.
template <class T>
std::vector<T> gauss_solve(Dense<T> a, std::vector<T> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    if (std::abs(a[p][k]) == 0.0) throw std::runtime_error("oracle: singular");
    std::swap(a[k], a[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

template <class T>
Dense<T> gauss_inverse(const Dense<T>& a) {
  const std::size_t n = a.size();
  Dense<T> out(n, std::vector<T>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<T> e(n, T{});
    e[j] = T{1};
    const auto col = gauss_solve(a, e);
    for (std::size_t i = 0; i < n; ++i) out[i][j] = col[i];
  }
  return out;
}

template <class T>
Dense<T> multiply(const Dense<T>& a, const Dense<T>& b) {
  Dense<T> out(a.size(), std::vector<T>(b[0].size(), T{}));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Monomial coefficients of the shifted orthonormal Legendre polynomial on
/// [0,1]: sqrt(2j+1) sum_k (-1)^(j+k) C(j,k) C(j+k,k) x^k.
inline std::vector<double> shifted_legendre_coeffs(int j) {
  std::vector<double> c(j + 1);
  for (int k = 0; k <= j; ++k) {
    c[k] = std::sqrt(2.0 * j + 1.0) * (((j + k) % 2) ? -1.0 : 1.0) * binomial(j, k) * binomial(j + k, k);
  }
  return c;
}

inline double horner(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Stages of the standard collocation step for the linear problem y' = J y:
/// (I - h A (x) J) Y = e (x) y0, solved densely.
inline std::vector<double> linear_collocation_stages(const Dense<double>& A, const Dense<double>& J,
                                                     const std::vector<double>& y0, double h) {
  const std::size_t s = A.size(), m = J.size();
  Dense<double> big(s * m, std::vector<double>(s * m, 0.0));
  std::vector<double> rhs(s * m);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t r = 0; r < m; ++r) {
      rhs[i * m + r] = y0[r];
      for (std::size_t j = 0; j < s; ++j)
        for (std::size_t c = 0; c < m; ++c) big[i * m + r][j * m + c] = -h * A[i][j] * J[r][c];
      big[i * m + r][i * m + r] += 1.0;
    }
  return gauss_solve(big, rhs);
}

/// Composite Simpson rule on [a,b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

}  // namespace oracle

#pragma once

// Small dense linear algebra: LU with partial pivoting, Crout without
// pivoting, eigenvalues via characteristic polynomial + Aberth iteration.
// Everything here is sized for s x s method matrices and m x m Jacobians.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "radau/error.hpp"

namespace radau {

using Complex = std::complex<double>;

/// Relative pivot threshold used by both factorizations.
inline constexpr double kSingularPivotTol = 1e-14;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

/// Row-major dense matrix of real or complex scalars.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw Error(ErrorCode::DimensionMismatch, "ragged matrix initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = T{1};
    return out;
  }

  static Matrix diagonal(std::span<const T> d) {
    Matrix out(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
    return out;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(T a) {
    for (auto& v : data_) v *= a;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(T a, Matrix b) { return b *= a; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matmul");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorCode::DimensionMismatch, "elementwise op on different shapes");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

inline ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

template <class T>
std::vector<T> matvec(const Matrix<T>& a, std::span<const T> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matvec");
  std::vector<T> y(a.rows(), T{});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

template <class T>
double max_abs(const Matrix<T>& a) {
  double out = 0.0;
  for (const auto& v : a.data()) out = std::max(out, std::abs(v));
  return out;
}

/// Maximum absolute row sum.
template <class T>
double inf_norm(const Matrix<T>& a) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (const auto& v : a.row(i)) sum += std::abs(v);
    out = std::max(out, sum);
  }
  return out;
}

template <class T>
Matrix<T> mat_power(const Matrix<T>& a, unsigned nu) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "mat_power needs a square matrix");
  Matrix<T> out = Matrix<T>::identity(a.rows());
  for (unsigned k = 0; k < nu; ++k) out = out * a;
  return out;
}

// ---------------------------------------------------------------------------
// LU with partial pivoting

template <class T>
struct LuFactors {
  Matrix<T> lu;                     // unit-lower L below the diagonal, U on and above
  std::vector<std::size_t> perm;    // row i of P*A is row perm[i] of A

  [[nodiscard]] std::size_t size() const noexcept { return lu.rows(); }
};

template <class T>
LuFactors<T> lu_factor(Matrix<T> a) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "lu_factor needs a square matrix");
  const std::size_t n = a.rows();
  const double scale = max_abs(a);
  const double tiny = kSingularPivotTol * scale;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    }
    if (!(best > tiny) || scale == 0.0) {
      throw Error(ErrorCode::SingularMatrix, "pivot " + std::to_string(k) + " below threshold");
    }
    if (p != k) {
      std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(p).begin());
      std::swap(perm[k], perm[p]);
    }
    const T pivot = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T factor = a(i, k) / pivot;
      a(i, k) = factor;
      if (factor == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return {std::move(a), std::move(perm)};
}

/// Solves A x = b in place given the factors of A.
template <class T>
void lu_solve_inplace(const LuFactors<T>& f, std::span<T> b) {
  const std::size_t n = f.size();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "lu_solve");
  thread_local std::vector<T> x;
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 1; i < n; ++i) {
    const auto r = f.lu.row(i);
    T acc = x[i];
    for (std::size_t j = 0; j < i; ++j) acc -= r[j] * x[j];
    x[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto r = f.lu.row(i);
    T acc = x[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= r[j] * x[j];
    x[i] = acc / r[i];
  }
  std::copy(x.begin(), x.end(), b.begin());
}

template <class T>
std::vector<T> lu_solve(const LuFactors<T>& f, std::span<const T> b) {
  std::vector<T> x(b.begin(), b.end());
  lu_solve_inplace(f, std::span<T>(x));
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  const auto f = lu_factor(a);
  const std::size_t n = a.rows();
  Matrix<T> out(n, n);
  std::vector<T> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), T{});
    col[j] = T{1};
    lu_solve_inplace(f, std::span<T>(col));
    for (std::size_t i = 0; i < n; ++i) out(i, j) = col[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Crout factorization A = L U, L lower triangular, U unit upper triangular.
// No pivoting: the diagonal of L is the quantity of interest.

template <class T>
struct CroutFactors {
  Matrix<T> L;
  Matrix<T> U;

  [[nodiscard]] std::vector<T> pivots() const {
    std::vector<T> d(L.rows());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = L(i, i);
    return d;
  }
};

template <class T>
CroutFactors<T> crout_factor(const Matrix<T>& a) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "crout_factor needs a square matrix");
  const std::size_t n = a.rows();
  const double tiny = kSingularPivotTol * max_abs(a);
  Matrix<T> L(n, n);
  Matrix<T> U = Matrix<T>::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      T acc = a(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= L(i, k) * U(k, j);
      L(i, j) = acc;
    }
    if (!(std::abs(L(j, j)) > tiny)) {
      throw Error(ErrorCode::ZeroPivot, "leading minor " + std::to_string(j + 1) + " vanishes");
    }
    for (std::size_t k = j + 1; k < n; ++k) {
      T acc = a(j, k);
      for (std::size_t i = 0; i < j; ++i) acc -= L(j, i) * U(i, k);
      U(j, k) = acc / L(j, j);
    }
  }
  return {std::move(L), std::move(U)};
}

/// Solves (I - q L) X = B for lower-triangular L by forward substitution.
template <class T>
Matrix<T> shifted_lower_solve(const Matrix<T>& L, T q, const Matrix<T>& B) {
  const std::size_t n = L.rows();
  Matrix<T> X(n, B.cols());
  for (std::size_t c = 0; c < B.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      T acc = B(i, c);
      for (std::size_t k = 0; k < i; ++k) acc += q * L(i, k) * X(k, c);
      const T diag = T{1} - q * L(i, i);
      if (std::abs(diag) < kSingularPivotTol) {
        throw Error(ErrorCode::SingularShift, "I - qL is singular");
      }
      X(i, c) = acc / diag;
    }
  }
  return X;
}

// ---------------------------------------------------------------------------
// Eigenvalues

/// Monic characteristic polynomial coefficients, highest degree first:
/// det(zI - A) = z^n + c[1] z^{n-1} + ... + c[n]. Faddeev-LeVerrier.
template <class T>
std::vector<Complex> characteristic_polynomial(const Matrix<T>& a) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "characteristic_polynomial");
  const std::size_t n = a.rows();
  const ComplexMatrix A = [&] {
    if constexpr (is_complex<T>::value) return a;
    else return to_complex(a);
  }();
  std::vector<Complex> c(n + 1);
  c[0] = 1.0;
  ComplexMatrix M(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    ComplexMatrix next = A * M;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[k - 1];
    M = std::move(next);
    const ComplexMatrix AM = A * M;
    Complex tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
    c[k] = -tr / static_cast<double>(k);
  }
  return c;
}

/// Roots of a polynomial (coefficients highest degree first, leading nonzero)
/// by Ehrlich-Aberth simultaneous iteration.
inline std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs) {
  while (!coeffs.empty() && coeffs.front() == Complex{}) coeffs.erase(coeffs.begin());
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial");
  const Complex lead = coeffs.front();
  for (auto& c : coeffs) c /= lead;

  std::vector<Complex> roots;
  // exact zero roots deflate without iteration
  while (coeffs.size() > 1 && coeffs.back() == Complex{}) {
    roots.emplace_back(0.0);
    coeffs.pop_back();
  }
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-coeffs[1]);
    return roots;
  }

  double radius = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    radius = std::max(radius, std::pow(std::abs(coeffs[k]), 1.0 / static_cast<double>(k)));
  }
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / n + 0.4;
    z[k] = radius * Complex(std::cos(angle), std::sin(angle));
  }

  auto eval = [&](Complex x, Complex& p, Complex& dp, double& mag) {
    p = coeffs[0];
    dp = 0.0;
    mag = 1.0;
    const double ax = std::abs(x);
    for (std::size_t k = 1; k <= n; ++k) {
      dp = dp * x + p;
      p = p * x + coeffs[k];
      mag = mag * ax + std::abs(coeffs[k]);
    }
  };

  constexpr int kMaxIter = 2000;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p, dp;
      double mag;
      eval(z[k], p, dp, mag);
      if (std::abs(p) <= 4.0 * n * eps * mag) {
        done[k] = true;
        continue;
      }
      all_done = false;
      const Complex ratio = p / dp;
      Complex sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * sum);
      z[k] -= step;
      if (std::abs(step) <= eps * std::abs(z[k])) done[k] = true;
    }
    if (all_done) break;
  }

  for (const auto& x : z) {
    Complex p, dp;
    double mag;
    eval(x, p, dp, mag);
    if (!(std::abs(p) <= 1e-12 * mag)) {
      throw Error(ErrorCode::NoConvergence, "root iteration did not reach residual 1e-12");
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

template <class T>
std::vector<Complex> eigenvalues(const Matrix<T>& a) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "eigenvalues needs a square matrix");
  if (a.rows() == 0) return {};
  for (const auto& v : a.data()) {
    if (!std::isfinite(std::abs(v))) throw Error(ErrorCode::NonFinite, "eigenvalues");
  }
  return polynomial_roots(characteristic_polynomial(a));
}

template <class T>
double spectral_radius(const Matrix<T>& a) {
  double out = 0.0;
  for (const auto& z : eigenvalues(a)) out = std::max(out, std::abs(z));
  return out;
}

}  // namespace radau

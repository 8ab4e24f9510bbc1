#include "lapoly/oracle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lapoly/errors.hpp"

namespace lapoly {

namespace {

void check_dense_cap(std::int64_t n, const char* what) {
  if (n > kDenseSizeCap)
    throw GuardExceededError(std::string(what) + ": dense size " + std::to_string(n) +
                             " exceeds cap " + std::to_string(kDenseSizeCap));
}

} // namespace

DenseMatrix::DenseMatrix(std::int64_t n) : n_(n) {
  if (n < 1)
    throw std::invalid_argument("dense matrix needs n >= 1");
  check_dense_cap(n, "dense matrix");
  data_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

DenseMatrix DenseMatrix::identity(std::int64_t n) {
  DenseMatrix m(n);
  for (std::int64_t i = 0; i < n; ++i)
    m.at(i, i) = 1.0;
  return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  if (static_cast<std::int64_t>(x.size()) != n_)
    throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
  for (std::int64_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    const double* row = data_.data() + i * n_;
    for (std::int64_t j = 0; j < n_; ++j)
      acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
  if (other.n_ != n_)
    throw std::invalid_argument("matrix-matrix size mismatch");
  DenseMatrix out(n_);
  for (std::int64_t i = 0; i < n_; ++i)
    for (std::int64_t k = 0; k < n_; ++k) {
      const double a = at(i, k);
      if (a == 0.0)
        continue;
      const double* brow = other.data_.data() + k * n_;
      double* orow = out.data_.data() + i * n_;
      for (std::int64_t j = 0; j < n_; ++j)
        orow[j] += a * brow[j];
    }
  return out;
}

double DenseMatrix::inf_norm() const {
  double best = 0.0;
  for (std::int64_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::int64_t j = 0; j < n_; ++j)
      row += std::abs(at(i, j));
    best = std::max(best, row);
  }
  return best;
}

DenseMatrix& DenseMatrix::add_scaled(const DenseMatrix& other, double factor) {
  if (other.n_ != n_)
    throw std::invalid_argument("matrix-matrix size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] += factor * other.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::scale(double factor) {
  for (double& v : data_)
    v *= factor;
  return *this;
}

LuFactorization::LuFactorization(DenseMatrix m) : lu_(std::move(m)) {
  const std::int64_t n = lu_.n();
  const double threshold = 1e-13 * lu_.inf_norm();
  perm_.resize(static_cast<std::size_t>(n));
  std::iota(perm_.begin(), perm_.end(), std::int64_t{0});

  for (std::int64_t col = 0; col < n; ++col) {
    std::int64_t pivot_row = col;
    double pivot_mag = std::abs(lu_.at(col, col));
    for (std::int64_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(lu_.at(r, col));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (!(pivot_mag > threshold))
      throw SingularMatrixError("singular matrix: pivot " + std::to_string(col + 1) +
                                    " below threshold",
                                col + 1);
    if (pivot_row != col) {
      for (std::int64_t j = 0; j < n; ++j)
        std::swap(lu_.at(col, j), lu_.at(pivot_row, j));
      std::swap(perm_[col], perm_[pivot_row]);
    }
    const double inv_pivot = 1.0 / lu_.at(col, col);
    for (std::int64_t r = col + 1; r < n; ++r) {
      const double factor = lu_.at(r, col) * inv_pivot;
      lu_.at(r, col) = factor;
      if (factor == 0.0)
        continue;
      for (std::int64_t j = col + 1; j < n; ++j)
        lu_.at(r, j) -= factor * lu_.at(col, j);
    }
  }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const std::int64_t n = lu_.n();
  if (static_cast<std::int64_t>(b.size()) != n)
    throw std::invalid_argument("right-hand side size mismatch");
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    x[i] = b[perm_[i]];
  for (std::int64_t i = 1; i < n; ++i) {
    double acc = x[i];
    for (std::int64_t j = 0; j < i; ++j)
      acc -= lu_.at(i, j) * x[j];
    x[i] = acc;
  }
  for (std::int64_t i = n - 1; i >= 0; --i) {
    double acc = x[i];
    for (std::int64_t j = i + 1; j < n; ++j)
      acc -= lu_.at(i, j) * x[j];
    x[i] = acc / lu_.at(i, i);
  }
  return x;
}

namespace {

// r = b - M x with fma-captured product errors and two-sum compensation, so
// the residual stays trustworthy well below eps * |M| * |x|.
std::vector<double> compensated_residual(const DenseMatrix& m, std::span<const double> x,
                                         std::span<const double> b) {
  const std::int64_t n = m.n();
  std::vector<double> r(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double* row = m.data().data() + i * n;
    double sum = b[i];
    double comp = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      const double p = -row[j] * x[j];
      comp += std::fma(-row[j], x[j], -p);
      const double t = sum + p;
      comp += std::abs(sum) >= std::abs(p) ? (sum - t) + p : (p - t) + sum;
      sum = t;
    }
    r[i] = sum + comp;
  }
  return r;
}

// LU solve plus iterative refinement. The factorization alone leaves a
// forward error of order eps * cond(M); refinement against the compensated
// residual shrinks it toward eps as long as cond(M) stays below 1/eps.
std::vector<double> refined_solve(const DenseMatrix& m, const LuFactorization& lu,
                                  std::span<const double> b) {
  std::vector<double> x = lu.solve(b);
  for (int sweep = 0; sweep < 8; ++sweep) {
    const std::vector<double> r = compensated_residual(m, x, b);
    const std::vector<double> dx = lu.solve(r);
    double scale = 0.0, step = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      scale = std::max(scale, std::abs(x[i]));
      step = std::max(step, std::abs(dx[i]));
    }
    if (step == 0.0 || !std::isfinite(step))
      break;
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] += dx[i];
    if (step <= 1e-16 * scale)
      break;
  }
  return x;
}

} // namespace

std::vector<double> dense_solve(const DenseMatrix& m, std::span<const double> b) {
  const LuFactorization lu(m);
  return refined_solve(m, lu, b);
}

DenseMatrix dense_invert(const DenseMatrix& m) {
  const std::int64_t n = m.n();
  LuFactorization lu(m);
  DenseMatrix inv(n);
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t col = 0; col < n; ++col) {
    e[col] = 1.0;
    const std::vector<double> x = refined_solve(m, lu, e);
    e[col] = 0.0;
    for (std::int64_t row = 0; row < n; ++row)
      inv.at(row, col) = x[row];
  }
  return inv;
}

DenseMatrix assemble_laplacian(const Grid& grid) {
  check_dense_cap(grid.size(), "laplacian assembly");
  const std::int64_t n = grid.size();
  DenseMatrix a(n);
  std::vector<std::int64_t> multi(grid.dim());
  for (std::int64_t flat = 1; flat <= n; ++flat) {
    grid.unflatten_into(flat, multi);
    for (int p = 0; p < grid.dim(); ++p) {
      const double h = grid.spacing()[p];
      const double inv_h2 = 1.0 / (h * h);
      const std::int64_t np = grid.extents()[p];
      const std::int64_t j = multi[p];
      const bool neumann_row =
          grid.bc()[p] == BoundaryKind::DirichletLeftNeumannRight && j == np;

      if (neumann_row) {
        // Ghost-point reflection at x=1: -2 u_{N-1} + 2 u_N, scaled by 1/h^2.
        a.at(flat - 1, flat - 1) += 2.0 * inv_h2;
        if (np > 1) {
          multi[p] = j - 1;
          a.at(flat - 1, grid.flatten(multi) - 1) -= 2.0 * inv_h2;
          multi[p] = j;
        }
        continue;
      }

      a.at(flat - 1, flat - 1) += 2.0 * inv_h2;
      if (j > 1) {
        multi[p] = j - 1;
        a.at(flat - 1, grid.flatten(multi) - 1) -= inv_h2;
        multi[p] = j;
      }
      if (j < np) {
        multi[p] = j + 1;
        a.at(flat - 1, grid.flatten(multi) - 1) -= inv_h2;
        multi[p] = j;
      }
    }
  }
  return a;
}

DenseMatrix assemble_poly(const DenseMatrix& a, const MatrixPolynomial& poly) {
  const auto& coeffs = poly.coefficients();

  DenseMatrix result(a.n());
  for (std::int64_t i = 0; i < a.n(); ++i)
    result.at(i, i) = coeffs[0];
  DenseMatrix power = DenseMatrix::identity(a.n());
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    power = power.multiply(a);
    if (coeffs[i] != 0.0)
      result.add_scaled(power, coeffs[i]);
  }
  return result;
}

DenseMatrix assemble_poly(const Grid& grid, const MatrixPolynomial& poly) {
  return assemble_poly(assemble_laplacian(grid), poly);
}

// The closed forms divide by (1-z)^2 or 4 sin^2(x/2), which magnifies any
// rounding in the numerator near z = 1 or x = 0 mod 2*pi. Extended precision
// internally keeps the returned doubles faithful through that magnification.

double weighted_geometric_sum(std::int64_t n, double z) {
  if (n < 1)
    throw std::invalid_argument("weighted sum needs n >= 1");
  if (z == 1.0)
    return 0.5 * double(n) * double(n + 1);
  const long double zl = z;
  long double zn = 1.0L;
  for (std::int64_t k = 0; k < n; ++k)
    zn *= zl;
  const long double one_minus = 1.0L - zl;
  return static_cast<double>(
      zl * (1.0L - static_cast<long double>(n + 1) * zn + static_cast<long double>(n) * zn * zl) /
      (one_minus * one_minus));
}

namespace {

long double half_angle_denominator(double x) {
  const long double s = std::sin(0.5L * static_cast<long double>(x));
  if (std::abs(s) < 1e-14L)
    throw std::domain_error("weighted trigonometric sum undefined near x = 0 mod 2*pi");
  return 4.0L * s * s;
}

} // namespace

double weighted_sine_sum(std::int64_t n, double x) {
  if (n < 1)
    throw std::invalid_argument("weighted sum needs n >= 1");
  const long double denom = half_angle_denominator(x);
  const long double xl = x;
  return static_cast<double>((static_cast<long double>(n + 1) * std::sin(static_cast<long double>(n) * xl) -
                              static_cast<long double>(n) * std::sin(static_cast<long double>(n + 1) * xl)) /
                             denom);
}

double weighted_cosine_sum(std::int64_t n, double x) {
  if (n < 1)
    throw std::invalid_argument("weighted sum needs n >= 1");
  const long double denom = half_angle_denominator(x);
  const long double xl = x;
  return static_cast<double>((static_cast<long double>(n + 1) * std::cos(static_cast<long double>(n) * xl) -
                              static_cast<long double>(n) * std::cos(static_cast<long double>(n + 1) * xl) -
                              1.0L) /
                             denom);
}

} // namespace lapoly

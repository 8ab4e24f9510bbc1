#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lapoly/grid.hpp"
#include "lapoly/polynomial.hpp"

namespace lapoly {

// Hard cap for every dense code path; anything larger throws GuardExceededError.
inline constexpr std::int64_t kDenseSizeCap = 4096;

// Small row-major square matrix for reference computations. Indices here are
// 0-based, unlike the 1-based grid API.
class DenseMatrix {
public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::int64_t n);

  static DenseMatrix identity(std::int64_t n);

  std::int64_t n() const { return n_; }
  double& at(std::int64_t i, std::int64_t j) { return data_[i * n_ + j]; }
  double at(std::int64_t i, std::int64_t j) const { return data_[i * n_ + j]; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  std::vector<double> multiply(std::span<const double> x) const;
  DenseMatrix multiply(const DenseMatrix& other) const;
  double inf_norm() const;

  DenseMatrix& add_scaled(const DenseMatrix& other, double factor);
  DenseMatrix& scale(double factor);

private:
  std::int64_t n_ = 0;
  std::vector<double> data_;
};

// Row-major LU with partial pivoting. Rejects pivots at or below
// 1e-13 * inf_norm of the input.
class LuFactorization {
public:
  explicit LuFactorization(DenseMatrix m);

  std::vector<double> solve(std::span<const double> b) const;
  std::int64_t n() const { return lu_.n(); }

private:
  DenseMatrix lu_;
  std::vector<std::int64_t> perm_;
};

std::vector<double> dense_solve(const DenseMatrix& m, std::span<const double> b);
DenseMatrix dense_invert(const DenseMatrix& m);

// Finite-difference Laplacian of the grid, ghost-point row on mixed axes.
DenseMatrix assemble_laplacian(const Grid& grid);
// P evaluated at a dense matrix through explicit matrix products.
DenseMatrix assemble_poly(const DenseMatrix& a, const MatrixPolynomial& poly);
DenseMatrix assemble_poly(const Grid& grid, const MatrixPolynomial& poly);

// Closed-form index-weighted sums used to pin transform and solver values.
// weighted_geometric_sum: sum_{k=1..n} k z^k.
// weighted_sine_sum:      sum_{k=1..n} k sin(k x).
// weighted_cosine_sum:    sum_{k=1..n} k cos(k x).
double weighted_geometric_sum(std::int64_t n, double z);
double weighted_sine_sum(std::int64_t n, double x);
double weighted_cosine_sum(std::int64_t n, double x);

} // namespace lapoly

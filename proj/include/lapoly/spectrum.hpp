#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lapoly/grid.hpp"

namespace lapoly {

// Entry j of the normalized eigenvector k for one axis, and its eigenvalue.
// Both are closed forms of the 1D second-difference operator with the axis's
// boundary pair; k, j run 1..N.
double axis_eigenvalue(std::int64_t k, std::int64_t n, double h, BoundaryKind bc);
double axis_eigenvector_entry(std::int64_t k, std::int64_t j, std::int64_t n,
                              BoundaryKind bc);
// Diagonal weight that symmetrizes the axis operator; 1 everywhere except the
// Neumann-side node of a mixed axis, which carries 1/2.
double axis_node_weight(std::int64_t j, std::int64_t n, BoundaryKind bc);

struct AxisSpectrum {
  std::int64_t extent = 0;
  BoundaryKind bc = BoundaryKind::DirichletBoth;
  double spacing = 0.0;
  double norm_factor = 0.0;        // alpha in v_{k,j} = alpha * sin(...)
  std::vector<double> eigenvalues; // ascending, size extent
  std::vector<double> weights;     // node weights, size extent
};

// Eigenstructure of the grid Laplacian, stored per axis (O(sum N_p) memory).
// The d-dimensional eigenvalue for mode (k_1..k_d) is the sum of per-axis
// eigenvalues; the eigenvector entry is the product of per-axis entries.
class Spectrum {
public:
  explicit Spectrum(Grid grid);

  const Grid& grid() const { return grid_; }
  const AxisSpectrum& axis(int p) const;

  double eigenvalue(std::span<const std::int64_t> modes) const;
  double eigenvalue_flat(std::int64_t flat_mode) const;
  double eigenvector_entry(std::span<const std::int64_t> modes,
                           std::span<const std::int64_t> nodes) const;
  // Product of per-axis node weights at a flat node index.
  double node_weight_flat(std::int64_t flat_node) const;

  double min_eigenvalue() const { return min_eigenvalue_; }
  double max_eigenvalue() const { return max_eigenvalue_; }

private:
  Grid grid_;
  std::vector<AxisSpectrum> axes_;
  double min_eigenvalue_ = 0.0;
  double max_eigenvalue_ = 0.0;
};

Spectrum make_spectrum(const Grid& grid);

} // namespace lapoly

#include "lapoly/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lapoly {

namespace {

// sin(pi*num/den) with the argument folded into [0, pi/2] by integer
// symmetry, so large mode-node products do not lose precision.
double sin_pi_ratio(std::int64_t num, std::int64_t den) {
  num %= 2 * den;
  if (num < 0)
    num += 2 * den;
  double sign = 1.0;
  if (num >= den) {
    num -= den;
    sign = -1.0;
  }
  if (2 * num > den)
    num = den - num;
  return sign * std::sin(M_PI * double(num) / double(den));
}

void check_axis_index(std::int64_t k, std::int64_t n, const char* what) {
  if (k < 1 || k > n)
    throw std::out_of_range(std::string(what) + " out of range: " + std::to_string(k));
}

} // namespace

double axis_eigenvalue(std::int64_t k, std::int64_t n, double h, BoundaryKind bc) {
  check_axis_index(k, n, "mode index");
  const double scale = 4.0 / (h * h);
  if (bc == BoundaryKind::DirichletBoth) {
    const double s = sin_pi_ratio(k, 2 * (n + 1));
    return scale * s * s;
  }
  const double s = sin_pi_ratio(2 * k - 1, 4 * n);
  return scale * s * s;
}

double axis_eigenvector_entry(std::int64_t k, std::int64_t j, std::int64_t n,
                              BoundaryKind bc) {
  check_axis_index(k, n, "mode index");
  check_axis_index(j, n, "node index");
  if (bc == BoundaryKind::DirichletBoth)
    return std::sqrt(2.0 / double(n + 1)) * sin_pi_ratio(k * j, n + 1);
  return std::sqrt(2.0 / double(n)) * sin_pi_ratio((2 * k - 1) * j, 2 * n);
}

double axis_node_weight(std::int64_t j, std::int64_t n, BoundaryKind bc) {
  check_axis_index(j, n, "node index");
  if (bc == BoundaryKind::DirichletLeftNeumannRight && j == n)
    return 0.5;
  return 1.0;
}

Spectrum::Spectrum(Grid grid) : grid_(std::move(grid)) {
  axes_.reserve(grid_.dim());
  for (int p = 0; p < grid_.dim(); ++p) {
    AxisSpectrum ax;
    ax.extent = grid_.extents()[p];
    ax.bc = grid_.bc()[p];
    ax.spacing = grid_.spacing()[p];
    ax.norm_factor = ax.bc == BoundaryKind::DirichletBoth
                         ? std::sqrt(2.0 / double(ax.extent + 1))
                         : std::sqrt(2.0 / double(ax.extent));
    ax.eigenvalues.reserve(ax.extent);
    ax.weights.reserve(ax.extent);
    for (std::int64_t k = 1; k <= ax.extent; ++k) {
      ax.eigenvalues.push_back(axis_eigenvalue(k, ax.extent, ax.spacing, ax.bc));
      ax.weights.push_back(axis_node_weight(k, ax.extent, ax.bc));
    }
    min_eigenvalue_ += ax.eigenvalues.front();
    max_eigenvalue_ += ax.eigenvalues.back();
    axes_.push_back(std::move(ax));
  }
}

const AxisSpectrum& Spectrum::axis(int p) const {
  if (p < 0 || p >= static_cast<int>(axes_.size()))
    throw std::out_of_range("axis out of range");
  return axes_[p];
}

double Spectrum::eigenvalue(std::span<const std::int64_t> modes) const {
  if (static_cast<int>(modes.size()) != grid_.dim())
    throw std::invalid_argument("mode rank does not match grid dimension");
  double sum = 0.0;
  for (int p = 0; p < grid_.dim(); ++p) {
    const auto& ax = axes_[p];
    check_axis_index(modes[p], ax.extent, "mode index");
    sum += ax.eigenvalues[modes[p] - 1];
  }
  return sum;
}

double Spectrum::eigenvalue_flat(std::int64_t flat_mode) const {
  std::int64_t rem = flat_mode - 1;
  if (rem < 0 || flat_mode > grid_.size())
    throw std::out_of_range("flat mode out of range: " + std::to_string(flat_mode));
  double sum = 0.0;
  for (const auto& ax : axes_) {
    sum += ax.eigenvalues[rem % ax.extent];
    rem /= ax.extent;
  }
  return sum;
}

double Spectrum::eigenvector_entry(std::span<const std::int64_t> modes,
                                   std::span<const std::int64_t> nodes) const {
  if (static_cast<int>(modes.size()) != grid_.dim() ||
      static_cast<int>(nodes.size()) != grid_.dim())
    throw std::invalid_argument("mode or node rank does not match grid dimension");
  double prod = 1.0;
  for (int p = 0; p < grid_.dim(); ++p) {
    const auto& ax = axes_[p];
    prod *= axis_eigenvector_entry(modes[p], nodes[p], ax.extent, ax.bc);
  }
  return prod;
}

double Spectrum::node_weight_flat(std::int64_t flat_node) const {
  std::int64_t rem = flat_node - 1;
  if (rem < 0 || flat_node > grid_.size())
    throw std::out_of_range("flat node out of range: " + std::to_string(flat_node));
  double prod = 1.0;
  for (const auto& ax : axes_) {
    prod *= ax.weights[rem % ax.extent];
    rem /= ax.extent;
  }
  return prod;
}

Spectrum make_spectrum(const Grid& grid) { return Spectrum(grid); }

} // namespace lapoly

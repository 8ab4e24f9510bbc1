#include "lapoly/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lapoly/errors.hpp"

namespace lapoly {

namespace {

// Above this mode count the certificate and scaling passes recompute
// P(lambda) instead of caching one value per mode.
constexpr std::int64_t kScaleCacheMax = std::int64_t(1) << 20;

[[noreturn]] void throw_singular(const InvertibilityCertificate& cert) {
  throw SingularOperatorError("operator not certified invertible: |P(lambda)| = " +
                                  std::to_string(cert.min_abs) + " at mode " +
                                  std::to_string(cert.worst_mode),
                              cert.worst_mode, cert.min_abs);
}

// Compensated accumulation; the mode sums behind inverse entries run across
// the whole spectrum and are compared at absolute tolerances near round-off.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

} // namespace

Field solve(const Spectrum& spectrum, const MatrixPolynomial& poly, const Field& rhs,
            TransformPath path) {
  require_matching(spectrum.grid(), rhs, "solve right-hand side");
  const std::int64_t n = spectrum.grid().size();

  InvertibilityCertificate cert;
  std::vector<double> scale;
  if (n <= kScaleCacheMax) {
    scale.resize(static_cast<std::size_t>(n));
    for (std::int64_t k = 1; k <= n; ++k)
      scale[k - 1] = poly(spectrum.eigenvalue_flat(k));
    cert.min_abs = std::abs(scale[0]);
    cert.max_abs = cert.min_abs;
    cert.worst_mode = 1;
    for (std::int64_t k = 2; k <= n; ++k) {
      const double v = std::abs(scale[k - 1]);
      if (v < cert.min_abs) {
        cert.min_abs = v;
        cert.worst_mode = k;
      }
      if (v > cert.max_abs)
        cert.max_abs = v;
    }
    cert.invertible = cert.min_abs > 1e-12 * cert.max_abs;
  } else {
    cert = certify_invertible(poly, spectrum);
  }
  if (!cert.invertible)
    throw_singular(cert);

  CoefficientTensor coeffs = analyze(rhs, spectrum, path);
  if (!scale.empty()) {
    for (std::int64_t k = 0; k < n; ++k)
      coeffs.values[k] /= scale[k];
  } else {
    for (std::int64_t k = 1; k <= n; ++k)
      coeffs.values[k - 1] /= poly(spectrum.eigenvalue_flat(k));
  }
  return synthesize(coeffs, spectrum, path);
}

Field solve(const Grid& grid, const MatrixPolynomial& poly, const Field& rhs,
            TransformPath path) {
  return solve(Spectrum(grid), poly, rhs, path);
}

double inverse_entry(const Spectrum& spectrum, const MatrixPolynomial& poly,
                     std::int64_t i, std::int64_t k) {
  const Grid& grid = spectrum.grid();
  const std::int64_t n = grid.size();
  if (i < 1 || i > n || k < 1 || k > n)
    throw std::out_of_range("inverse entry index out of range");

  const InvertibilityCertificate cert = certify_invertible(poly, spectrum);
  if (!cert.invertible)
    throw_singular(cert);

  const int d = grid.dim();
  const std::vector<std::int64_t> mi = grid.unflatten(i);
  const std::vector<std::int64_t> mk = grid.unflatten(k);

  // Per-axis eigenvector entries at the two nodes, indexed by axis mode.
  std::vector<std::vector<double>> vi(d), vk(d);
  for (int p = 0; p < d; ++p) {
    const AxisSpectrum& ax = spectrum.axis(p);
    vi[p].resize(ax.extent);
    vk[p].resize(ax.extent);
    for (std::int64_t m = 1; m <= ax.extent; ++m) {
      vi[p][m - 1] = axis_eigenvector_entry(m, mi[p], ax.extent, ax.bc);
      vk[p][m - 1] = axis_eigenvector_entry(m, mk[p], ax.extent, ax.bc);
    }
  }

  std::vector<std::int64_t> mode(d, 0); // 0-based odometer
  NeumaierSum acc;
  for (std::int64_t flat = 0; flat < n; ++flat) {
    double prod = 1.0;
    double lambda = 0.0;
    for (int p = 0; p < d; ++p) {
      prod *= vi[p][mode[p]] * vk[p][mode[p]];
      lambda += spectrum.axis(p).eigenvalues[mode[p]];
    }
    acc.add(prod / poly(lambda));
    for (int p = 0; p < d; ++p) {
      if (++mode[p] < spectrum.axis(p).extent)
        break;
      mode[p] = 0;
    }
  }
  return acc.value() * spectrum.node_weight_flat(k);
}

Field inverse_column(const Spectrum& spectrum, const MatrixPolynomial& poly,
                     std::int64_t k, TransformPath path) {
  const std::int64_t n = spectrum.grid().size();
  if (k < 1 || k > n)
    throw std::out_of_range("inverse column index out of range");
  Field unit = make_field(spectrum.grid());
  unit.values[k - 1] = 1.0;
  return solve(spectrum, poly, unit, path);
}

DenseMatrix inverse_dense(const Spectrum& spectrum, const MatrixPolynomial& poly,
                          TransformPath path) {
  const std::int64_t n = spectrum.grid().size();
  if (n > kDenseSizeCap)
    throw GuardExceededError("dense inverse of size " + std::to_string(n) +
                             " exceeds cap " + std::to_string(kDenseSizeCap));
  DenseMatrix inv(n);
  for (std::int64_t k = 1; k <= n; ++k) {
    const Field col = inverse_column(spectrum, poly, k, path);
    for (std::int64_t row = 0; row < n; ++row)
      inv.at(row, k - 1) = col.values[row];
  }
  return inv;
}

double dirichlet_inverse_closed_form(std::int64_t n, std::int64_t i, std::int64_t k) {
  if (n < 1 || i < 1 || i > n || k < 1 || k > n)
    throw std::out_of_range("closed-form inverse index out of range");
  const double h2 = 1.0 / (double(n + 1) * double(n + 1));
  const double ramp = double((n + 1 - k) * i) / double(n + 1);
  const double kink = double(i > k ? i - k : 0);
  return h2 * (ramp - kink);
}

} // namespace lapoly

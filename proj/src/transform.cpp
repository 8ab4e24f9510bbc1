#include "lapoly/transform.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "lapoly/errors.hpp"
#include "lapoly/parallel.hpp"

#if LAPOLY_HAVE_FFTW
#include <fftw3.h>
#endif

namespace lapoly {

namespace {

// Axis kernels above this size are evaluated on the fly instead of being
// materialized (the table would cost extent^2 doubles per axis pass).
constexpr std::int64_t kKernelTableMax = 1024;

struct AxisView {
  std::int64_t stride = 0;
  std::int64_t extent = 0;
  std::int64_t lines = 0;
};

AxisView axis_view(const Grid& grid, int axis) {
  AxisView v;
  v.extent = grid.extents()[axis];
  v.stride = 1;
  for (int p = 0; p < axis; ++p)
    v.stride *= grid.extents()[p];
  v.lines = grid.size() / v.extent;
  return v;
}

std::int64_t line_base(const AxisView& v, std::int64_t line) {
  return line % v.stride + line / v.stride * v.stride * v.extent;
}

// One axis pass of the explicit summation path. Forward passes fold the node
// weights into the gathered input; every output accumulates in ascending
// index order so results do not depend on the worker count.
void apply_axis_naive(double* data, const AxisSpectrum& ax, const AxisView& view,
                      bool forward) {
  const std::int64_t n = ax.extent;

  std::vector<double> table;
  if (n <= kKernelTableMax) {
    table.resize(static_cast<std::size_t>(n) * n);
    for (std::int64_t k = 1; k <= n; ++k)
      for (std::int64_t j = 1; j <= n; ++j) {
        const double entry = axis_eigenvector_entry(k, j, n, ax.bc);
        if (forward)
          table[(k - 1) * n + (j - 1)] = entry; // row k: sum over nodes j
        else
          table[(j - 1) * n + (k - 1)] = entry; // row j: sum over modes k
      }
  }

  parallel_for(view.lines, [&](std::int64_t begin, std::int64_t end) {
    std::vector<double> in(static_cast<std::size_t>(n));
    std::vector<double> out(static_cast<std::size_t>(n));
    for (std::int64_t line = begin; line < end; ++line) {
      double* base = data + line_base(view, line);
      for (std::int64_t t = 0; t < n; ++t)
        in[t] = base[t * view.stride];
      if (forward)
        for (std::int64_t t = 0; t < n; ++t)
          in[t] *= ax.weights[t];

      if (!table.empty()) {
        for (std::int64_t r = 0; r < n; ++r) {
          const double* row = table.data() + r * n;
          double acc = 0.0;
          for (std::int64_t t = 0; t < n; ++t)
            acc += row[t] * in[t];
          out[r] = acc;
        }
      } else if (forward) {
        for (std::int64_t k = 1; k <= n; ++k) {
          double acc = 0.0;
          for (std::int64_t j = 1; j <= n; ++j)
            acc += axis_eigenvector_entry(k, j, n, ax.bc) * in[j - 1];
          out[k - 1] = acc;
        }
      } else {
        for (std::int64_t j = 1; j <= n; ++j) {
          double acc = 0.0;
          for (std::int64_t k = 1; k <= n; ++k)
            acc += axis_eigenvector_entry(k, j, n, ax.bc) * in[k - 1];
          out[j - 1] = acc;
        }
      }

      for (std::int64_t t = 0; t < n; ++t)
        base[t * view.stride] = out[t];
    }
  });
}

#if LAPOLY_HAVE_FFTW

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan acquire_plan(std::int64_t n, fftw_r2r_kind kind) {
  static std::map<std::pair<std::int64_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  const auto key = std::make_pair(n, static_cast<int>(kind));
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;
  double* scratch_in = fftw_alloc_real(static_cast<std::size_t>(n));
  double* scratch_out = fftw_alloc_real(static_cast<std::size_t>(n));
  // FFTW_ESTIMATE keeps planning deterministic and leaves the scratch intact.
  fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(n), scratch_in, scratch_out,
                                    kind, FFTW_ESTIMATE);
  fftw_free(scratch_in);
  fftw_free(scratch_out);
  if (!plan)
    throw std::runtime_error("fftw planner failed");
  cache.emplace(key, plan);
  return plan;
}

// The fast pass reduces every case to out = (alpha/2) * r2r(in): the r2r
// definitions carry a factor 2 per term, and on mixed axes the half-weighted
// last sample of RODFT01 matches the 1/2 node weight exactly.
void apply_axis_fast(double* data, const AxisSpectrum& ax, const AxisView& view,
                     bool forward) {
  const std::int64_t n = ax.extent;
  fftw_r2r_kind kind = FFTW_RODFT00;
  if (ax.bc == BoundaryKind::DirichletLeftNeumannRight)
    kind = forward ? FFTW_RODFT01 : FFTW_RODFT10;
  const double scale =
      0.5 * (ax.bc == BoundaryKind::DirichletBoth ? std::sqrt(2.0 / double(n + 1))
                                                  : std::sqrt(2.0 / double(n)));
  fftw_plan plan = acquire_plan(n, kind);

  parallel_for(view.lines, [&](std::int64_t begin, std::int64_t end) {
    double* in = fftw_alloc_real(static_cast<std::size_t>(n));
    double* out = fftw_alloc_real(static_cast<std::size_t>(n));
    for (std::int64_t line = begin; line < end; ++line) {
      double* base = data + line_base(view, line);
      for (std::int64_t t = 0; t < n; ++t)
        in[t] = base[t * view.stride];
      fftw_execute_r2r(plan, in, out);
      for (std::int64_t t = 0; t < n; ++t)
        base[t * view.stride] = scale * out[t];
    }
    fftw_free(in);
    fftw_free(out);
  });
}

#endif // LAPOLY_HAVE_FFTW

void apply_all_axes(std::vector<double>& data, const Spectrum& spectrum,
                    TransformPath path, bool forward) {
  if (path == TransformPath::Fast && !fast_transform_available())
    throw std::invalid_argument("fast transform backend not built in");
  const Grid& grid = spectrum.grid();
  for (int p = 0; p < grid.dim(); ++p) {
    const AxisView view = axis_view(grid, p);
    const AxisSpectrum& ax = spectrum.axis(p);
#if LAPOLY_HAVE_FFTW
    if (path != TransformPath::Naive) {
      apply_axis_fast(data.data(), ax, view, forward);
      continue;
    }
#endif
    apply_axis_naive(data.data(), ax, view, forward);
  }
}

} // namespace

bool fast_transform_available() {
#if LAPOLY_HAVE_FFTW
  return true;
#else
  return false;
#endif
}

CoefficientTensor analyze(const Field& field, const Spectrum& spectrum,
                          TransformPath path) {
  require_matching(spectrum.grid(), field, "analyze input");
  CoefficientTensor coeffs{spectrum.grid(), field.values};
  apply_all_axes(coeffs.values, spectrum, path, /*forward=*/true);
  return coeffs;
}

Field synthesize(const CoefficientTensor& coeffs, const Spectrum& spectrum,
                 TransformPath path) {
  if (!(coeffs.grid == spectrum.grid()) ||
      coeffs.values.size() != static_cast<std::size_t>(spectrum.grid().size()))
    throw GridMismatchError("synthesize input does not match the grid");
  Field field{spectrum.grid(), coeffs.values};
  apply_all_axes(field.values, spectrum, path, /*forward=*/false);
  return field;
}

} // namespace lapoly

#pragma once

#include <cstdint>
#include <vector>

#include "lapoly/grid.hpp"
#include "lapoly/spectrum.hpp"

namespace lapoly {

// Coefficients of a field in the Laplacian eigenbasis, flat mode order
// (same layout rule as Field node order).
struct CoefficientTensor {
  Grid grid;
  std::vector<double> values;
};

enum class TransformPath {
  Auto,  // fast when compiled in and the axis supports it, naive otherwise
  Naive, // explicit separable summation, the correctness anchor
  Fast,  // FFTW r2r per axis; throws when unavailable
};

// True when the build carries the fast transform backend.
bool fast_transform_available();

// Forward transform: coefficients c with b = sum_k c_k v_k. Uses the
// weighted inner product on mixed axes.
CoefficientTensor analyze(const Field& field, const Spectrum& spectrum,
                          TransformPath path = TransformPath::Auto);

// Inverse transform: pointwise synthesis of sum_k c_k v_k.
Field synthesize(const CoefficientTensor& coeffs, const Spectrum& spectrum,
                 TransformPath path = TransformPath::Auto);

} // namespace lapoly

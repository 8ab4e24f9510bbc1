#pragma once

#include <cstdint>

#include "lapoly/grid.hpp"
#include "lapoly/oracle.hpp"
#include "lapoly/polynomial.hpp"
#include "lapoly/spectrum.hpp"
#include "lapoly/transform.hpp"

namespace lapoly {

// Solves P(A) x = b spectrally: analyze b, divide coefficient k by
// P(lambda_k), synthesize. Throws SingularOperatorError when the
// invertibility certificate fails. P(A) is never materialized.
Field solve(const Spectrum& spectrum, const MatrixPolynomial& poly, const Field& rhs,
            TransformPath path = TransformPath::Auto);
Field solve(const Grid& grid, const MatrixPolynomial& poly, const Field& rhs,
            TransformPath path = TransformPath::Auto);

// Entry (i, k) of P(A)^{-1}, 1-based flat indices, by direct summation over
// modes: sum_m v_m(i) v_m(k) w(k) / P(lambda_m).
double inverse_entry(const Spectrum& spectrum, const MatrixPolynomial& poly,
                     std::int64_t i, std::int64_t k);

// Column k of P(A)^{-1} (a unit right-hand side pushed through solve).
Field inverse_column(const Spectrum& spectrum, const MatrixPolynomial& poly,
                     std::int64_t k, TransformPath path = TransformPath::Auto);

// Full dense inverse, column by column; guarded by kDenseSizeCap.
DenseMatrix inverse_dense(const Spectrum& spectrum, const MatrixPolynomial& poly,
                          TransformPath path = TransformPath::Auto);

// Closed-form inverse entry of the 1D Dirichlet Laplacian:
// h^2 ((n+1-k)/(n+1) i - max(i-k, 0)).
double dirichlet_inverse_closed_form(std::int64_t n, std::int64_t i, std::int64_t k);

} // namespace lapoly

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lapoly {

class Spectrum;

// Real polynomial P(lambda) = c_0 + c_1 lambda + ... + c_m lambda^m applied
// spectrally to the grid Laplacian. Trailing zero coefficients are trimmed;
// the zero polynomial is rejected.
class MatrixPolynomial {
public:
  explicit MatrixPolynomial(std::vector<double> coefficients);

  // Comma-separated ascending coefficients, e.g. "0,1" for P(l) = l.
  static MatrixPolynomial parse(std::string_view text);

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  double operator()(double lambda) const; // Horner evaluation

  std::string to_string() const;

private:
  std::vector<double> coefficients_;
};

struct InvertibilityCertificate {
  bool invertible = false;
  // True when a sign argument already settles it: all coefficients >= 0
  // and the spectrum is positive.
  bool positive_sufficient = false;
  std::int64_t worst_mode = 0; // flat mode minimizing |P(lambda)|, 1-based
  double min_abs = 0.0;        // min_k |P(lambda_k)|
  double max_abs = 0.0;        // max_k |P(lambda_k)|
};

// P(A) is accepted as invertible iff min|P(lambda)| > rel_tol * max|P(lambda)|
// over all grid modes.
InvertibilityCertificate certify_invertible(const MatrixPolynomial& poly,
                                            const Spectrum& spectrum,
                                            double rel_tol = 1e-12);

} // namespace lapoly

#include "lapoly/polynomial.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lapoly/spectrum.hpp"

namespace lapoly {

MatrixPolynomial::MatrixPolynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  while (coefficients_.size() > 1 && coefficients_.back() == 0.0)
    coefficients_.pop_back();
  if (coefficients_.empty())
    throw std::invalid_argument("polynomial needs at least one coefficient");
  if (coefficients_.size() == 1 && coefficients_[0] == 0.0)
    throw std::invalid_argument("zero polynomial is not allowed");
  for (double c : coefficients_)
    if (!std::isfinite(c))
      throw std::invalid_argument("polynomial coefficients must be finite");
}

MatrixPolynomial MatrixPolynomial::parse(std::string_view text) {
  std::vector<double> coeffs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos)
      comma = text.size();
    const std::string piece(text.substr(pos, comma - pos));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad polynomial coefficient: '" + piece + "'");
    }
    while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used])))
      ++used;
    if (used != piece.size())
      throw std::invalid_argument("bad polynomial coefficient: '" + piece + "'");
    coeffs.push_back(value);
    pos = comma + 1;
  }
  return MatrixPolynomial(std::move(coeffs));
}

double MatrixPolynomial::operator()(double lambda) const {
  double acc = coefficients_.back();
  for (auto it = coefficients_.rbegin() + 1; it != coefficients_.rend(); ++it)
    acc = acc * lambda + *it;
  return acc;
}

std::string MatrixPolynomial::to_string() const {
  std::string out;
  char buf[40];
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", coefficients_[i]);
    if (i)
      out += ',';
    out += buf;
  }
  return out;
}

InvertibilityCertificate certify_invertible(const MatrixPolynomial& poly,
                                            const Spectrum& spectrum,
                                            double rel_tol) {
  InvertibilityCertificate cert;

  // Nonnegative coefficients with a positive spectrum force P(lambda) > 0;
  // the constructor already rules out the zero polynomial.
  bool nonneg = true;
  for (double c : poly.coefficients())
    nonneg = nonneg && c >= 0.0;
  cert.positive_sufficient = nonneg && spectrum.min_eigenvalue() > 0.0;

  const std::int64_t n = spectrum.grid().size();
  double min_abs = std::abs(poly(spectrum.eigenvalue_flat(1)));
  double max_abs = min_abs;
  std::int64_t worst = 1;
  for (std::int64_t k = 2; k <= n; ++k) {
    const double v = std::abs(poly(spectrum.eigenvalue_flat(k)));
    if (v < min_abs) {
      min_abs = v;
      worst = k;
    }
    if (v > max_abs)
      max_abs = v;
  }
  cert.min_abs = min_abs;
  cert.max_abs = max_abs;
  cert.worst_mode = worst;
  cert.invertible = min_abs > rel_tol * max_abs;
  return cert;
}

} // namespace lapoly

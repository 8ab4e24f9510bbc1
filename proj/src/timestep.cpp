#include "lapoly/timestep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lapoly/errors.hpp"
#include "lapoly/oracle.hpp"

namespace lapoly {

const char* to_string(TimeScheme scheme) {
  switch (scheme) {
  case TimeScheme::BackwardEuler:
    return "backward-euler";
  case TimeScheme::Trapezoidal:
    return "trapezoidal";
  }
  throw std::invalid_argument("unknown time scheme");
}

EvolutionSpec make_evolution_spec(TimeScheme scheme, double dt, std::int64_t steps,
                                  MatrixPolynomial op) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("time step must be positive and finite");
  if (steps < 0)
    throw std::invalid_argument("step count must be nonnegative");
  return EvolutionSpec{scheme, dt, steps, std::move(op)};
}

double amplification(TimeScheme scheme, double dt, double mu) {
  const double half = scheme == TimeScheme::Trapezoidal ? 0.5 : 1.0;
  const double denom = 1.0 + half * dt * mu;
  if (std::abs(denom) <= 1e-12 * std::max(1.0, std::abs(half * dt * mu)))
    throw SingularOperatorError("implicit step denominator vanishes: 1 + dt*mu = " +
                                    std::to_string(denom),
                                0, denom);
  if (scheme == TimeScheme::BackwardEuler)
    return 1.0 / denom;
  return (1.0 - half * dt * mu) / denom;
}

double integer_power(double g, std::int64_t e) {
  if (e < 0)
    throw std::invalid_argument("integer power needs a nonnegative exponent");
  double result = 1.0;
  double base = g;
  while (e > 0) {
    if (e & 1)
      result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

SnapshotPlan make_snapshot_plan(std::vector<std::int64_t> steps, std::int64_t max_step) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] < 0 || steps[i] > max_step)
      throw std::invalid_argument("snapshot step " + std::to_string(steps[i]) +
                                  " outside [0, " + std::to_string(max_step) + "]");
    if (i && steps[i] <= steps[i - 1])
      throw std::invalid_argument("snapshot steps must be strictly increasing");
  }
  return SnapshotPlan{std::move(steps)};
}

std::vector<Field> evolve(const Spectrum& spectrum, const EvolutionSpec& spec,
                          const Field& u0, const SnapshotPlan& plan,
                          TransformPath path) {
  require_matching(spectrum.grid(), u0, "evolution initial state");
  const std::int64_t n = spectrum.grid().size();

  // Certify every implicit denominator up front; amplification throws on the
  // first vanishing one.
  std::vector<double> g(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k)
    g[k - 1] = amplification(spec.scheme, spec.dt, spec.op(spectrum.eigenvalue_flat(k)));

  std::vector<Field> out;
  out.reserve(plan.steps.size());
  bool analyzed = false;
  CoefficientTensor coeffs{spectrum.grid(), {}};
  for (const std::int64_t s : plan.steps) {
    if (s == 0) {
      out.push_back(u0);
      continue;
    }
    if (!analyzed) {
      coeffs = analyze(u0, spectrum, path);
      analyzed = true;
    }
    CoefficientTensor jumped{spectrum.grid(), coeffs.values};
    for (std::int64_t k = 0; k < n; ++k)
      jumped.values[k] *= integer_power(g[k], s);
    out.push_back(synthesize(jumped, spectrum, path));
  }
  return out;
}

Field evolve_iterative_oracle(const Grid& grid, const EvolutionSpec& spec,
                              const Field& u0) {
  require_matching(grid, u0, "evolution initial state");
  if (spec.steps < 1)
    throw std::invalid_argument("iterative evolution needs at least one step");
  const std::int64_t n = grid.size();
  const DenseMatrix m = assemble_poly(grid, spec.op);

  const double half = spec.scheme == TimeScheme::Trapezoidal ? 0.5 : 1.0;
  DenseMatrix left = DenseMatrix::identity(n);
  left.add_scaled(m, half * spec.dt);
  DenseMatrix right(n); // trapezoidal only
  if (spec.scheme == TimeScheme::Trapezoidal) {
    right = DenseMatrix::identity(n);
    right.add_scaled(m, -half * spec.dt);
  }

  Field u = u0;
  for (std::int64_t s = 0; s < spec.steps; ++s) {
    const std::vector<double> rhs = spec.scheme == TimeScheme::Trapezoidal
                                        ? right.multiply(u.values)
                                        : u.values;
    u.values = dense_solve(left, rhs);
  }
  return u;
}

double binomial_expansion_check(double dt, double lambda, std::int64_t tau) {
  if (tau < 0)
    throw std::invalid_argument("expansion order must be nonnegative");
  if (tau > 30)
    throw GuardExceededError("binomial expansion order " + std::to_string(tau) +
                             " exceeds exact-coefficient range (30)");
  const double z = dt * lambda;
  double coeff = 1.0; // C(tau, 0)
  double power = 1.0;
  double sum = 1.0;
  for (std::int64_t i = 1; i <= tau; ++i) {
    coeff = coeff * double(tau - i + 1) / double(i);
    power *= z;
    sum += coeff * power;
  }
  return sum;
}

} // namespace lapoly

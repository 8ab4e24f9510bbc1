#pragma once

#include <cstdint>
#include <vector>

#include "lapoly/grid.hpp"
#include "lapoly/polynomial.hpp"
#include "lapoly/spectrum.hpp"
#include "lapoly/transform.hpp"

namespace lapoly {

enum class TimeScheme {
  BackwardEuler,
  Trapezoidal,
};

const char* to_string(TimeScheme scheme);

// Implicit time discretization of u' = -P(A) u.
struct EvolutionSpec {
  TimeScheme scheme = TimeScheme::BackwardEuler;
  double dt = 0.0;
  std::int64_t steps = 0;
  MatrixPolynomial op;
};

EvolutionSpec make_evolution_spec(TimeScheme scheme, double dt, std::int64_t steps,
                                  MatrixPolynomial op);

// Per-step amplification of one mode: 1/(1+dt*mu) for backward Euler,
// (1-dt*mu/2)/(1+dt*mu/2) for trapezoidal. Throws SingularOperatorError when
// the implicit denominator vanishes.
double amplification(TimeScheme scheme, double dt, double mu);

// g^e for integer e >= 0 by binary exponentiation (g may be negative).
double integer_power(double g, std::int64_t e);

// Steps at which to capture the solution; nonnegative, ascending, each at
// most the spec's step count. Step 0 is the initial state.
struct SnapshotPlan {
  std::vector<std::int64_t> steps;
};

SnapshotPlan make_snapshot_plan(std::vector<std::int64_t> steps, std::int64_t max_step);

// Jumps each snapshot directly: analyze u0 once, scale mode k by g_k^step,
// synthesize per snapshot. Cost does not depend on the step count.
std::vector<Field> evolve(const Spectrum& spectrum, const EvolutionSpec& spec,
                          const Field& u0, const SnapshotPlan& plan,
                          TransformPath path = TransformPath::Auto);

// Classical comparison stepper: assembles P(A) once, then performs one dense
// implicit solve per step. Returns only the final state.
Field evolve_iterative_oracle(const Grid& grid, const EvolutionSpec& spec,
                              const Field& u0);

// sum_{i=0..tau} C(tau,i) (dt*lambda)^i, the expanded (1+dt*lambda)^tau.
// Guarded to tau <= 30 where binomial coefficients stay exact in double.
double binomial_expansion_check(double dt, double lambda, std::int64_t tau);

} // namespace lapoly

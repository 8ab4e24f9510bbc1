#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lapoly/config.hpp"

namespace lapoly {

// Command bodies behind the CLI. They throw on failure; the entry point maps
// exception types to the documented exit codes.
int cmd_solve(const ProblemConfig& config);

struct InverseRequest {
  bool full = false;
  std::optional<std::pair<std::int64_t, std::int64_t>> entry; // (i, k)
};

int cmd_inverse(const ProblemConfig& config, const InverseRequest& request);

int cmd_evolve(const ProblemConfig& config);

struct VerifyOptions {
  std::int64_t sweep_max_n = 64;    // 1D closed-form inverse sweep
  std::int64_t poisson_n = 16;      // 2D Poisson cross-check
  std::int64_t evolve_n = 32;       // 1D evolve vs iterative oracle
  std::int64_t evolve_steps = 100;
  double evolve_dt = 1e-3;
};

int cmd_verify(const VerifyOptions& options);

struct BenchOptions {
  std::vector<std::int64_t> taus = {1, 10, 100, 1000, 10000};
  std::int64_t skip_iterative_above = 1000;
  double dt = 1e-3;
  TimeScheme scheme = TimeScheme::BackwardEuler;
};

// Grid and polynomial default to a 2D 32x32 Dirichlet grid with P = lambda
// when the config leaves them unset; format defaults to JSON rows.
int cmd_bench(const ProblemConfig& config, const BenchOptions& options);

} // namespace lapoly

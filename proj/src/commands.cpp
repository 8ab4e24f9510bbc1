#include "lapoly/commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "lapoly/errors.hpp"
#include "lapoly/io.hpp"
#include "lapoly/oracle.hpp"
#include "lapoly/solver.hpp"
#include "lapoly/timestep.hpp"
#include "lapoly/transform.hpp"

namespace lapoly {

namespace {

const Grid& require_grid(const ProblemConfig& config) {
  if (!config.grid)
    throw std::invalid_argument("no grid given (use --config or --dim/--n)");
  return *config.grid;
}

const MatrixPolynomial& require_poly(const ProblemConfig& config) {
  if (!config.poly)
    throw std::invalid_argument("no polynomial given (use --poly)");
  return *config.poly;
}

double time_seconds(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return elapsed.count();
}

double relative_max_error(const std::vector<double>& got,
                          const std::vector<double>& want) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    num = std::max(num, std::abs(got[i] - want[i]));
    den = std::max(den, std::abs(want[i]));
  }
  return den > 0.0 ? num / den : num;
}

} // namespace

int cmd_solve(const ProblemConfig& config) {
  const Spectrum spectrum(require_grid(config));
  const MatrixPolynomial& poly = require_poly(config);
  const Field rhs = materialize_rhs(config.rhs, spectrum);
  const Field x = solve(spectrum, poly, rhs);

  with_output_stream(config.output, [&](std::ostream& out) {
    if (config.format.value_or(OutputFormat::Csv) == OutputFormat::Csv)
      write_field_csv(out, x);
    else
      out << field_to_json(x).dump(2) << '\n';
  });
  return 0;
}

int cmd_inverse(const ProblemConfig& config, const InverseRequest& request) {
  const Grid& grid = require_grid(config);
  const Spectrum spectrum(grid);
  const MatrixPolynomial& poly = require_poly(config);
  if (request.full == request.entry.has_value())
    throw std::invalid_argument("inverse needs exactly one of --entry i,k or --full");

  if (request.full) {
    if (grid.size() > kDenseSizeCap)
      throw std::invalid_argument("full inverse needs n <= " +
                                  std::to_string(kDenseSizeCap) + ", grid has n = " +
                                  std::to_string(grid.size()));
    const DenseMatrix inv = inverse_dense(spectrum, poly);
    with_output_stream(config.output, [&](std::ostream& out) {
      if (config.format.value_or(OutputFormat::Csv) == OutputFormat::Csv) {
        out << "i,k,value\n";
        for (std::int64_t i = 1; i <= inv.n(); ++i)
          for (std::int64_t k = 1; k <= inv.n(); ++k)
            out << i << ',' << k << ',' << format_double(inv.at(i - 1, k - 1)) << '\n';
      } else {
        nlohmann::json j;
        j["grid"] = grid_to_json(grid);
        auto rows = nlohmann::json::array();
        for (std::int64_t i = 0; i < inv.n(); ++i)
          rows.push_back(std::vector<double>(inv.data().begin() + i * inv.n(),
                                             inv.data().begin() + (i + 1) * inv.n()));
        j["values"] = std::move(rows);
        out << j.dump(2) << '\n';
      }
    });
    return 0;
  }

  const auto [i, k] = *request.entry;
  const double value = inverse_entry(spectrum, poly, i, k);
  with_output_stream(config.output, [&](std::ostream& out) {
    if (config.format.value_or(OutputFormat::Csv) == OutputFormat::Csv) {
      out << format_double(value) << '\n';
    } else {
      nlohmann::json j;
      j["i"] = i;
      j["k"] = k;
      j["value"] = value;
      out << j.dump(2) << '\n';
    }
  });
  return 0;
}

int cmd_evolve(const ProblemConfig& config) {
  const Spectrum spectrum(require_grid(config));
  const MatrixPolynomial& poly = require_poly(config);
  if (!config.evolution)
    throw std::invalid_argument("no evolution block given (use --dt/--steps)");
  const EvolutionConfig& evo = *config.evolution;

  const EvolutionSpec spec = make_evolution_spec(evo.scheme, evo.dt, evo.steps, poly);
  std::vector<std::int64_t> steps =
      evo.snapshots.empty() ? std::vector<std::int64_t>{evo.steps} : evo.snapshots;
  const SnapshotPlan plan = make_snapshot_plan(std::move(steps), evo.steps);
  const Field u0 = materialize_rhs(config.rhs, spectrum);
  const std::vector<Field> fields = evolve(spectrum, spec, u0, plan);

  with_output_stream(config.output, [&](std::ostream& out) {
    if (config.format.value_or(OutputFormat::Csv) == OutputFormat::Csv)
      write_snapshots_csv(out, plan.steps, fields, spec.dt);
    else
      out << snapshots_to_json(plan.steps, fields, spec.dt).dump(2) << '\n';
  });
  return 0;
}

int cmd_verify(const VerifyOptions& options) {
  bool all_ok = true;
  const auto report = [&](const char* name, double err, double tol) {
    const bool ok = err < tol;
    all_ok = all_ok && ok;
    std::cout << name << ": max error " << format_double(err) << " (tolerance "
              << format_double(tol) << ") " << (ok ? "PASS" : "FAIL") << '\n';
  };

  // 1D closed-form inverse sweep, error measured in units of h^2.
  {
    const MatrixPolynomial laplace({0.0, 1.0});
    double worst = 0.0;
    for (std::int64_t n = 1; n <= options.sweep_max_n; ++n) {
      const Spectrum spectrum(make_grid({n}));
      const double h2 = 1.0 / (double(n + 1) * double(n + 1));
      for (std::int64_t i = 1; i <= n; ++i)
        for (std::int64_t k = 1; k <= n; ++k) {
          const double err = std::abs(inverse_entry(spectrum, laplace, i, k) -
                                      dirichlet_inverse_closed_form(n, i, k));
          worst = std::max(worst, err / h2);
        }
    }
    report("closed-form inverse sweep", worst, 1e-12);
  }

  // 2D Poisson spectral vs dense LU.
  {
    const MatrixPolynomial laplace({0.0, 1.0});
    const Grid grid = make_grid({options.poisson_n, options.poisson_n});
    const Spectrum spectrum(grid);
    const Field b = make_field(grid, 1.0);
    const Field x = solve(spectrum, laplace, b);
    const std::vector<double> y = dense_solve(assemble_laplacian(grid), b.values);
    report("2d poisson dense cross-check", relative_max_error(x.values, y), 1e-10);
  }

  // Spectral time jump vs step-by-step dense iteration.
  {
    const MatrixPolynomial laplace({0.0, 1.0});
    const Grid grid = make_grid({options.evolve_n});
    const Spectrum spectrum(grid);
    const EvolutionSpec spec = make_evolution_spec(
        TimeScheme::BackwardEuler, options.evolve_dt, options.evolve_steps, laplace);
    const Field u0 = make_field(grid, 1.0);
    const SnapshotPlan plan = make_snapshot_plan({options.evolve_steps}, options.evolve_steps);
    const Field jumped = evolve(spectrum, spec, u0, plan).back();
    const Field stepped = evolve_iterative_oracle(grid, spec, u0);
    report("evolve vs iterative oracle", relative_max_error(jumped.values, stepped.values),
           1e-8);
  }

  return all_ok ? 0 : 1;
}

int cmd_bench(const ProblemConfig& config, const BenchOptions& options) {
  const Grid grid = config.grid ? *config.grid : make_grid({32, 32});
  const MatrixPolynomial poly =
      config.poly ? *config.poly : MatrixPolynomial({0.0, 1.0});
  const Spectrum spectrum(grid);
  const Field u0 = materialize_rhs(config.rhs, spectrum);

  // Untimed warmup so the first row does not absorb one-time setup costs
  // (transform planning, lazy allocations).
  {
    const EvolutionSpec warm = make_evolution_spec(options.scheme, options.dt, 1, poly);
    evolve(spectrum, warm, u0, make_snapshot_plan({1}, 1));
  }

  auto rows = nlohmann::json::array();
  for (const std::int64_t tau : options.taus) {
    if (tau < 1)
      throw std::invalid_argument("bench tau must be >= 1");
    const EvolutionSpec spec =
        make_evolution_spec(options.scheme, options.dt, tau, poly);
    const SnapshotPlan plan = make_snapshot_plan({tau}, tau);

    nlohmann::json row;
    row["tau"] = tau;
    row["spectral_seconds"] =
        time_seconds([&] { evolve(spectrum, spec, u0, plan); });
    if (tau <= options.skip_iterative_above && grid.size() <= kDenseSizeCap)
      row["iterative_seconds"] =
          time_seconds([&] { evolve_iterative_oracle(grid, spec, u0); });
    else
      row["iterative_seconds"] = nullptr;
    rows.push_back(std::move(row));
  }

  with_output_stream(config.output, [&](std::ostream& out) {
    if (config.format.value_or(OutputFormat::Json) == OutputFormat::Csv) {
      out << "tau,spectral_seconds,iterative_seconds\n";
      for (const auto& row : rows) {
        out << row["tau"].get<std::int64_t>() << ','
            << format_double(row["spectral_seconds"].get<double>()) << ',';
        if (!row["iterative_seconds"].is_null())
          out << format_double(row["iterative_seconds"].get<double>());
        out << '\n';
      }
    } else {
      out << rows.dump(2) << '\n';
    }
  });
  return 0;
}

} // namespace lapoly

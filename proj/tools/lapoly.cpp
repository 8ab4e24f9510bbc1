#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lapoly/commands.hpp"
#include "lapoly/config.hpp"
#include "lapoly/errors.hpp"

namespace {

using namespace lapoly;

struct SharedFlags {
  std::string config_path;
  std::int64_t dim = 0;
  std::string n_list;
  std::string bc_list;
  std::string poly;
  std::string rhs;
  std::string output;
  std::string format;
};

void add_shared_flags(CLI::App* cmd, SharedFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Problem config JSON file");
  cmd->add_option("--dim", flags.dim, "Grid dimension");
  cmd->add_option("--n", flags.n_list,
                  "Nodes per axis, comma separated (single value broadcasts)");
  cmd->add_option("--bc", flags.bc_list,
                  "Boundary kinds per axis: dirichlet|dirichlet-neumann");
  cmd->add_option("--poly", flags.poly,
                  "Polynomial coefficients, ascending, comma separated");
  cmd->add_option("--rhs", flags.rhs, "Right-hand side: ones|file:<path>|mode:<k>");
  cmd->add_option("--output", flags.output, "Output path ('-' = stdout)");
  cmd->add_option("--format", flags.format, "Output format: csv|json");
}

ProblemConfig assemble_config(const SharedFlags& flags) {
  ProblemConfig config;
  if (!flags.config_path.empty())
    config = load_problem_config(flags.config_path);

  if (!flags.n_list.empty()) {
    std::vector<std::int64_t> extents = parse_int_list(flags.n_list);
    if (flags.dim > 0) {
      if (extents.size() == 1 && flags.dim > 1)
        extents.assign(static_cast<std::size_t>(flags.dim), extents[0]);
      if (static_cast<std::int64_t>(extents.size()) != flags.dim)
        throw std::invalid_argument("--n list length does not match --dim");
    }
    std::vector<BoundaryKind> bc(extents.size(), BoundaryKind::DirichletBoth);
    if (!flags.bc_list.empty()) {
      bc.clear();
      std::size_t pos = 0;
      const std::string& text = flags.bc_list;
      while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos)
          comma = text.size();
        bc.push_back(parse_boundary_kind(text.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      if (bc.size() == 1 && extents.size() > 1)
        bc.assign(extents.size(), bc[0]);
      if (bc.size() != extents.size())
        throw std::invalid_argument("--bc list length does not match the grid");
    }
    config.grid = make_grid(std::move(extents), std::move(bc));
  } else if (flags.dim > 0 && !config.grid) {
    throw std::invalid_argument("--dim given without --n");
  } else if (!flags.bc_list.empty() && !config.grid) {
    throw std::invalid_argument("--bc given without --n");
  }

  if (!flags.poly.empty())
    config.poly = MatrixPolynomial::parse(flags.poly);
  if (!flags.rhs.empty())
    config.rhs = parse_rhs_spec(flags.rhs);
  if (!flags.output.empty())
    config.output = flags.output;
  if (!flags.format.empty())
    config.format = parse_output_format(flags.format);
  return config;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for polynomials of the discrete Laplace matrix"};
  app.require_subcommand(1);

  SharedFlags solve_flags;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve P(A) x = b spectrally");
  add_shared_flags(solve_cmd, solve_flags);

  SharedFlags inverse_flags;
  std::string inverse_entry_arg;
  bool inverse_full = false;
  CLI::App* inverse_cmd =
      app.add_subcommand("inverse", "Entries or all of P(A)^{-1}");
  add_shared_flags(inverse_cmd, inverse_flags);
  inverse_cmd->add_option("--entry", inverse_entry_arg, "Entry as 'i,k' (1-based flat)");
  inverse_cmd->add_flag("--full", inverse_full, "Emit the whole inverse (n <= 4096)");

  SharedFlags evolve_flags;
  std::string evolve_scheme;
  double evolve_dt = -1.0;
  std::int64_t evolve_steps = -1;
  std::string evolve_snapshots;
  CLI::App* evolve_cmd =
      app.add_subcommand("evolve", "March u' + P(A) u = 0 by spectral time jumps");
  add_shared_flags(evolve_cmd, evolve_flags);
  evolve_cmd->add_option("--scheme", evolve_scheme,
                         "Time scheme: backward-euler|trapezoidal");
  evolve_cmd->add_option("--dt", evolve_dt, "Time step");
  evolve_cmd->add_option("--steps", evolve_steps, "Number of steps");
  evolve_cmd->add_option("--snapshots", evolve_snapshots,
                         "Steps to emit, comma separated (default: final step)");

  VerifyOptions verify_options;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the oracle-equivalence scenarios");
  verify_cmd->add_option("--sweep-max-n", verify_options.sweep_max_n,
                         "Largest N in the 1D closed-form inverse sweep");
  verify_cmd->add_option("--poisson-n", verify_options.poisson_n,
                         "Axis size of the 2D Poisson cross-check");
  verify_cmd->add_option("--evolve-n", verify_options.evolve_n,
                         "Axis size of the 1D evolve cross-check");
  verify_cmd->add_option("--evolve-steps", verify_options.evolve_steps,
                         "Steps in the evolve cross-check");
  verify_cmd->add_option("--evolve-dt", verify_options.evolve_dt,
                         "Time step in the evolve cross-check");

  SharedFlags bench_flags;
  BenchOptions bench_options;
  std::string bench_taus;
  std::string bench_scheme;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Wall-clock comparison of spectral jump vs dense iteration");
  add_shared_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("--taus", bench_taus,
                        "Step counts to time, comma separated (default 1..10^4)");
  bench_cmd->add_option("--skip-iterative-above", bench_options.skip_iterative_above,
                        "Skip the dense stepper above this tau");
  bench_cmd->add_option("--dt", bench_options.dt, "Time step");
  bench_cmd->add_option("--scheme", bench_scheme,
                        "Time scheme: backward-euler|trapezoidal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve_cmd->parsed())
      return cmd_solve(assemble_config(solve_flags));

    if (inverse_cmd->parsed()) {
      InverseRequest request;
      request.full = inverse_full;
      if (!inverse_entry_arg.empty()) {
        const std::vector<std::int64_t> ik = parse_int_list(inverse_entry_arg);
        if (ik.size() != 2)
          throw std::invalid_argument("--entry needs exactly 'i,k'");
        request.entry = std::make_pair(ik[0], ik[1]);
      }
      return cmd_inverse(assemble_config(inverse_flags), request);
    }

    if (evolve_cmd->parsed()) {
      ProblemConfig config = assemble_config(evolve_flags);
      EvolutionConfig evo =
          config.evolution ? *config.evolution : EvolutionConfig{};
      if (!evolve_scheme.empty())
        evo.scheme = parse_time_scheme(evolve_scheme);
      if (evolve_dt >= 0.0)
        evo.dt = evolve_dt;
      if (evolve_steps >= 0)
        evo.steps = evolve_steps;
      if (!evolve_snapshots.empty())
        evo.snapshots = parse_int_list(evolve_snapshots);
      if (!config.evolution && evolve_dt < 0.0 && evolve_steps < 0)
        throw std::invalid_argument("evolve needs --dt and --steps (or a config)");
      config.evolution = std::move(evo);
      return cmd_evolve(config);
    }

    if (verify_cmd->parsed())
      return cmd_verify(verify_options);

    if (bench_cmd->parsed()) {
      if (!bench_taus.empty())
        bench_options.taus = parse_int_list(bench_taus);
      if (!bench_scheme.empty())
        bench_options.scheme = parse_time_scheme(bench_scheme);
      return cmd_bench(assemble_config(bench_flags), bench_options);
    }

    throw std::invalid_argument("no subcommand selected");
  } catch (const SingularOperatorError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const SingularMatrixError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const GuardExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

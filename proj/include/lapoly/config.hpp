#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lapoly/grid.hpp"
#include "lapoly/polynomial.hpp"
#include "lapoly/spectrum.hpp"
#include "lapoly/timestep.hpp"

namespace lapoly {

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(const std::string& text);
TimeScheme parse_time_scheme(const std::string& text);
BoundaryKind parse_boundary_kind(const std::string& text);

// Right-hand side (or initial state) presets: "ones", "file:<path>",
// "mode:<k>" (eigenvector of flat mode k).
struct RhsSpec {
  enum class Kind { Ones, File, Mode };
  Kind kind = Kind::Ones;
  std::string path;
  std::int64_t mode = 0;
};

RhsSpec parse_rhs_spec(const std::string& text);
Field materialize_rhs(const RhsSpec& rhs, const Spectrum& spectrum);

struct EvolutionConfig {
  TimeScheme scheme = TimeScheme::BackwardEuler;
  double dt = 0.0;
  std::int64_t steps = 0;
  std::vector<std::int64_t> snapshots; // empty means {steps}
};

// One problem statement as accepted by every subcommand. Fields stay empty
// until either a config file or command-line flags fill them; each command
// checks for what it needs.
struct ProblemConfig {
  std::optional<Grid> grid;
  std::optional<MatrixPolynomial> poly;
  RhsSpec rhs;
  std::optional<EvolutionConfig> evolution;
  std::string output = "-";
  // Unset means the command's default (csv everywhere except bench).
  std::optional<OutputFormat> format;
};

nlohmann::json grid_to_json(const Grid& grid);
Grid grid_from_json(const nlohmann::json& j);

// Full config object; unknown keys anywhere are rejected.
ProblemConfig problem_config_from_json(const nlohmann::json& j);
ProblemConfig load_problem_config(const std::string& path);

// Comma-separated integers, e.g. "16,16" or "1,10,100".
std::vector<std::int64_t> parse_int_list(const std::string& text);

} // namespace lapoly

#include "lapoly/config.hpp"

#include <fstream>
#include <stdexcept>

namespace lapoly {

namespace {

void reject_unknown_keys(const nlohmann::json& j,
                         std::initializer_list<const char*> allowed,
                         const char* context) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      known = known || item.key() == key;
    if (!known)
      throw std::invalid_argument(std::string("unknown key '") + item.key() + "' in " +
                                  context);
  }
}

std::int64_t to_int(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer())
    throw std::invalid_argument(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

} // namespace

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv")
    return OutputFormat::Csv;
  if (text == "json")
    return OutputFormat::Json;
  throw std::invalid_argument("unknown output format '" + text + "' (csv|json)");
}

TimeScheme parse_time_scheme(const std::string& text) {
  if (text == "backward-euler")
    return TimeScheme::BackwardEuler;
  if (text == "trapezoidal")
    return TimeScheme::Trapezoidal;
  throw std::invalid_argument("unknown time scheme '" + text +
                              "' (backward-euler|trapezoidal)");
}

BoundaryKind parse_boundary_kind(const std::string& text) {
  if (text == "dirichlet")
    return BoundaryKind::DirichletBoth;
  if (text == "dirichlet-neumann")
    return BoundaryKind::DirichletLeftNeumannRight;
  throw std::invalid_argument("unknown boundary kind '" + text +
                              "' (dirichlet|dirichlet-neumann)");
}

RhsSpec parse_rhs_spec(const std::string& text) {
  RhsSpec rhs;
  if (text == "ones") {
    rhs.kind = RhsSpec::Kind::Ones;
    return rhs;
  }
  if (text.rfind("file:", 0) == 0) {
    rhs.kind = RhsSpec::Kind::File;
    rhs.path = text.substr(5);
    if (rhs.path.empty())
      throw std::invalid_argument("rhs file path is empty");
    return rhs;
  }
  if (text.rfind("mode:", 0) == 0) {
    rhs.kind = RhsSpec::Kind::Mode;
    const std::string num = text.substr(5);
    std::size_t used = 0;
    try {
      rhs.mode = std::stoll(num, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rhs mode index '" + num + "'");
    }
    if (used != num.size() || rhs.mode < 1)
      throw std::invalid_argument("bad rhs mode index '" + num + "'");
    return rhs;
  }
  throw std::invalid_argument("unknown rhs spec '" + text +
                              "' (ones|file:<path>|mode:<k>)");
}

Field materialize_rhs(const RhsSpec& rhs, const Spectrum& spectrum) {
  const Grid& grid = spectrum.grid();
  switch (rhs.kind) {
  case RhsSpec::Kind::Ones:
    return make_field(grid, 1.0);
  case RhsSpec::Kind::File: {
    std::ifstream in(rhs.path);
    if (!in)
      throw std::invalid_argument("cannot open rhs file '" + rhs.path + "'");
    Field field = make_field(grid);
    for (std::int64_t i = 0; i < grid.size(); ++i)
      if (!(in >> field.values[i]))
        throw std::invalid_argument("rhs file '" + rhs.path + "' ended early: need " +
                                    std::to_string(grid.size()) + " values");
    double extra;
    if (in >> extra)
      throw std::invalid_argument("rhs file '" + rhs.path + "' has more than " +
                                  std::to_string(grid.size()) + " values");
    return field;
  }
  case RhsSpec::Kind::Mode: {
    if (rhs.mode < 1 || rhs.mode > grid.size())
      throw std::invalid_argument("rhs mode " + std::to_string(rhs.mode) +
                                  " outside 1.." + std::to_string(grid.size()));
    const std::vector<std::int64_t> kvec = grid.unflatten(rhs.mode);
    Field field = make_field(grid);
    std::vector<std::int64_t> node(grid.dim());
    for (std::int64_t flat = 1; flat <= grid.size(); ++flat) {
      grid.unflatten_into(flat, node);
      field.values[flat - 1] = spectrum.eigenvector_entry(kvec, node);
    }
    return field;
  }
  }
  throw std::invalid_argument("unhandled rhs kind");
}

nlohmann::json grid_to_json(const Grid& grid) {
  nlohmann::json j;
  j["dim"] = grid.dim();
  j["n_per_axis"] = grid.extents();
  std::vector<std::string> bc;
  bc.reserve(grid.dim());
  for (BoundaryKind kind : grid.bc())
    bc.emplace_back(to_string(kind));
  j["bc_per_axis"] = bc;
  return j;
}

Grid grid_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw std::invalid_argument("grid config must be an object");
  reject_unknown_keys(j, {"dim", "n_per_axis", "bc_per_axis"}, "grid config");
  if (!j.contains("dim") || !j.contains("n_per_axis"))
    throw std::invalid_argument("grid config needs 'dim' and 'n_per_axis'");

  const std::int64_t dim = to_int(j.at("dim"), "grid dim");
  if (!j.at("n_per_axis").is_array())
    throw std::invalid_argument("n_per_axis must be an array");
  std::vector<std::int64_t> extents;
  for (const auto& v : j.at("n_per_axis"))
    extents.push_back(to_int(v, "n_per_axis entry"));
  if (static_cast<std::int64_t>(extents.size()) != dim)
    throw std::invalid_argument("n_per_axis length does not match dim");

  std::vector<BoundaryKind> bc(extents.size(), BoundaryKind::DirichletBoth);
  if (j.contains("bc_per_axis")) {
    if (!j.at("bc_per_axis").is_array())
      throw std::invalid_argument("bc_per_axis must be an array");
    bc.clear();
    for (const auto& v : j.at("bc_per_axis")) {
      if (!v.is_string())
        throw std::invalid_argument("bc_per_axis entries must be strings");
      bc.push_back(parse_boundary_kind(v.get<std::string>()));
    }
    if (bc.size() != extents.size())
      throw std::invalid_argument("bc_per_axis length does not match dim");
  }
  return make_grid(std::move(extents), std::move(bc));
}

ProblemConfig problem_config_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw std::invalid_argument("config must be a JSON object");
  reject_unknown_keys(
      j, {"grid", "polynomial", "rhs", "evolution", "output", "format"}, "config");

  ProblemConfig config;
  if (j.contains("grid"))
    config.grid = grid_from_json(j.at("grid"));
  if (j.contains("polynomial")) {
    if (!j.at("polynomial").is_string())
      throw std::invalid_argument("polynomial must be a string of coefficients");
    config.poly = MatrixPolynomial::parse(j.at("polynomial").get<std::string>());
  }
  if (j.contains("rhs")) {
    if (!j.at("rhs").is_string())
      throw std::invalid_argument("rhs must be a string spec");
    config.rhs = parse_rhs_spec(j.at("rhs").get<std::string>());
  }
  if (j.contains("evolution")) {
    const auto& e = j.at("evolution");
    if (!e.is_object())
      throw std::invalid_argument("evolution config must be an object");
    reject_unknown_keys(e, {"scheme", "dt", "steps", "snapshots"}, "evolution config");
    EvolutionConfig evo;
    if (e.contains("scheme")) {
      if (!e.at("scheme").is_string())
        throw std::invalid_argument("evolution scheme must be a string");
      evo.scheme = parse_time_scheme(e.at("scheme").get<std::string>());
    }
    if (!e.contains("dt") || !e.at("dt").is_number())
      throw std::invalid_argument("evolution config needs a numeric 'dt'");
    evo.dt = e.at("dt").get<double>();
    if (!e.contains("steps"))
      throw std::invalid_argument("evolution config needs 'steps'");
    evo.steps = to_int(e.at("steps"), "evolution steps");
    if (e.contains("snapshots")) {
      if (!e.at("snapshots").is_array())
        throw std::invalid_argument("snapshots must be an array");
      for (const auto& v : e.at("snapshots"))
        evo.snapshots.push_back(to_int(v, "snapshot step"));
    }
    config.evolution = std::move(evo);
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string())
      throw std::invalid_argument("output must be a string path");
    config.output = j.at("output").get<std::string>();
  }
  if (j.contains("format")) {
    if (!j.at("format").is_string())
      throw std::invalid_argument("format must be a string");
    config.format = parse_output_format(j.at("format").get<std::string>());
  }
  return config;
}

ProblemConfig load_problem_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file '" + path + "' is not valid JSON: " +
                                e.what());
  }
  return problem_config_from_json(j);
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos)
      comma = text.size();
    const std::string piece = text.substr(pos, comma - pos);
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(piece, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer '" + piece + "' in list");
    }
    if (used != piece.size())
      throw std::invalid_argument("bad integer '" + piece + "' in list");
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

} // namespace lapoly

#include "lapoly/io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>

namespace lapoly {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(std::ostream& out, const Field& field) {
  const Grid& grid = field.grid;
  out << "index";
  for (int p = 1; p <= grid.dim(); ++p)
    out << ",coord_" << p;
  out << ",value\n";
  std::vector<std::int64_t> multi(grid.dim());
  for (std::int64_t flat = 1; flat <= grid.size(); ++flat) {
    grid.unflatten_into(flat, multi);
    out << flat;
    for (int p = 0; p < grid.dim(); ++p)
      out << ',' << format_double(grid.node_coordinate(p, multi[p]));
    out << ',' << format_double(field.values[flat - 1]) << '\n';
  }
}

nlohmann::json field_to_json(const Field& field) {
  nlohmann::json j;
  j["grid"] = grid_to_json(field.grid);
  j["values"] = field.values;
  return j;
}

void write_snapshots_csv(std::ostream& out, const std::vector<std::int64_t>& steps,
                         const std::vector<Field>& fields, double dt) {
  for (std::size_t s = 0; s < fields.size(); ++s) {
    out << "# step=" << steps[s] << " t=" << format_double(double(steps[s]) * dt)
        << '\n';
    write_field_csv(out, fields[s]);
    if (s + 1 < fields.size())
      out << '\n';
  }
}

nlohmann::json snapshots_to_json(const std::vector<std::int64_t>& steps,
                                 const std::vector<Field>& fields, double dt) {
  nlohmann::json j;
  if (!fields.empty())
    j["grid"] = grid_to_json(fields.front().grid);
  j["snapshots"] = nlohmann::json::array();
  for (std::size_t s = 0; s < fields.size(); ++s) {
    nlohmann::json snap;
    snap["step"] = steps[s];
    snap["t"] = double(steps[s]) * dt;
    snap["values"] = fields[s].values;
    j["snapshots"].push_back(std::move(snap));
  }
  return j;
}

void with_output_stream(const std::string& path,
                        const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw std::invalid_argument("cannot open output file '" + path + "'");
  body(out);
  if (!out)
    throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace lapoly

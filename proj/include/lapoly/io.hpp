#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lapoly/config.hpp"
#include "lapoly/grid.hpp"

namespace lapoly {

// %.17g rendering; round-trips every double.
std::string format_double(double v);

// Header `index,coord_1..coord_d,value`, one row per node in flat order.
void write_field_csv(std::ostream& out, const Field& field);
nlohmann::json field_to_json(const Field& field);

// One `# step=<s> t=<s*dt>` comment line plus a field block per snapshot.
void write_snapshots_csv(std::ostream& out, const std::vector<std::int64_t>& steps,
                         const std::vector<Field>& fields, double dt);
nlohmann::json snapshots_to_json(const std::vector<std::int64_t>& steps,
                                 const std::vector<Field>& fields, double dt);

// Runs `body(stream)` against the named file, or stdout when path is "-".
void with_output_stream(const std::string& path,
                        const std::function<void(std::ostream&)>& body);

} // namespace lapoly

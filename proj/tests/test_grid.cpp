#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>

#include "lapoly/config.hpp"
#include "lapoly/errors.hpp"
#include "lapoly/grid.hpp"

using namespace lapoly;

TEST_CASE("spacing follows the boundary pair") {
  const Grid dirichlet = make_grid({4});
  CHECK(dirichlet.spacing()[0] == doctest::Approx(1.0 / 5).epsilon(1e-15));

  const Grid mixed = make_grid({4}, {BoundaryKind::DirichletLeftNeumannRight});
  CHECK(mixed.spacing()[0] == doctest::Approx(1.0 / 4).epsilon(1e-15));

  const Grid both = make_grid({2, 3}, {BoundaryKind::DirichletBoth,
                                       BoundaryKind::DirichletLeftNeumannRight});
  CHECK(both.spacing()[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(both.spacing()[1] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(both.size() == 6);
}

TEST_CASE("flatten matches the paper's 2D examples") {
  const Grid grid = make_grid({4, 4});
  const std::int64_t multi1[] = {2, 3};
  CHECK(grid.flatten(multi1) == 10);
  const std::int64_t multi2[] = {4, 2};
  CHECK(grid.flatten(multi2) == 8);

  const Grid line = make_grid({3});
  const std::int64_t multi3[] = {2};
  CHECK(line.flatten(multi3) == 2);
}

TEST_CASE("unflatten inverts flatten") {
  const Grid grid = make_grid({4, 4});
  CHECK(grid.unflatten(10) == std::vector<std::int64_t>{2, 3});
  CHECK(grid.unflatten(8) == std::vector<std::int64_t>{4, 2});

  // Exhaustive round trip and bijection on a mixed-radix 3D grid.
  const Grid box = make_grid({3, 4, 5});
  std::set<std::int64_t> seen;
  for (std::int64_t i1 = 1; i1 <= 3; ++i1)
    for (std::int64_t i2 = 1; i2 <= 4; ++i2)
      for (std::int64_t i3 = 1; i3 <= 5; ++i3) {
        const std::int64_t multi[] = {i1, i2, i3};
        const std::int64_t flat = box.flatten(multi);
        CHECK(flat >= 1);
        CHECK(flat <= box.size());
        seen.insert(flat);
        CHECK(box.unflatten(flat) == std::vector<std::int64_t>{i1, i2, i3});
      }
  CHECK(seen.size() == static_cast<std::size_t>(box.size()));
}

TEST_CASE("axis 1 varies fastest") {
  const Grid grid = make_grid({3, 2});
  const std::int64_t first[] = {1, 1};
  const std::int64_t second[] = {2, 1};
  const std::int64_t wrap[] = {1, 2};
  CHECK(grid.flatten(first) == 1);
  CHECK(grid.flatten(second) == 2);
  CHECK(grid.flatten(wrap) == 4);
}

TEST_CASE("index validation") {
  const Grid grid = make_grid({4, 4});
  const std::int64_t low[] = {0, 1};
  const std::int64_t high[] = {5, 1};
  const std::int64_t short_rank[] = {1};
  CHECK_THROWS_AS(grid.flatten(low), std::out_of_range);
  CHECK_THROWS_AS(grid.flatten(high), std::out_of_range);
  CHECK_THROWS_AS(grid.flatten(short_rank), std::invalid_argument);
  CHECK_THROWS_AS(grid.unflatten(0), std::out_of_range);
  CHECK_THROWS_AS(grid.unflatten(17), std::out_of_range);

  CHECK_THROWS_AS(make_grid({}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid({0}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid({-3}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid({2, 2}, {BoundaryKind::DirichletBoth}),
                  std::invalid_argument);
}

TEST_CASE("node coordinates") {
  const Grid dirichlet = make_grid({3});
  CHECK(dirichlet.node_coordinate(0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(dirichlet.node_coordinate(0, 3) == doctest::Approx(0.75).epsilon(1e-15));

  const Grid mixed = make_grid({3}, {BoundaryKind::DirichletLeftNeumannRight});
  CHECK(mixed.node_coordinate(0, 3) == 1.0); // Neumann-side node sits on x=1
  CHECK_THROWS_AS(mixed.node_coordinate(0, 4), std::out_of_range);
  CHECK_THROWS_AS(mixed.node_coordinate(1, 1), std::out_of_range);
}

TEST_CASE("json round trip") {
  const Grid grid = make_grid({5, 3}, {BoundaryKind::DirichletBoth,
                                       BoundaryKind::DirichletLeftNeumannRight});
  const nlohmann::json j = grid_to_json(grid);
  CHECK(j.at("dim") == 2);
  CHECK(j.at("n_per_axis") == nlohmann::json::array({5, 3}));
  CHECK(j.at("bc_per_axis") ==
        nlohmann::json::array({"dirichlet", "dirichlet-neumann"}));
  CHECK(grid_from_json(j) == grid);
}

TEST_CASE("json validation") {
  CHECK_THROWS_AS(grid_from_json({{"dim", 1}, {"n_per_axis", {4}}, {"extra", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_from_json({{"dim", 2}, {"n_per_axis", {4}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_from_json({{"n_per_axis", {4}}}), std::invalid_argument);
  CHECK_THROWS_AS(
      grid_from_json({{"dim", 1}, {"n_per_axis", {4}}, {"bc_per_axis", {"robin"}}}),
      std::invalid_argument);
  // bc_per_axis may be omitted; all axes default to Dirichlet.
  const Grid grid = grid_from_json({{"dim", 1}, {"n_per_axis", {4}}});
  CHECK(grid.bc()[0] == BoundaryKind::DirichletBoth);
}

TEST_CASE("fields carry their grid") {
  const Grid grid = make_grid({3, 3});
  const Field field = make_field(grid, 2.5);
  CHECK(field.values.size() == 9);
  CHECK(field.values[4] == 2.5);
  CHECK_NOTHROW(require_matching(grid, field, "field"));

  const Grid other = make_grid({3, 4});
  CHECK_THROWS_AS(require_matching(other, field, "field"), GridMismatchError);
}

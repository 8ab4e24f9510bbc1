#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "lapoly/errors.hpp"
#include "lapoly/grid.hpp"
#include "lapoly/spectrum.hpp"
#include "lapoly/transform.hpp"

using namespace lapoly;

namespace {

constexpr auto kDir = BoundaryKind::DirichletBoth;
constexpr auto kMix = BoundaryKind::DirichletLeftNeumannRight;

Field random_field(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(-1.0, 1.0);
  Field f = make_field(grid);
  for (double& v : f.values) v = draw(rng);
  return f;
}

Field mode_field(const Grid& grid, const Spectrum& spectrum,
                 const std::vector<std::int64_t>& modes) {
  Field f = make_field(grid);
  std::vector<std::int64_t> nodes(grid.dim());
  for (std::int64_t i = 1; i <= grid.size(); ++i) {
    grid.unflatten_into(i, nodes);
    f.values[i - 1] = spectrum.eigenvector_entry(modes, nodes);
  }
  return f;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

const std::vector<Grid>& sample_grids() {
  static const std::vector<Grid> grids = {
      make_grid({1}),
      make_grid({2}),
      make_grid({32}),
      make_grid({17}, {kMix}),
      make_grid({5, 7}, {kDir, kMix}),
      make_grid({3, 4, 5}, {kMix, kDir, kMix}),
  };
  return grids;
}

} // namespace

TEST_CASE("unit impulse on the N=2 line") {
  const Grid grid = make_grid({2});
  const Spectrum s = make_spectrum(grid);
  const Field b{grid, {1.0, 0.0}};
  const CoefficientTensor c = analyze(b, s);
  CHECK(c.values[0] == doctest::Approx(0.70710678118654752).epsilon(1e-14));
  CHECK(c.values[1] == doctest::Approx(0.70710678118654752).epsilon(1e-14));
}

TEST_CASE("an eigenvector analyzes to a unit coefficient") {
  struct Case {
    Grid grid;
    std::vector<std::int64_t> modes;
  };
  const std::vector<Case> cases = {
      {make_grid({5}), {3}},
      {make_grid({4}, {kMix}), {2}},
      {make_grid({4}, {kMix}), {4}},
      {make_grid({3, 4}, {kMix, kDir}), {2, 3}},
  };
  for (const Case& c : cases) {
    const Spectrum s = make_spectrum(c.grid);
    const CoefficientTensor coeffs = analyze(mode_field(c.grid, s, c.modes), s);
    const std::int64_t flat = c.grid.flatten(c.modes);
    for (std::int64_t k = 1; k <= c.grid.size(); ++k) {
      const double want = (k == flat) ? 1.0 : 0.0;
      CHECK(std::abs(coeffs.values[k - 1] - want) <= 1e-12);
    }
  }
}

TEST_CASE("a unit coefficient synthesizes the eigenvector") {
  const Grid grid = make_grid({4, 3}, {kDir, kMix});
  const Spectrum s = make_spectrum(grid);
  const std::vector<std::int64_t> modes{2, 3};
  CoefficientTensor c{grid, std::vector<double>(grid.size(), 0.0)};
  c.values[grid.flatten(modes) - 1] = 1.0;
  const Field v = synthesize(c, s);
  const Field want = mode_field(grid, s, modes);
  CHECK(max_diff(v.values, want.values) <= 1e-13);
}

TEST_CASE("zero stays zero") {
  const Grid grid = make_grid({6, 6});
  const Spectrum s = make_spectrum(grid);
  const CoefficientTensor c = analyze(make_field(grid), s);
  CHECK(max_abs(c.values) == 0.0);
}

TEST_CASE("analyze then synthesize returns the field") {
  std::uint64_t seed = 31337;
  for (const Grid& grid : sample_grids()) {
    const Spectrum s = make_spectrum(grid);
    const Field f = random_field(grid, seed++);
    for (const TransformPath path : {TransformPath::Naive, TransformPath::Auto}) {
      const Field back = synthesize(analyze(f, s, path), s, path);
      CHECK(max_diff(back.values, f.values) <= 1e-12 * std::max(1.0, max_abs(f.values)));
    }
  }
}

TEST_CASE("synthesize then analyze returns the coefficients") {
  const Grid grid = make_grid({7, 6}, {kMix, kDir});
  const Spectrum s = make_spectrum(grid);
  const Field f = random_field(grid, 9001);
  CoefficientTensor c{grid, f.values};
  const CoefficientTensor back = analyze(synthesize(c, s), s);
  CHECK(max_diff(back.values, c.values) <= 1e-12);
}

TEST_CASE("analysis is linear") {
  const Grid grid = make_grid({9, 4}, {kDir, kMix});
  const Spectrum s = make_spectrum(grid);
  const Field f = random_field(grid, 11);
  const Field g = random_field(grid, 12);
  Field combo = make_field(grid);
  for (std::int64_t i = 0; i < grid.size(); ++i)
    combo.values[i] = 2.5 * f.values[i] - 0.75 * g.values[i];
  const CoefficientTensor cf = analyze(f, s);
  const CoefficientTensor cg = analyze(g, s);
  const CoefficientTensor cc = analyze(combo, s);
  double worst = 0.0;
  for (std::int64_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst,
                     std::abs(cc.values[i] - (2.5 * cf.values[i] - 0.75 * cg.values[i])));
  CHECK(worst <= 1e-12);
}

TEST_CASE("Parseval") {
  // Dirichlet: plain sums of squares agree; mixed: node weights on the left.
  const Grid dir = make_grid({12, 5});
  const Spectrum sd = make_spectrum(dir);
  const Field f = random_field(dir, 555);
  const CoefficientTensor cf = analyze(f, sd);
  double node_energy = 0.0, mode_energy = 0.0;
  for (std::int64_t i = 0; i < dir.size(); ++i) {
    node_energy += f.values[i] * f.values[i];
    mode_energy += cf.values[i] * cf.values[i];
  }
  CHECK(std::abs(node_energy - mode_energy) <= 1e-12 * node_energy);

  const Grid mix = make_grid({10}, {kMix});
  const Spectrum sm = make_spectrum(mix);
  const Field g = random_field(mix, 556);
  const CoefficientTensor cg = analyze(g, sm);
  double weighted = 0.0, modes = 0.0;
  for (std::int64_t i = 1; i <= mix.size(); ++i) {
    weighted += sm.node_weight_flat(i) * g.values[i - 1] * g.values[i - 1];
    modes += cg.values[i - 1] * cg.values[i - 1];
  }
  CHECK(std::abs(weighted - modes) <= 1e-12 * weighted);
}

TEST_CASE("naive and fast backends agree") {
  if (!fast_transform_available()) return;
  std::uint64_t seed = 808;
  for (const Grid& grid : sample_grids()) {
    const Spectrum s = make_spectrum(grid);
    const Field f = random_field(grid, seed++);
    const CoefficientTensor slow = analyze(f, s, TransformPath::Naive);
    const CoefficientTensor fast = analyze(f, s, TransformPath::Fast);
    CHECK(max_diff(slow.values, fast.values) <=
          1e-12 * std::max(1.0, max_abs(slow.values)));

    CoefficientTensor c{grid, f.values};
    const Field back_slow = synthesize(c, s, TransformPath::Naive);
    const Field back_fast = synthesize(c, s, TransformPath::Fast);
    CHECK(max_diff(back_slow.values, back_fast.values) <=
          1e-12 * std::max(1.0, max_abs(back_slow.values)));
  }
}

TEST_CASE("results do not depend on the worker count") {
  const char* saved = std::getenv("LAPOLY_THREADS");
  const std::string saved_value = saved ? saved : "";

  const Grid grid = make_grid({8, 9}, {kDir, kMix});
  const Spectrum s = make_spectrum(grid);
  const Field f = random_field(grid, 2718);

  const std::vector<TransformPath> paths =
      fast_transform_available()
          ? std::vector<TransformPath>{TransformPath::Naive, TransformPath::Fast}
          : std::vector<TransformPath>{TransformPath::Naive};
  for (const TransformPath path : paths) {
    setenv("LAPOLY_THREADS", "1", 1);
    const CoefficientTensor one = analyze(f, s, path);
    const Field back_one = synthesize(one, s, path);
    setenv("LAPOLY_THREADS", "3", 1);
    const CoefficientTensor three = analyze(f, s, path);
    const Field back_three = synthesize(three, s, path);
    CHECK(one.values == three.values);
    CHECK(back_one.values == back_three.values);
  }

  if (saved)
    setenv("LAPOLY_THREADS", saved_value.c_str(), 1);
  else
    unsetenv("LAPOLY_THREADS");
}

TEST_CASE("grid mismatch is rejected") {
  const Grid grid = make_grid({4, 4});
  const Spectrum s = make_spectrum(grid);
  const Field wrong = make_field(make_grid({4, 5}), 1.0);
  CHECK_THROWS_AS(analyze(wrong, s), GridMismatchError);
  CoefficientTensor c{make_grid({4, 5}), std::vector<double>(20, 0.0)};
  CHECK_THROWS_AS(synthesize(c, s), GridMismatchError);
}

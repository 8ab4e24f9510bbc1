#include "lapoly/grid.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "lapoly/errors.hpp"

namespace lapoly {

const char* to_string(BoundaryKind bc) {
  switch (bc) {
  case BoundaryKind::DirichletBoth:
    return "dirichlet";
  case BoundaryKind::DirichletLeftNeumannRight:
    return "dirichlet-neumann";
  }
  throw std::invalid_argument("unknown boundary kind");
}

Grid::Grid(std::vector<std::int64_t> extents, std::vector<BoundaryKind> bc)
    : extents_(std::move(extents)), bc_(std::move(bc)) {
  if (extents_.empty())
    throw std::invalid_argument("grid needs at least one axis");
  if (extents_.size() != bc_.size())
    throw std::invalid_argument("grid extents and boundary kinds differ in length");

  spacing_.reserve(extents_.size());
  stride_.reserve(extents_.size());
  size_ = 1;
  for (std::size_t p = 0; p < extents_.size(); ++p) {
    const std::int64_t n = extents_[p];
    if (n < 1)
      throw std::invalid_argument("axis extent must be >= 1, got " + std::to_string(n));
    if (size_ > std::numeric_limits<std::int64_t>::max() / n)
      throw std::invalid_argument("grid size overflows 64-bit index space");
    stride_.push_back(size_);
    size_ *= n;
    const double denom =
        bc_[p] == BoundaryKind::DirichletBoth ? double(n + 1) : double(n);
    spacing_.push_back(1.0 / denom);
  }
}

std::int64_t Grid::flatten(std::span<const std::int64_t> multi) const {
  if (static_cast<int>(multi.size()) != dim())
    throw std::invalid_argument("multi-index rank does not match grid dimension");
  std::int64_t flat = 0;
  for (int p = 0; p < dim(); ++p) {
    const std::int64_t j = multi[p];
    if (j < 1 || j > extents_[p])
      throw std::out_of_range("multi-index component " + std::to_string(p + 1) +
                              " out of range: " + std::to_string(j));
    flat += (j - 1) * stride_[p];
  }
  return flat + 1;
}

void Grid::unflatten_into(std::int64_t flat, std::span<std::int64_t> out) const {
  if (flat < 1 || flat > size_)
    throw std::out_of_range("flat index out of range: " + std::to_string(flat));
  if (static_cast<int>(out.size()) != dim())
    throw std::invalid_argument("output rank does not match grid dimension");
  std::int64_t rem = flat - 1;
  for (int p = 0; p < dim(); ++p) {
    out[p] = rem % extents_[p] + 1;
    rem /= extents_[p];
  }
}

std::vector<std::int64_t> Grid::unflatten(std::int64_t flat) const {
  std::vector<std::int64_t> multi(dim());
  unflatten_into(flat, multi);
  return multi;
}

double Grid::node_coordinate(int axis, std::int64_t j) const {
  if (axis < 0 || axis >= dim())
    throw std::out_of_range("axis out of range");
  if (j < 1 || j > extents_[axis])
    throw std::out_of_range("node index out of range");
  return double(j) * spacing_[axis];
}

Grid make_grid(std::vector<std::int64_t> extents, std::vector<BoundaryKind> bc) {
  return Grid(std::move(extents), std::move(bc));
}

Grid make_grid(std::vector<std::int64_t> extents) {
  std::vector<BoundaryKind> bc(extents.size(), BoundaryKind::DirichletBoth);
  return Grid(std::move(extents), std::move(bc));
}

Field make_field(const Grid& grid, double fill) {
  return Field{grid, std::vector<double>(static_cast<std::size_t>(grid.size()), fill)};
}

void require_matching(const Grid& grid, const Field& field, const char* what) {
  if (!(field.grid == grid) ||
      field.values.size() != static_cast<std::size_t>(grid.size()))
    throw GridMismatchError(std::string(what) + " does not match the grid");
}

} // namespace lapoly

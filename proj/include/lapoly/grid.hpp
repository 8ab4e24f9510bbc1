#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lapoly {

// Boundary condition pair for one axis of the unit hyperbox.
enum class BoundaryKind {
  DirichletBoth,             // u=0 at both ends, h = 1/(N+1)
  DirichletLeftNeumannRight, // u=0 at x=0, u'=0 at x=1, h = 1/N
};

const char* to_string(BoundaryKind bc);

// Tensor-product grid of interior nodes on [0,1]^d.
//
// Axis p carries extents()[p] nodes at coordinates j*spacing()[p], j = 1..N_p.
// Flat indices are 1-based and axis 1 varies fastest:
//   flat = 1 + sum_p (j_p - 1) * stride_p,  stride_1 = 1.
class Grid {
public:
  Grid(std::vector<std::int64_t> extents, std::vector<BoundaryKind> bc);

  int dim() const { return static_cast<int>(extents_.size()); }
  const std::vector<std::int64_t>& extents() const { return extents_; }
  const std::vector<BoundaryKind>& bc() const { return bc_; }
  const std::vector<double>& spacing() const { return spacing_; }
  std::int64_t size() const { return size_; }

  // multi holds 1-based per-axis indices, one per dimension.
  std::int64_t flatten(std::span<const std::int64_t> multi) const;
  std::vector<std::int64_t> unflatten(std::int64_t flat) const;
  void unflatten_into(std::int64_t flat, std::span<std::int64_t> out) const;

  // Physical coordinate of node j (1-based) along axis p (0-based).
  double node_coordinate(int axis, std::int64_t j) const;

  bool operator==(const Grid& other) const {
    return extents_ == other.extents_ && bc_ == other.bc_;
  }

private:
  std::vector<std::int64_t> extents_;
  std::vector<BoundaryKind> bc_;
  std::vector<double> spacing_;
  std::vector<std::int64_t> stride_;
  std::int64_t size_ = 0;
};

Grid make_grid(std::vector<std::int64_t> extents, std::vector<BoundaryKind> bc);
Grid make_grid(std::vector<std::int64_t> extents); // all-Dirichlet

// Sampled values, one per grid node, in flat order.
struct Field {
  Grid grid;
  std::vector<double> values;
};

Field make_field(const Grid& grid, double fill = 0.0);
void require_matching(const Grid& grid, const Field& field, const char* what);

} // namespace lapoly

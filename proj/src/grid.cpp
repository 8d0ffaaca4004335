#include "majoranon/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "majoranon/errors.hpp"

namespace majoranon::fields {

int Grid::check_axis(int axis) const {
  if (axis < 0 || axis >= dim_) {
    throw ContractError("grid axis " + std::to_string(axis) +
                        " out of range for dimension " + std::to_string(dim_));
  }
  return axis;
}

Eigen::Index Grid::total_points() const {
  Eigen::Index total = 1;
  for (int a = 0; a < dim_; ++a) total *= n_[a];
  return total;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= spacing(a);
  return v;
}

double Grid::coordinate(int axis, int index) const {
  check_axis(axis);
  return -0.5 * length_[axis] + index * spacing(axis);
}

double Grid::momentum(int axis, int index) const {
  check_axis(axis);
  const int n = n_[axis];
  const int j = index < n / 2 ? index : index - n;  // half-filled index -> -n/2
  return 2.0 * std::numbers::pi * j / length_[axis];
}

double Grid::kinetic_momentum(int axis, int index) const {
  check_axis(axis);
  if (index == n_[axis] / 2) return 0.0;
  return momentum(axis, index);
}

std::vector<double> Grid::coordinates(int axis) const {
  check_axis(axis);
  std::vector<double> xs(n_[axis]);
  for (int i = 0; i < n_[axis]; ++i) xs[i] = coordinate(axis, i);
  return xs;
}

std::vector<double> Grid::momenta(int axis) const {
  check_axis(axis);
  std::vector<double> ks(n_[axis]);
  for (int i = 0; i < n_[axis]; ++i) ks[i] = momentum(axis, i);
  return ks;
}

Eigen::Index Grid::flat_index(int ix, int iy) const {
  if (dim_ == 1) return ix;
  return static_cast<Eigen::Index>(ix) * n_[1] + iy;
}

std::array<int, 2> Grid::axis_indices(Eigen::Index p) const {
  if (dim_ == 1) return {static_cast<int>(p), 0};
  return {static_cast<int>(p / n_[1]), static_cast<int>(p % n_[1])};
}

bool Grid::operator==(const Grid& other) const {
  if (dim_ != other.dim_) return false;
  for (int a = 0; a < dim_; ++a) {
    if (n_[a] != other.n_[a] || length_[a] != other.length_[a]) return false;
  }
  return true;
}

Grid make_grid(int dim, const std::vector<int>& n,
               const std::vector<double>& length) {
  if (dim == 3) {
    throw ConfigError(
        "dimension 3 is not supported: only line (1) and planar (2) problems");
  }
  if (dim != 1 && dim != 2) {
    throw ConfigError("dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (static_cast<int>(n.size()) != dim ||
      static_cast<int>(length.size()) != dim) {
    throw ConfigError("grid: n and length must each have exactly " +
                      std::to_string(dim) + " entries");
  }
  Grid g;
  g.dim_ = dim;
  for (int a = 0; a < dim; ++a) {
    if (n[a] < 4 || n[a] % 2 != 0) {
      throw ConfigError("grid: point count per axis must be even and >= 4, got " +
                        std::to_string(n[a]));
    }
    if (!(length[a] > 0.0) || !std::isfinite(length[a])) {
      throw ConfigError("grid: axis length must be positive and finite");
    }
    g.n_[a] = n[a];
    g.length_[a] = length[a];
  }
  return g;
}

}  // namespace majoranon::fields

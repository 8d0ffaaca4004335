#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

// Uniform periodic grids on centered boxes [-L/2, L/2) in one or two spatial
// dimensions, with the matching discrete momentum lattice.

namespace majoranon::fields {

class Grid {
 public:
  // Minimal valid grid (one axis, four points, unit length); real grids come
  // from make_grid.
  Grid() = default;

  int dim() const { return dim_; }
  int points(int axis) const { return n_[check_axis(axis)]; }
  double length(int axis) const { return length_[check_axis(axis)]; }
  double spacing(int axis) const { return length_[check_axis(axis)] / n_[axis]; }

  // Product of points over all axes.
  Eigen::Index total_points() const;

  // Volume (length in 1D, area in 2D) of one grid cell.
  double cell_volume() const;

  // x_i = -L/2 + i*dx for i in [0, n).
  double coordinate(int axis, int index) const;

  // Momentum lattice in transform order: k_j = 2*pi*j/L with
  // j = 0, 1, ..., n/2-1, -n/2, ..., -1; the half-filled index n/2 carries the
  // negative value -pi*n/L.
  double momentum(int axis, int index) const;

  // Same lattice but with the half-filled (self-paired) index mapped to 0, the
  // convention under which the spectral derivative of a real field is real and
  // the derivative matrix is antisymmetric. Used by all evolution kernels.
  double kinetic_momentum(int axis, int index) const;

  std::vector<double> coordinates(int axis) const;
  std::vector<double> momenta(int axis) const;

  // Flattened storage index; x is the outer (slow) axis in 2D.
  Eigen::Index flat_index(int ix, int iy = 0) const;

  // Per-axis indices of flattened point p, inverse of flat_index.
  std::array<int, 2> axis_indices(Eigen::Index p) const;

  bool operator==(const Grid& other) const;
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  friend Grid make_grid(int dim, const std::vector<int>& n,
                        const std::vector<double>& length);
  int check_axis(int axis) const;

  int dim_ = 1;
  std::array<int, 2> n_{4, 4};
  std::array<double, 2> length_{1.0, 1.0};
};

// Validated construction. Requirements: dim is 1 or 2 (dim 3 is rejected with
// a message saying planar problems only), each axis has an even point count
// >= 4, lengths are positive and finite. Violations -> ConfigError.
Grid make_grid(int dim, const std::vector<int>& n,
               const std::vector<double>& length);

}  // namespace majoranon::fields

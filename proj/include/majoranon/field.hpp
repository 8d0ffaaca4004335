#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <variant>

#include "majoranon/grid.hpp"

// Two-component complex spinor fields on a Grid, their charge-conjugate
// decomposition into a self-conjugate pair, and the real four-component
// expansion used by the real-arithmetic evolvers.

namespace majoranon::fields {

using Complex = std::complex<double>;

enum class Space { position, momentum };

// Component-major storage: values = [psi_1 at every point, psi_2 at every
// point], each block in grid flat order (x outer axis in 2D).
struct SpinorField {
  Grid grid;
  Space space = Space::position;
  Eigen::VectorXcd values;

  Eigen::VectorBlock<Eigen::VectorXcd> component(int c);
  Eigen::VectorBlock<const Eigen::VectorXcd> component(int c) const;
};

// Real expansion [Re psi_1, Re psi_2, Im psi_1, Im psi_2], each block in grid
// flat order. Always position-space.
struct RealField4 {
  Grid grid;
  Eigen::VectorXd values;
};

// Self-conjugate/anti-self-conjugate halves of a field. When produced by an
// evolver the two mass values record which Dirac masses the halves evolve
// under.
struct MajoranaPair {
  SpinorField plus;
  SpinorField minus;
  double mass_plus = 0.0;
  double mass_minus = 0.0;
};

// --- initial conditions -----------------------------------------------------

struct GaussianInitial {
  Eigen::VectorXd p0;        // central momentum, size == grid dim
  double delta = 1.0;        // width: envelope exp(-|x|^2 / (4*delta^2))
  Eigen::Vector2cd spinor;   // constant spinor factor
  bool normalize = false;
};

struct UniformInitial {
  Eigen::Vector2cd spinor;
  bool normalize = false;
};

// CSV table with header x[,y],re1,im1,re2,im2 and one row per grid point in
// flat order; coordinates must match the grid.
struct TableInitial {
  std::string path;
};

using InitialSpec = std::variant<GaussianInitial, UniformInitial, TableInitial>;

// Sample an initial condition onto the grid (position space).
// Gaussian: psi_c(x) = spinor_c * exp(i p0.x) * exp(-|x|^2/(4 delta^2)).
// Size/positivity violations, non-finite table entries, normalizing a zero
// field -> ConfigError; unreadable table -> IoError.
SpinorField sample_initial(const Grid& grid, const InitialSpec& spec);

SpinorField zero_field(const Grid& grid, Space space = Space::position);

// --- algebraic operations ---------------------------------------------------

// Pointwise charge conjugate: (psi_c)_1 = -conj(psi_2), (psi_c)_2 = -conj(psi_1).
// Position-space input required (momentum components mix under conjugation).
SpinorField charge_conjugate(const SpinorField& f);

// psi_plus = (psi + psi_c)/sqrt(2), psi_minus = -i*(psi - psi_c)/sqrt(2).
// The -i phase makes BOTH halves self-conjugate: charge_conjugate(plus) ==
// plus and charge_conjugate(minus) == minus in exact arithmetic, and the
// cross inner product <plus, minus> is real. Position-space input required
// (-> ContractError).
MajoranaPair decompose_majorana(const SpinorField& f);

// psi = (plus + i*minus)/sqrt(2); exact inverse of decompose_majorana.
// Mismatched grids/spaces -> ContractError.
SpinorField reconstruct(const MajoranaPair& pair);

// Real expansion and its inverse. Position-space input required.
RealField4 real_expand(const SpinorField& f);
SpinorField real_contract(const RealField4& r);

// L2 inner product <a,b> = cell_volume * sum_p conj(a_p)*b_p over both
// components. Same grid and space required (-> ContractError).
Complex inner(const SpinorField& a, const SpinorField& b);
double norm(const SpinorField& f);  // sqrt(<f,f>)

}  // namespace majoranon::fields

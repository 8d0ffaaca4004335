#pragma once

#include <Eigen/Dense>

#include "majoranon/dynamics.hpp"
#include "majoranon/field.hpp"
#include "majoranon/grid.hpp"

// Dense reference ("oracle") evolution: assemble the full real generator of
// the real-expanded field on the whole grid and exponentiate it. Cubic cost,
// guarded by a point cap; exists to pin down the spectral evolvers to machine
// precision.

namespace majoranon::reference {

// Dense spectral differentiation matrix along one axis: real, antisymmetric,
// maps samples of exp(i*k*x) to i*k times themselves for every non-half-filled
// lattice wavenumber (the self-paired half-filled tone differentiates to
// zero). Closed form D_jl = (pi/L) * (-1)^(j-l) / tan(pi*(j-l)/n), D_jj = 0.
Eigen::MatrixXd spectral_derivative(const fields::Grid& grid, int axis);

// Real generator G of d/dt [Re psi; Im psi] on the full grid, block layout
// [Re psi_1, Re psi_2, Im psi_1, Im psi_2] (x) points. For the named kinds it
// is assembled structurally from spectral_derivative and the mass couplings
// and is antisymmetric; for CustomKind columns are assembled by applying the
// spectral right-hand side to basis vectors. Grids beyond cap total points ->
// ConfigError.
Eigen::MatrixXd dense_generator(const fields::Grid& grid,
                                const dynamics::EquationKind& kind,
                                int cap = 4096);

// exp(G*t) applied to the real expansion of f, contracted back to a spinor
// field. Position-space input required. Agrees with the spectral backends to
// rounding for every kind.
fields::SpinorField dense_evolve(const fields::SpinorField& f,
                                 const dynamics::EquationKind& kind, double t,
                                 int cap = 4096);

}  // namespace majoranon::reference

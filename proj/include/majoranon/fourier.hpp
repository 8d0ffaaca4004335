#pragma once

#include <Eigen/Dense>

#include "majoranon/field.hpp"
#include "majoranon/grid.hpp"

// Unitary discrete Fourier transforms on Grid data: forward and inverse each
// carry 1/sqrt(n) per axis, so norms are preserved exactly and the transforms
// are mutual inverses.

namespace majoranon::fourier {

// In-place unitary transform of one scalar lattice function stored in grid
// flat order. forward=true maps position -> momentum.
void transform(const fields::Grid& grid, Eigen::Ref<Eigen::VectorXcd> data,
               bool forward);

// Whole-field transforms; tag the result with the new space. Transforming a
// field already in the target space -> ContractError.
fields::SpinorField to_momentum(const fields::SpinorField& f);
fields::SpinorField to_position(const fields::SpinorField& f);

}  // namespace majoranon::fourier

#include "majoranon/fourier.hpp"

#include <cmath>
#include <unsupported/Eigen/FFT>

#include "majoranon/errors.hpp"

namespace majoranon::fourier {

namespace {

// One transform direction along an axis of the flattened lattice. Eigen's FFT
// scales the inverse by 1/nfft; the caller restores unitary normalization.
void transform_axis(Eigen::Ref<Eigen::VectorXcd> data, int n_axis,
                    Eigen::Index count, Eigen::Index stride, bool forward) {
  Eigen::FFT<double> fft;
  Eigen::VectorXcd in(n_axis), out(n_axis);
  for (Eigen::Index b = 0; b < count; ++b) {
    // Contiguous lines start every n_axis entries; strided lines are offset
    // by their position inside one block.
    const Eigen::Index base = (stride == 1) ? b * n_axis : b;
    for (int i = 0; i < n_axis; ++i) in(i) = data(base + i * stride);
    if (forward) {
      fft.fwd(out, in);
    } else {
      fft.inv(out, in);
    }
    for (int i = 0; i < n_axis; ++i) data(base + i * stride) = out(i);
  }
}

}  // namespace

void transform(const fields::Grid& grid, Eigen::Ref<Eigen::VectorXcd> data,
               bool forward) {
  const Eigen::Index total = grid.total_points();
  if (data.size() != total) {
    throw ContractError("fourier::transform: data size does not match grid");
  }
  if (grid.dim() == 1) {
    transform_axis(data, grid.points(0), 1, 1, forward);
  } else {
    const int nx = grid.points(0);
    const int ny = grid.points(1);
    // y is contiguous (stride 1), x has stride ny.
    transform_axis(data, ny, nx, 1, forward);
    transform_axis(data, nx, ny, ny, forward);
  }
  // Unitary normalization: forward transforms carry 1/sqrt(n) per axis; the
  // inverse above already divided by n per axis, so multiply back to 1/sqrt(n).
  const double scale = forward ? 1.0 / std::sqrt(static_cast<double>(total))
                               : std::sqrt(static_cast<double>(total));
  data *= scale;
}

fields::SpinorField to_momentum(const fields::SpinorField& f) {
  if (f.space != fields::Space::position) {
    throw ContractError("to_momentum: field is already momentum-space");
  }
  fields::SpinorField out = f;
  out.space = fields::Space::momentum;
  for (int c = 0; c < 2; ++c) transform(out.grid, out.component(c), true);
  return out;
}

fields::SpinorField to_position(const fields::SpinorField& f) {
  if (f.space != fields::Space::momentum) {
    throw ContractError("to_position: field is already position-space");
  }
  fields::SpinorField out = f;
  out.space = fields::Space::position;
  for (int c = 0; c < 2; ++c) transform(out.grid, out.component(c), false);
  return out;
}

}  // namespace majoranon::fourier

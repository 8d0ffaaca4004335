#include "majoranon/reference.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "majoranon/algebra.hpp"
#include "majoranon/errors.hpp"
#include "majoranon/fourier.hpp"

namespace majoranon::reference {

namespace {

void check_cap(const fields::Grid& grid, int cap) {
  if (grid.total_points() > cap) {
    throw ConfigError("dense reference limited to " + std::to_string(cap) +
                      " grid points, got " +
                      std::to_string(grid.total_points()));
  }
}

// Derivative along one axis lifted to the flattened lattice.
Eigen::MatrixXd lifted_derivative(const fields::Grid& grid, int axis) {
  const Eigen::MatrixXd d = spectral_derivative(grid, axis);
  if (grid.dim() == 1) return d;
  if (axis == 0) {
    return Eigen::kroneckerProduct(
        d, Eigen::MatrixXd::Identity(grid.points(1), grid.points(1)));
  }
  return Eigen::kroneckerProduct(
      Eigen::MatrixXd::Identity(grid.points(0), grid.points(0)), d);
}

// G for the named kinds from the real-split couplings:
//   du/dt = [-ks*sx.Dx + (Ci+Ki)] u + [ ks*s.Dy + (Cr-Kr)] v
//   dv/dt = [-ks*s.Dy  - (Cr+Kr)] u + [-ks*sx.Dx + (Ci-Ki)] v
// with sx = sigma_x, s the real spin flip, C/K the linear/antilinear mass
// couplings, all acting on the spinor index.
Eigen::MatrixXd structural_generator(const fields::Grid& grid,
                                     const dynamics::EquationKind& kind) {
  const Eigen::Index n = grid.total_points();
  const dynamics::SplitMasses sm = dynamics::split_masses(kind);
  const double ks = sm.kinetic_sign;

  Eigen::Matrix2d cr = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d kr = Eigen::Matrix2d::Zero();
  {
    const Eigen::Matrix2cd c =
        dynamics::kind_d_symbol(kind, Eigen::VectorXd::Zero(grid.dim()));
    const Eigen::Matrix2cd k = dynamics::kind_conjugate_coeff(kind);
    cr = c.real();  // named kinds: mass * sigma_z or zero
    kr = k.real();  // named kinds: mass * spin flip or zero
  }

  const Eigen::Matrix2d sx = algebra::sigma_x().real();
  const Eigen::Matrix2d sf = algebra::spin_flip();
  const Eigen::MatrixXd in = Eigen::MatrixXd::Identity(n, n);

  Eigen::MatrixXd uu = Eigen::kroneckerProduct(-ks * sx, lifted_derivative(grid, 0));
  Eigen::MatrixXd uv = Eigen::kroneckerProduct(cr - kr, in);
  Eigen::MatrixXd vu = Eigen::kroneckerProduct(-(cr + kr), in);
  if (grid.dim() == 2) {
    const Eigen::MatrixXd dy = lifted_derivative(grid, 1);
    uv += Eigen::kroneckerProduct(ks * sf, dy);
    vu += Eigen::kroneckerProduct(-ks * sf, dy);
  }

  Eigen::MatrixXd g(4 * n, 4 * n);
  g.block(0, 0, 2 * n, 2 * n) = uu;
  g.block(0, 2 * n, 2 * n, 2 * n) = uv;
  g.block(2 * n, 0, 2 * n, 2 * n) = vu;
  g.block(2 * n, 2 * n, 2 * n, 2 * n) = uu;
  return g;
}

// G for custom kinds, column by column: apply the spectral right-hand side
// d/dt psi = -i (D(p) psi + K conj(psi)) to each real basis vector.
Eigen::MatrixXd sampled_generator(const fields::Grid& grid,
                                  const dynamics::CustomKind& kind) {
  if (!kind.d_symbol) {
    throw std::invalid_argument("custom kind: missing linear symbol");
  }
  const Eigen::Index n = grid.total_points();
  const Eigen::Matrix2cd kc = kind.conjugate_coeff;
  Eigen::MatrixXd g(4 * n, 4 * n);

  for (Eigen::Index col = 0; col < 4 * n; ++col) {
    fields::RealField4 basis;
    basis.grid = grid;
    basis.values = Eigen::VectorXd::Zero(4 * n);
    basis.values(col) = 1.0;
    const fields::SpinorField psi = fields::real_contract(basis);

    fields::SpinorField dk = fourier::to_momentum(psi);
    for (Eigen::Index p = 0; p < n; ++p) {
      Eigen::VectorXd k(grid.dim());
      const auto idx = grid.axis_indices(p);
      for (int a = 0; a < grid.dim(); ++a) {
        k(a) = grid.kinetic_momentum(a, idx[a]);
      }
      const Eigen::Matrix2cd d = kind.d_symbol(k);
      Eigen::Vector2cd z(dk.values(p), dk.values(n + p));
      z = d * z;
      dk.values(p) = z(0);
      dk.values(n + p) = z(1);
    }
    fields::SpinorField lin = fourier::to_position(dk);

    fields::SpinorField rhs = fields::zero_field(grid);
    const fields::Complex mi(0.0, -1.0);
    for (Eigen::Index p = 0; p < n; ++p) {
      const Eigen::Vector2cd v(psi.values(p), psi.values(n + p));
      const Eigen::Vector2cd anti = kc * v.conjugate();
      rhs.values(p) = mi * (lin.values(p) + anti(0));
      rhs.values(n + p) = mi * (lin.values(n + p) + anti(1));
    }

    const fields::RealField4 out = fields::real_expand(rhs);
    g.col(col) = out.values;
  }
  return g;
}

}  // namespace

Eigen::MatrixXd spectral_derivative(const fields::Grid& grid, int axis) {
  const int n = grid.points(axis);
  const double l = grid.length(axis);
  const double pi = std::numbers::pi;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      const int diff = j - i;
      const double sign = (diff % 2 == 0) ? 1.0 : -1.0;
      d(j, i) = (pi / l) * sign / std::tan(pi * diff / n);
    }
  }
  return d;
}

Eigen::MatrixXd dense_generator(const fields::Grid& grid,
                                const dynamics::EquationKind& kind, int cap) {
  check_cap(grid, cap);
  if (const auto* custom = std::get_if<dynamics::CustomKind>(&kind)) {
    return sampled_generator(grid, *custom);
  }
  return structural_generator(grid, kind);
}

fields::SpinorField dense_evolve(const fields::SpinorField& f,
                                 const dynamics::EquationKind& kind, double t,
                                 int cap) {
  if (f.space != fields::Space::position) {
    throw ContractError("dense_evolve: position-space field required");
  }
  const Eigen::MatrixXd g = dense_generator(f.grid, kind, cap);
  const Eigen::MatrixXd prop = (g * t).exp();
  fields::RealField4 r = fields::real_expand(f);
  r.values = prop * r.values;
  return fields::real_contract(r);
}

}  // namespace majoranon::reference

#include "majoranon/algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "majoranon/errors.hpp"

namespace majoranon::algebra {

namespace {

constexpr Complex kI{0.0, 1.0};

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <=
         tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

}  // namespace

Eigen::Matrix2cd sigma_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd sigma_y() {
  Eigen::Matrix2cd m;
  m << 0, -kI, kI, 0;
  return m;
}

Eigen::Matrix2cd sigma_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd epsilon() {
  Eigen::Matrix2cd m;
  m << 0, 1, -1, 0;
  return m;
}

Eigen::Matrix2d spin_flip() {
  Eigen::Matrix2d m;
  m << 0, -1, 1, 0;
  return m;
}

Eigen::Matrix2cd conj2() { return -sigma_x(); }

Eigen::Matrix4cd gamma0_chiral() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m.block<2, 2>(0, 2) = Eigen::Matrix2cd::Identity();
  m.block<2, 2>(2, 0) = Eigen::Matrix2cd::Identity();
  return m;
}

Eigen::Matrix4cd gamma0_majorana() {
  return Eigen::kroneckerProduct(sigma_y(), sigma_x());
}

Eigen::Matrix4cd gamma3_majorana() {
  return kI * Eigen::kroneckerProduct(sigma_y(), sigma_y());
}

Eigen::Matrix4cd c_tilde() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m.block<2, 2>(0, 0) = epsilon();
  m.block<2, 2>(2, 2) = -epsilon();
  return m;
}

Eigen::Matrix<Complex, 2, 4> expansion_map() {
  Eigen::Matrix<Complex, 2, 4> m;
  m.setZero();
  m.block<2, 2>(0, 0) = Eigen::Matrix2cd::Identity();
  m.block<2, 2>(0, 2) = kI * Eigen::Matrix2cd::Identity();
  return m;
}

Eigen::Matrix4cd decoupling_unitary() {
  const double r = 1.0 / std::sqrt(2.0);
  // exp(-i*pi/4*sigma_y) = (I - i*sigma_y)/sqrt(2), likewise for sigma_x.
  Eigen::Matrix2cd ry = r * (Eigen::Matrix2cd::Identity() - kI * sigma_y());
  Eigen::Matrix2cd rx = r * (Eigen::Matrix2cd::Identity() - kI * sigma_x());
  return kI * Eigen::kroneckerProduct(ry, rx);
}

Eigen::MatrixXcd constant_matrix(std::string_view name) {
  if (name == "sigma_x") return sigma_x();
  if (name == "sigma_y") return sigma_y();
  if (name == "sigma_z") return sigma_z();
  if (name == "epsilon") return epsilon();
  if (name == "spin_flip") return spin_flip().cast<Complex>();
  if (name == "conj2") return conj2();
  if (name == "gamma0_chiral") return gamma0_chiral();
  if (name == "gamma0_majorana") return gamma0_majorana();
  if (name == "gamma3_majorana") return gamma3_majorana();
  if (name == "c_tilde") return c_tilde();
  if (name == "expansion_map") return expansion_map();
  if (name == "decoupling_unitary") return decoupling_unitary();
  throw std::invalid_argument("constant_matrix: unknown name '" +
                              std::string(name) + "'");
}

Eigen::Vector2cd charge_conjugate_2c(const Eigen::Vector2cd& psi) {
  if (!psi.allFinite()) {
    throw NumericError("charge_conjugate_2c: non-finite spinor");
  }
  return conj2() * psi.conjugate();
}

std::pair<Eigen::Vector2cd, Eigen::Vector2cd> majorana_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Vector2cd chi_plus(r, -r);
  Eigen::Vector2cd chi_minus(kI * r, kI * r);
  return {chi_plus, chi_minus};
}

Eigen::Vector4cd build_majorana_4spinor(const Eigen::Vector2cd& psi_left) {
  Eigen::Vector4cd s;
  s.head<2>() = epsilon() * psi_left.conjugate();
  s.tail<2>() = psi_left;
  return s;
}

Eigen::Vector4cd charge_conjugate_4c(const Eigen::Vector4cd& psi) {
  return c_tilde() * gamma0_chiral().transpose() * psi.conjugate();
}

Eigen::Matrix2cd dirac_mode_hamiltonian(const Eigen::VectorXd& k, double mass,
                                        double mass_sign, double kinetic_sign) {
  if (k.size() < 1 || k.size() > 2) {
    throw std::invalid_argument(
        "dirac_mode_hamiltonian: momentum must have 1 or 2 components");
  }
  Eigen::Matrix2cd h = kinetic_sign * k(0) * sigma_x();
  if (k.size() == 2) h += kinetic_sign * k(1) * sigma_y();
  h += mass_sign * mass * sigma_z();
  return h;
}

Eigen::Matrix4cd majorana_mode_hamiltonian(double k, double mass) {
  return k * Eigen::kroneckerProduct(Eigen::Matrix2cd::Identity(), sigma_x()) -
         mass * Eigen::kroneckerProduct(sigma_x(), sigma_y());
}

Eigen::Matrix4cd majorana_rep_mode_hamiltonian(double k, double mass) {
  return -k * Eigen::kroneckerProduct(Eigen::Matrix2cd::Identity(), sigma_z()) +
         mass * Eigen::kroneckerProduct(sigma_y(), sigma_x());
}

Eigen::Matrix4d antilinear_generator_mode(const Eigen::Matrix2cd& d_symbol,
                                          const Eigen::Matrix2cd& conjugate_coeff) {
  if (!is_hermitian(d_symbol)) {
    throw std::invalid_argument(
        "antilinear_generator_mode: linear symbol must be Hermitian");
  }
  const Eigen::Matrix2d dr = d_symbol.real();
  const Eigen::Matrix2d di = d_symbol.imag();
  const Eigen::Matrix2d kr = conjugate_coeff.real();
  const Eigen::Matrix2d ki = conjugate_coeff.imag();
  Eigen::Matrix4d g;
  g.block<2, 2>(0, 0) = di + ki;
  g.block<2, 2>(0, 2) = dr - kr;
  g.block<2, 2>(2, 0) = -(dr + kr);
  g.block<2, 2>(2, 2) = di - ki;
  return g;
}

Eigen::Matrix2cd hermitian_propagator(const Eigen::Matrix2cd& h, double t) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("hermitian_propagator: matrix must be Hermitian");
  }
  // H = a*I + b.sigma; exp(-iHt) = e^{-iat}(cos(Et) I - i sin(Et)/E * b.sigma).
  const double a = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double bx = h(0, 1).real();
  const double by = -h(0, 1).imag();
  const double bz = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double e = std::sqrt(bx * bx + by * by + bz * bz);
  const Complex phase = std::exp(-kI * a * t);
  if (e == 0.0) {
    return phase * Eigen::Matrix2cd::Identity();
  }
  const double c = std::cos(e * t);
  const double s = std::sin(e * t) / e;
  Eigen::Matrix2cd b;
  b << bz, Complex(bx, -by), Complex(bx, by), -bz;
  return phase * (c * Eigen::Matrix2cd::Identity() - kI * s * b);
}

Eigen::Matrix4cd hermitian_propagator(const Eigen::Matrix4cd& h, double t) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("hermitian_propagator: matrix must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  Eigen::Vector4cd phases =
      (-kI * t * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Vector2d hermitian_eigenvalues(const Eigen::Matrix2cd& h) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be Hermitian");
  }
  const double a = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double bx = h(0, 1).real();
  const double by = -h(0, 1).imag();
  const double bz = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double e = std::sqrt(bx * bx + by * by + bz * bz);
  return Eigen::Vector2d(a - e, a + e);
}

Eigen::Vector4d hermitian_eigenvalues(const Eigen::Matrix4cd& h) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  return es.eigenvalues();
}

}  // namespace majoranon::algebra

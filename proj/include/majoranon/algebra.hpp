#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string_view>
#include <utility>

// Spinor algebra for two-component fields in one and two spatial dimensions:
// Pauli/gamma constants, charge conjugation, mode Hamiltonians, the unitary
// that block-diagonalizes the real-expanded mass term, and small Hermitian
// propagators used by the spectral evolvers.

namespace majoranon::algebra {

using Complex = std::complex<double>;

// --- constant matrices ----------------------------------------------------

Eigen::Matrix2cd sigma_x();
Eigen::Matrix2cd sigma_y();
Eigen::Matrix2cd sigma_z();

// Antisymmetric epsilon = i*sigma_y = [[0,1],[-1,0]].
Eigen::Matrix2cd epsilon();

// Real rotation s = [[0,-1],[1,0]] (so sigma_y = i*s). Appears as the real
// form of the antilinear mass coupling.
Eigen::Matrix2d spin_flip();

// Coefficient of the two-component charge conjugation psi_c = conj2 * conj(psi):
// conj2 = -i*sigma_z*sigma_y = -sigma_x.
Eigen::Matrix2cd conj2();

// Four-component constants (chiral and Majorana representations).
Eigen::Matrix4cd gamma0_chiral();
Eigen::Matrix4cd gamma0_majorana();
Eigen::Matrix4cd gamma3_majorana();

// Four-component conjugation coefficient C = blockdiag(epsilon, -epsilon);
// psi_c = C * gamma0_chiral^T * conj(psi).
Eigen::Matrix4cd c_tilde();

// Map from the real four-vector (Re psi1, Re psi2, Im psi1, Im psi2) back to
// the complex two-spinor: the 2x4 block (I2, i*I2).
Eigen::Matrix<Complex, 2, 4> expansion_map();

// Unitary U with U^dag * H_mode * U block-diagonal for the real-expanded
// single-mode Hamiltonian: U = i * exp(-i*pi/4*sigma_y) (x) exp(-i*pi/4*sigma_x).
Eigen::Matrix4cd decoupling_unitary();

// Lookup of the above by name ("sigma_x", "epsilon", "conj2", "c_tilde",
// "gamma0_chiral", "gamma0_majorana", "gamma3_majorana", "decoupling_unitary",
// "expansion_map", "spin_flip"). Unknown name -> std::invalid_argument.
Eigen::MatrixXcd constant_matrix(std::string_view name);

// --- conjugation and Majorana structure ------------------------------------

// psi_c = conj2 * conj(psi). Componentwise: (psi_c)_1 = -conj(psi_2),
// (psi_c)_2 = -conj(psi_1). Involutive. Non-finite input -> NumericError.
Eigen::Vector2cd charge_conjugate_2c(const Eigen::Vector2cd& psi);

// Orthonormal eigenvectors of the conjugation: chi_plus with
// charge_conjugate_2c(chi_plus) == chi_plus, chi_minus with eigenvalue -1
// after the -i phase convention; chi_plus = (1,-1)/sqrt(2),
// chi_minus = (i,i)/sqrt(2). Returned as (chi_plus, chi_minus).
std::pair<Eigen::Vector2cd, Eigen::Vector2cd> majorana_basis();

// Embed a left-handed two-spinor into the self-conjugate four-spinor
// (epsilon*conj(psi_L), psi_L) in the chiral representation.
Eigen::Vector4cd build_majorana_4spinor(const Eigen::Vector2cd& psi_left);

// Four-component conjugation psi_c = c_tilde * gamma0_chiral^T * conj(psi).
// Fixes every build_majorana_4spinor output; involutive.
Eigen::Vector4cd charge_conjugate_4c(const Eigen::Vector4cd& psi);

// --- single-mode Hamiltonians ----------------------------------------------

// H(k) = kinetic_sign*(sigma_x*kx [+ sigma_y*ky]) + mass_sign*mass*sigma_z
// for k of size 1 or 2 (other sizes -> std::invalid_argument). Hermitian,
// traceless; eigenvalues +/- sqrt(|k|^2 + mass^2) when signs are +/-1.
Eigen::Matrix2cd dirac_mode_hamiltonian(const Eigen::VectorXd& k, double mass,
                                        double mass_sign = 1.0,
                                        double kinetic_sign = 1.0);

// Single-mode Hamiltonian of the real-expanded one-dimensional field in the
// ordering (Re psi1, Re psi2, Im psi1, Im psi2):
// H = k*(I2 (x) sigma_x) - mass*(sigma_x (x) sigma_y). Hermitian; the two
// tensor factors anticommute, so eigenvalues are +/- sqrt(k^2+mass^2), each
// twice.
Eigen::Matrix4cd majorana_mode_hamiltonian(double k, double mass);

// Same physics in the Majorana representation of the four-component equation:
// H = -k*(I2 (x) sigma_z) + mass*(sigma_y (x) sigma_x). Same spectrum as
// majorana_mode_hamiltonian.
Eigen::Matrix4cd majorana_rep_mode_hamiltonian(double k, double mass);

// Real generator of the plain real/imaginary-part expansion
// (Re psi, Im psi) at one mode of the equation
// i*dpsi/dt = D*psi + K*conj(psi):
//   G = [[ Di + Ki,   Dr - Kr ],
//        [ -(Dr + Kr), Di - Ki ]]    (r/i = entrywise real/imag parts).
// For Hermitian d_symbol and real antisymmetric conjugate_coeff the result is
// antisymmetric. Non-Hermitian d_symbol -> std::invalid_argument.
Eigen::Matrix4d antilinear_generator_mode(const Eigen::Matrix2cd& d_symbol,
                                          const Eigen::Matrix2cd& conjugate_coeff);

// --- small Hermitian propagators --------------------------------------------

// exp(-i*H*t) for Hermitian H, closed form via the Pauli decomposition.
Eigen::Matrix2cd hermitian_propagator(const Eigen::Matrix2cd& h, double t);

// exp(-i*H*t) for Hermitian 4x4 H via a self-adjoint eigensolve.
Eigen::Matrix4cd hermitian_propagator(const Eigen::Matrix4cd& h, double t);

// Eigenvalues sorted ascending.
Eigen::Vector2d hermitian_eigenvalues(const Eigen::Matrix2cd& h);
Eigen::Vector4d hermitian_eigenvalues(const Eigen::Matrix4cd& h);

}  // namespace majoranon::algebra

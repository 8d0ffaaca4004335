#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <variant>

#include "majoranon/field.hpp"
#include "majoranon/measure.hpp"

// Time evolution of two-component spinor fields under
//   i d/dt psi = D(p) psi + K conj(psi)
// with D a Hermitian momentum symbol and K a constant antilinear coupling.
// Three interchangeable backends realize the same discrete flow: a decomposed
// per-mode evolver (two 2x2 Dirac propagators), a real-expansion evolver
// (per-mode 4x4 propagators on the paired real data), and the dense reference
// evolver (see reference.hpp).

namespace majoranon::dynamics {

// --- equation kinds ---------------------------------------------------------

struct WeylKind {};  // D = sigma.p, K = 0

struct DiracKind {  // D = kinetic_sign*sigma.p + mass_sign*mass*sigma_z, K = 0
  double mass = 0.0;
  double mass_sign = 1.0;
  double kinetic_sign = 1.0;
};

struct MajoranaKind {  // D = sigma.p, K = mass * spin_flip
  double mass = 0.0;
};

struct DiracMajoranaKind {  // D = sigma.p + dirac_mass*sigma_z, K = majorana_mass*spin_flip
  double dirac_mass = 0.0;
  double majorana_mass = 0.0;
};

struct CustomKind {
  // Hermitian linear symbol D(k); called with a vector of size grid.dim().
  std::function<Eigen::Matrix2cd(const Eigen::VectorXd&)> d_symbol;
  // Constant antilinear coupling K.
  Eigen::Matrix2cd conjugate_coeff = Eigen::Matrix2cd::Zero();
};

using EquationKind =
    std::variant<WeylKind, DiracKind, MajoranaKind, DiracMajoranaKind, CustomKind>;

enum class Backend { decomposed, expanded, oracle };

std::string kind_summary(const EquationKind& kind);
std::string backend_name(Backend b);
Backend parse_backend(const std::string& name);  // unknown -> ConfigError

// The two Dirac masses the charge-conjugation halves evolve under, and the
// common kinetic sign. Weyl: (0,0,+1); Dirac(m,ms,ks): (ms*m, ms*m, ks);
// Majorana(m): (+m,-m,+1); DiracMajorana(mD,mM): (mD+mM, mD-mM, +1).
// CustomKind has no such splitting -> std::invalid_argument.
struct SplitMasses {
  double plus = 0.0;
  double minus = 0.0;
  double kinetic_sign = 1.0;
};
SplitMasses split_masses(const EquationKind& kind);

// --- evolvers ----------------------------------------------------------------

// Exact per-mode evolution under i d/dt psi = [ks*sigma.p + ms*mass*sigma_z] psi
// for time t. Accepts position- or momentum-space input and returns the same
// space. Mass must be finite (-> NumericError otherwise).
fields::SpinorField evolve_dirac(const fields::SpinorField& f, double mass,
                                 double mass_sign = 1.0,
                                 double kinetic_sign = 1.0, double t = 0.0);

struct EvolveResult {
  fields::SpinorField psi;
  fields::MajoranaPair pair;
};

// Decomposed backend: split psi into conjugation halves, evolve each under its
// Dirac equation (masses from split_masses), reconstruct. Returns both the
// field and the evolved pair. Position-space input required.
EvolveResult evolve_decomposed(const fields::SpinorField& f,
                               const EquationKind& kind, double t,
                               bool flip_kinetic_sign = false);

// Convenience wrappers with explicit masses.
EvolveResult evolve_majorana_decomposed(const fields::SpinorField& f,
                                        double mass, double t);
EvolveResult evolve_dirac_majorana_decomposed(const fields::SpinorField& f,
                                              double dirac_mass,
                                              double majorana_mass, double t);

// Real-expansion backend: evolve the real four-component expansion with exact
// per-mode 4x4 propagators acting on the paired transform data. The state
// stays real to rounding; the largest imaginary residue encountered is
// reported through imag_residual when non-null. Position-space input required.
fields::SpinorField evolve_expanded(const fields::SpinorField& f,
                                    const EquationKind& kind, double t,
                                    double* imag_residual = nullptr);

// Per-mode generator of the paired-transform real evolution. With
// a = D(k), b = conj(D(-k)), kr/ki the real/imag parts of K:
//   G = [[ i/2*(b-a) + ki,  1/2*(a+b) - kr ],
//        [ -1/2*(a+b) - kr, i/2*(b-a) - ki ]].
// Anti-Hermitian whenever a, b are Hermitian and K has antisymmetric real and
// symmetric imaginary parts (all named kinds).
Eigen::Matrix4cd expanded_mode_generator(const Eigen::Matrix2cd& d_plus_k,
                                         const Eigen::Matrix2cd& d_minus_k_conj,
                                         const Eigen::Matrix2cd& conjugate_coeff);

// D(k) and K of a kind at one momentum vector. A missing or non-Hermitian
// custom symbol -> std::invalid_argument.
Eigen::Matrix2cd kind_d_symbol(const EquationKind& kind, const Eigen::VectorXd& k);
Eigen::Matrix2cd kind_conjugate_coeff(const EquationKind& kind);

// Closed-form single-mode solution with zero momentum: the spinor precesses
// between the conjugation halves, psi(t) for the Majorana equation at rest.
Eigen::Vector2cd rest_frame_solution(const Eigen::Vector2cd& spinor0,
                                     double mass, double t);

// --- recorded runs -----------------------------------------------------------

struct EvolveOptions {
  bool flip_kinetic_sign = false;  // decomposed backend only (debug aid)
  int oracle_cap = 4096;           // max grid points for the oracle backend
};

// Called at every recorded time with the current record, field, and pair.
using RecordSink = std::function<void(const measure::ObservableRecord&,
                                      const fields::SpinorField&,
                                      const fields::MajoranaPair&)>;

// Step the field with the chosen backend, recording observables at t = 0 and
// after every record_every-th step (and always after the final step). Non-
// finite state values abort with NumericError after the partial series is
// delivered to the sink. Returns the full series.
measure::ObservableSeries evolve_recorded(
    const fields::SpinorField& initial, const EquationKind& kind,
    Backend backend, double dt, long steps, long record_every = 1,
    const RecordSink& sink = {}, const EvolveOptions& options = {});

}  // namespace majoranon::dynamics

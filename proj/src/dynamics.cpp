#include "majoranon/dynamics.hpp"

#include <cmath>
#include <memory>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "majoranon/algebra.hpp"
#include "majoranon/errors.hpp"
#include "majoranon/fourier.hpp"
#include "majoranon/reference.hpp"

namespace majoranon::dynamics {

namespace {

constexpr fields::Complex kI{0.0, 1.0};

Eigen::VectorXd kinetic_k(const fields::Grid& grid, Eigen::Index p) {
  Eigen::VectorXd k(grid.dim());
  const auto idx = grid.axis_indices(p);
  for (int a = 0; a < grid.dim(); ++a) k(a) = grid.kinetic_momentum(a, idx[a]);
  return k;
}

void require_position(const fields::SpinorField& f, const char* who) {
  if (f.space != fields::Space::position) {
    throw ContractError(std::string(who) + ": position-space field required");
  }
}

// exp(G*t) for the per-mode generator: Hermitian fast path when G is
// anti-Hermitian (all named kinds), general matrix exponential otherwise.
Eigen::Matrix4cd mode_propagator(const Eigen::Matrix4cd& g, double t) {
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g + g.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
    return algebra::hermitian_propagator(Eigen::Matrix4cd(kI * g), t);
  }
  return Eigen::Matrix4cd(g * t).exp();
}

// --- per-backend steppers ----------------------------------------------------

// Conjugation halves in momentum space, advanced by per-mode 2x2 propagators.
struct DecomposedState {
  fields::Grid grid;
  Eigen::VectorXcd plus, minus;  // component-major momentum data
  std::vector<Eigen::Matrix2cd> prop_plus, prop_minus;
  SplitMasses sm;

  DecomposedState(const fields::SpinorField& f, const EquationKind& kind,
                  double dt, bool flip) {
    grid = f.grid;
    sm = split_masses(kind);
    if (flip) sm.kinetic_sign = -sm.kinetic_sign;
    fields::MajoranaPair pair = fields::decompose_majorana(f);
    fields::SpinorField pk = fourier::to_momentum(pair.plus);
    fields::SpinorField mk = fourier::to_momentum(pair.minus);
    plus = pk.values;
    minus = mk.values;
    const Eigen::Index total = grid.total_points();
    prop_plus.resize(total);
    prop_minus.resize(total);
    for (Eigen::Index p = 0; p < total; ++p) {
      const Eigen::VectorXd k = kinetic_k(grid, p);
      prop_plus[p] = algebra::hermitian_propagator(
          algebra::dirac_mode_hamiltonian(k, sm.plus, 1.0, sm.kinetic_sign), dt);
      prop_minus[p] = algebra::hermitian_propagator(
          algebra::dirac_mode_hamiltonian(k, sm.minus, 1.0, sm.kinetic_sign), dt);
    }
  }

  void step() {
    const Eigen::Index total = grid.total_points();
    for (Eigen::Index p = 0; p < total; ++p) {
      Eigen::Vector2cd zp(plus(p), plus(total + p));
      zp = prop_plus[p] * zp;
      plus(p) = zp(0);
      plus(total + p) = zp(1);
      Eigen::Vector2cd zm(minus(p), minus(total + p));
      zm = prop_minus[p] * zm;
      minus(p) = zm(0);
      minus(total + p) = zm(1);
    }
  }

  EvolveResult extract() const {
    fields::SpinorField pk = fields::zero_field(grid, fields::Space::momentum);
    fields::SpinorField mk = pk;
    pk.values = plus;
    mk.values = minus;
    EvolveResult r;
    r.pair.plus = fourier::to_position(pk);
    r.pair.minus = fourier::to_position(mk);
    r.pair.mass_plus = sm.plus;
    r.pair.mass_minus = sm.minus;
    r.psi = fields::reconstruct(r.pair);
    return r;
  }
};

// Real four-component expansion: the transforms of (Re psi, Im psi) advance
// with per-mode 4x4 propagators; realness shows up as a conjugate-pair
// symmetry that holds to rounding.
struct ExpandedState {
  fields::Grid grid;
  std::array<Eigen::VectorXcd, 4> z;  // transforms of u1, u2, v1, v2
  std::vector<Eigen::Matrix4cd> prop;

  ExpandedState(const fields::SpinorField& f, const EquationKind& kind,
                double dt) {
    grid = f.grid;
    const Eigen::Index total = grid.total_points();
    const fields::RealField4 r = fields::real_expand(f);
    for (int c = 0; c < 4; ++c) {
      z[c] = r.values.segment(c * total, total).cast<fields::Complex>();
      fourier::transform(grid, z[c], true);
    }
    const Eigen::Matrix2cd kc = kind_conjugate_coeff(kind);
    prop.resize(total);
    for (Eigen::Index p = 0; p < total; ++p) {
      const Eigen::VectorXd k = kinetic_k(grid, p);
      const Eigen::Matrix2cd a = kind_d_symbol(kind, k);
      const Eigen::Matrix2cd b = kind_d_symbol(kind, Eigen::VectorXd(-k)).conjugate();
      prop[p] = mode_propagator(expanded_mode_generator(a, b, kc), dt);
    }
  }

  void step() {
    const Eigen::Index total = grid.total_points();
    for (Eigen::Index p = 0; p < total; ++p) {
      Eigen::Vector4cd w(z[0](p), z[1](p), z[2](p), z[3](p));
      w = prop[p] * w;
      for (int c = 0; c < 4; ++c) z[c](p) = w(c);
    }
  }

  fields::SpinorField extract(double* imag_residual) const {
    double residual = 0.0;
    std::array<Eigen::VectorXcd, 4> pos;
    for (int c = 0; c < 4; ++c) {
      pos[c] = z[c];
      fourier::transform(grid, pos[c], false);
      residual = std::max(residual, pos[c].imag().cwiseAbs().maxCoeff());
    }
    if (imag_residual) *imag_residual = std::max(*imag_residual, residual);
    fields::SpinorField out = fields::zero_field(grid);
    out.component(0).real() = pos[0].real();
    out.component(0).imag() = pos[2].real();
    out.component(1).real() = pos[1].real();
    out.component(1).imag() = pos[3].real();
    return out;
  }
};

// Dense reference: one matrix exponential, matrix-vector steps.
struct OracleState {
  fields::Grid grid;
  Eigen::VectorXd state;
  Eigen::MatrixXd prop;

  OracleState(const fields::SpinorField& f, const EquationKind& kind, double dt,
              int cap) {
    grid = f.grid;
    state = fields::real_expand(f).values;
    const Eigen::MatrixXd g = reference::dense_generator(grid, kind, cap);
    prop = (g * dt).exp();
  }

  void step() { state = prop * state; }

  fields::SpinorField extract() const {
    fields::RealField4 r;
    r.grid = grid;
    r.values = state;
    return fields::real_contract(r);
  }
};

}  // namespace

// --- kind helpers -------------------------------------------------------------

Eigen::Matrix2cd kind_d_symbol(const EquationKind& kind, const Eigen::VectorXd& k) {
  return std::visit(
      [&](const auto& kk) -> Eigen::Matrix2cd {
        using T = std::decay_t<decltype(kk)>;
        if constexpr (std::is_same_v<T, WeylKind>) {
          return algebra::dirac_mode_hamiltonian(k, 0.0);
        } else if constexpr (std::is_same_v<T, DiracKind>) {
          return algebra::dirac_mode_hamiltonian(k, kk.mass, kk.mass_sign,
                                                 kk.kinetic_sign);
        } else if constexpr (std::is_same_v<T, MajoranaKind>) {
          return algebra::dirac_mode_hamiltonian(k, 0.0);
        } else if constexpr (std::is_same_v<T, DiracMajoranaKind>) {
          return algebra::dirac_mode_hamiltonian(k, kk.dirac_mass);
        } else {
          if (!kk.d_symbol) {
            throw std::invalid_argument("custom kind: missing linear symbol");
          }
          const Eigen::Matrix2cd d = kk.d_symbol(k);
          const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
          if ((d - d.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
            throw std::invalid_argument(
                "custom kind: linear symbol must be Hermitian");
          }
          return d;
        }
      },
      kind);
}

Eigen::Matrix2cd kind_conjugate_coeff(const EquationKind& kind) {
  return std::visit(
      [](const auto& kk) -> Eigen::Matrix2cd {
        using T = std::decay_t<decltype(kk)>;
        if constexpr (std::is_same_v<T, MajoranaKind>) {
          return kk.mass * algebra::spin_flip().cast<fields::Complex>();
        } else if constexpr (std::is_same_v<T, DiracMajoranaKind>) {
          return kk.majorana_mass * algebra::spin_flip().cast<fields::Complex>();
        } else if constexpr (std::is_same_v<T, CustomKind>) {
          return kk.conjugate_coeff;
        } else {
          return Eigen::Matrix2cd::Zero();
        }
      },
      kind);
}

std::string kind_summary(const EquationKind& kind) {
  return std::visit(
      [](const auto& kk) -> std::string {
        using T = std::decay_t<decltype(kk)>;
        if constexpr (std::is_same_v<T, WeylKind>) {
          return "weyl";
        } else if constexpr (std::is_same_v<T, DiracKind>) {
          return "dirac(mass=" + measure::format_double(kk.mass) +
                 ", mass_sign=" + measure::format_double(kk.mass_sign) +
                 ", kinetic_sign=" + measure::format_double(kk.kinetic_sign) + ")";
        } else if constexpr (std::is_same_v<T, MajoranaKind>) {
          return "majorana(mass=" + measure::format_double(kk.mass) + ")";
        } else if constexpr (std::is_same_v<T, DiracMajoranaKind>) {
          return "dirac_majorana(dirac_mass=" +
                 measure::format_double(kk.dirac_mass) +
                 ", majorana_mass=" + measure::format_double(kk.majorana_mass) +
                 ")";
        } else {
          return "custom";
        }
      },
      kind);
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::decomposed:
      return "decomposed";
    case Backend::expanded:
      return "expanded";
    case Backend::oracle:
      return "oracle";
  }
  return "unknown";
}

Backend parse_backend(const std::string& name) {
  if (name == "decomposed") return Backend::decomposed;
  if (name == "expanded") return Backend::expanded;
  if (name == "oracle") return Backend::oracle;
  throw ConfigError("unknown backend '" + name +
                    "' (expected decomposed, expanded, or oracle)");
}

SplitMasses split_masses(const EquationKind& kind) {
  return std::visit(
      [](const auto& kk) -> SplitMasses {
        using T = std::decay_t<decltype(kk)>;
        if constexpr (std::is_same_v<T, WeylKind>) {
          return {0.0, 0.0, 1.0};
        } else if constexpr (std::is_same_v<T, DiracKind>) {
          return {kk.mass_sign * kk.mass, kk.mass_sign * kk.mass,
                  kk.kinetic_sign};
        } else if constexpr (std::is_same_v<T, MajoranaKind>) {
          return {kk.mass, -kk.mass, 1.0};
        } else if constexpr (std::is_same_v<T, DiracMajoranaKind>) {
          return {kk.dirac_mass + kk.majorana_mass,
                  kk.dirac_mass - kk.majorana_mass, 1.0};
        } else {
          throw std::invalid_argument(
              "custom kinds have no conjugation-half mass splitting");
        }
      },
      kind);
}

// --- evolvers -------------------------------------------------------------------

Eigen::Matrix4cd expanded_mode_generator(const Eigen::Matrix2cd& d_plus_k,
                                         const Eigen::Matrix2cd& d_minus_k_conj,
                                         const Eigen::Matrix2cd& conjugate_coeff) {
  const Eigen::Matrix2cd& a = d_plus_k;
  const Eigen::Matrix2cd& b = d_minus_k_conj;
  const Eigen::Matrix2cd kr = conjugate_coeff.real().cast<fields::Complex>();
  const Eigen::Matrix2cd ki = conjugate_coeff.imag().cast<fields::Complex>();
  Eigen::Matrix4cd g;
  g.block<2, 2>(0, 0) = 0.5 * kI * (b - a) + ki;
  g.block<2, 2>(0, 2) = 0.5 * (a + b) - kr;
  g.block<2, 2>(2, 0) = -0.5 * (a + b) - kr;
  g.block<2, 2>(2, 2) = 0.5 * kI * (b - a) - ki;
  return g;
}

fields::SpinorField evolve_dirac(const fields::SpinorField& f, double mass,
                                 double mass_sign, double kinetic_sign,
                                 double t) {
  const bool from_position = f.space == fields::Space::position;
  fields::SpinorField fk = from_position ? fourier::to_momentum(f) : f;
  const fields::Grid& grid = f.grid;
  const Eigen::Index total = grid.total_points();
  for (Eigen::Index p = 0; p < total; ++p) {
    const Eigen::VectorXd k = kinetic_k(grid, p);
    const Eigen::Matrix2cd u2 = algebra::hermitian_propagator(
        algebra::dirac_mode_hamiltonian(k, mass, mass_sign, kinetic_sign), t);
    Eigen::Vector2cd zp(fk.values(p), fk.values(total + p));
    zp = u2 * zp;
    fk.values(p) = zp(0);
    fk.values(total + p) = zp(1);
  }
  return from_position ? fourier::to_position(fk) : fk;
}

EvolveResult evolve_decomposed(const fields::SpinorField& f,
                               const EquationKind& kind, double t,
                               bool flip_kinetic_sign) {
  require_position(f, "evolve_decomposed");
  DecomposedState state(f, kind, t, flip_kinetic_sign);
  state.step();
  return state.extract();
}

EvolveResult evolve_majorana_decomposed(const fields::SpinorField& f,
                                        double mass, double t) {
  return evolve_decomposed(f, MajoranaKind{mass}, t);
}

EvolveResult evolve_dirac_majorana_decomposed(const fields::SpinorField& f,
                                              double dirac_mass,
                                              double majorana_mass, double t) {
  return evolve_decomposed(f, DiracMajoranaKind{dirac_mass, majorana_mass}, t);
}

fields::SpinorField evolve_expanded(const fields::SpinorField& f,
                                    const EquationKind& kind, double t,
                                    double* imag_residual) {
  require_position(f, "evolve_expanded");
  if (imag_residual) *imag_residual = 0.0;
  ExpandedState state(f, kind, t);
  state.step();
  return state.extract(imag_residual);
}

Eigen::Vector2cd rest_frame_solution(const Eigen::Vector2cd& spinor0,
                                     double mass, double t) {
  const Eigen::Vector2cd conj0 = algebra::charge_conjugate_2c(spinor0);
  const double r = 1.0 / std::sqrt(2.0);
  const Eigen::Vector2cd plus = r * (spinor0 + conj0);
  const Eigen::Vector2cd minus = -kI * r * (spinor0 - conj0);
  const fields::Complex em = std::exp(-kI * mass * t);
  const fields::Complex ep = std::exp(kI * mass * t);
  const Eigen::Vector2cd plus_t(em * plus(0), ep * plus(1));
  const Eigen::Vector2cd minus_t(ep * minus(0), em * minus(1));
  return r * (plus_t + kI * minus_t);
}

// --- recorded runs ---------------------------------------------------------------

measure::ObservableSeries evolve_recorded(const fields::SpinorField& initial,
                                          const EquationKind& kind,
                                          Backend backend, double dt, long steps,
                                          long record_every,
                                          const RecordSink& sink,
                                          const EvolveOptions& options) {
  require_position(initial, "evolve_recorded");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("time step must be positive and finite");
  }
  if (steps < 0) {
    throw ConfigError("step count must be non-negative");
  }
  if (record_every < 1) {
    throw ConfigError("record_every must be >= 1");
  }
  if (backend == Backend::decomposed &&
      std::holds_alternative<CustomKind>(kind)) {
    throw ConfigError(
        "custom equations require the expanded or oracle backend");
  }

  measure::ObservableSeries series;
  series.meta.equation = kind_summary(kind);
  series.meta.backend = backend_name(backend);
  series.meta.dim = initial.grid.dim();
  for (int a = 0; a < initial.grid.dim(); ++a) {
    series.meta.n.push_back(initial.grid.points(a));
    series.meta.length.push_back(initial.grid.length(a));
  }

  // One stepper, three engines.
  std::unique_ptr<DecomposedState> dec;
  std::unique_ptr<ExpandedState> exd;
  std::unique_ptr<OracleState> ora;
  switch (backend) {
    case Backend::decomposed:
      dec = std::make_unique<DecomposedState>(initial, kind, dt,
                                              options.flip_kinetic_sign);
      break;
    case Backend::expanded:
      exd = std::make_unique<ExpandedState>(initial, kind, dt);
      break;
    case Backend::oracle:
      ora = std::make_unique<OracleState>(initial, kind, dt, options.oracle_cap);
      break;
  }

  auto record_now = [&](long step_index) {
    fields::SpinorField psi;
    fields::MajoranaPair pair;
    if (dec) {
      EvolveResult r = dec->extract();
      psi = std::move(r.psi);
      pair = std::move(r.pair);
    } else if (exd) {
      psi = exd->extract(nullptr);
      pair = fields::decompose_majorana(psi);
    } else {
      psi = ora->extract();
      pair = fields::decompose_majorana(psi);
    }
    measure::ObservableRecord rec = measure::observe(psi, &pair);
    rec.t = step_index * dt;
    series.records.push_back(rec);
    if (sink) sink(rec, psi, pair);
    if (!psi.values.allFinite()) {
      throw NumericError("non-finite state detected at t = " +
                         measure::format_double(rec.t));
    }
  };

  record_now(0);
  for (long s = 1; s <= steps; ++s) {
    if (dec) {
      dec->step();
    } else if (exd) {
      exd->step();
    } else {
      ora->step();
    }
    if (s % record_every == 0 || s == steps) record_now(s);
  }
  return series;
}

}  // namespace majoranon::dynamics

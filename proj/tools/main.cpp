#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <iostream>
#include <string>
#include <vector>

#include "majoranon/algebra.hpp"
#include "majoranon/config.hpp"
#include "majoranon/dynamics.hpp"
#include "majoranon/errors.hpp"
#include "majoranon/fourier.hpp"
#include "majoranon/measure.hpp"
#include "majoranon/reference.hpp"
#include "majoranon/version.hpp"

namespace mj = majoranon;

namespace {

struct Args {
  std::string config_path;
  std::string backend_override;
  bool flip_kinetic_sign = false;
  bool quiet = false;
};

std::string step_tag(long step, long total_steps) {
  std::string s = std::to_string(step);
  const std::size_t width = std::to_string(std::max(total_steps, 1L)).size();
  while (s.size() < width) s.insert(s.begin(), '0');
  return s;
}

mj::config::SimulationConfig load_config(const Args& args) {
  mj::config::SimulationConfig cfg = mj::config::parse_config(args.config_path);
  if (!args.backend_override.empty()) {
    cfg.backend = mj::dynamics::parse_backend(args.backend_override);
  }
  return cfg;
}

int cmd_simulate(const Args& args) {
  using clock = std::chrono::steady_clock;
  mj::config::SimulationConfig cfg = load_config(args);
  const mj::fields::Grid grid = mj::config::grid_from(cfg);
  if (cfg.backend == mj::dynamics::Backend::oracle &&
      grid.total_points() > cfg.oracle_cap) {
    throw mj::ConfigError("oracle backend limited to " +
                          std::to_string(cfg.oracle_cap) + " grid points, got " +
                          std::to_string(grid.total_points()));
  }
  const mj::fields::SpinorField initial = mj::config::initial_from(cfg);

  // Metadata goes out before any stepping so an aborted run still documents
  // what was attempted.
  mj::config::write_metadata(cfg.output.metadata, cfg, 0.0);

  mj::measure::ObservableSeries partial;
  partial.meta.equation = mj::dynamics::kind_summary(cfg.equation);
  partial.meta.backend = mj::dynamics::backend_name(cfg.backend);
  partial.meta.dim = grid.dim();
  for (int a = 0; a < grid.dim(); ++a) {
    partial.meta.n.push_back(grid.points(a));
    partial.meta.length.push_back(grid.length(a));
  }

  auto sink = [&](const mj::measure::ObservableRecord& rec,
                  const mj::fields::SpinorField& psi,
                  const mj::fields::MajoranaPair&) {
    partial.records.push_back(rec);
    if (!cfg.output.snapshots.empty()) {
      const long step = std::lround(rec.t / cfg.time.dt);
      mj::measure::snapshot_to_csv(
          psi, mj::config::snapshot_path(cfg.output.snapshots,
                                         step_tag(step, cfg.time.steps)));
    }
  };

  mj::dynamics::EvolveOptions options;
  options.flip_kinetic_sign = args.flip_kinetic_sign;
  options.oracle_cap = cfg.oracle_cap;

  const auto t0 = clock::now();
  try {
    mj::dynamics::evolve_recorded(initial, cfg.equation, cfg.backend,
                                  cfg.time.dt, cfg.time.steps,
                                  cfg.time.record_every, sink, options);
  } catch (const mj::NumericError&) {
    mj::measure::series_to_csv(partial, cfg.output.series);
    throw;
  }
  mj::measure::series_to_csv(partial, cfg.output.series);
  const double wall = std::chrono::duration<double>(clock::now() - t0).count();
  mj::config::write_metadata(cfg.output.metadata, cfg, wall);

  if (!args.quiet) {
    const auto& last = partial.records.back();
    std::cout << "equation: " << partial.meta.equation << "\n"
              << "backend:  " << partial.meta.backend << "\n"
              << "steps:    " << cfg.time.steps << " x dt "
              << mj::measure::format_double(cfg.time.dt) << "\n"
              << "final:    t=" << mj::measure::format_double(last.t)
              << " norm=" << mj::measure::format_double(last.norm)
              << (last.boundary_warning ? "  [boundary warning]" : "") << "\n"
              << "series:   " << cfg.output.series << "\n"
              << "metadata: " << cfg.output.metadata << "\n";
  }
  return 0;
}

int cmd_decompose(const Args& args) {
  mj::config::SimulationConfig cfg = load_config(args);
  const mj::fields::SpinorField psi = mj::config::initial_from(cfg);
  mj::config::write_metadata(cfg.output.metadata, cfg, 0.0);

  const mj::fields::MajoranaPair pair = mj::fields::decompose_majorana(psi);
  const mj::fields::SpinorField back = mj::fields::reconstruct(pair);

  auto conjugation_defect = [](const mj::fields::SpinorField& f) {
    const mj::fields::SpinorField fc = mj::fields::charge_conjugate(f);
    mj::fields::SpinorField diff = f;
    diff.values -= fc.values;
    return mj::fields::norm(diff);
  };
  mj::fields::SpinorField residual = back;
  residual.values -= psi.values;

  if (!cfg.output.snapshots.empty()) {
    mj::measure::snapshot_to_csv(
        psi, mj::config::snapshot_path(cfg.output.snapshots, "initial"));
    mj::measure::snapshot_to_csv(
        pair.plus, mj::config::snapshot_path(cfg.output.snapshots, "plus"));
    mj::measure::snapshot_to_csv(
        pair.minus, mj::config::snapshot_path(cfg.output.snapshots, "minus"));
  }

  const std::complex<double> cross = mj::fields::inner(pair.plus, pair.minus);
  if (!args.quiet) {
    std::cout << "norm:                 "
              << mj::measure::format_double(mj::fields::norm(psi)) << "\n"
              << "norm_plus:            "
              << mj::measure::format_double(mj::fields::norm(pair.plus)) << "\n"
              << "norm_minus:           "
              << mj::measure::format_double(mj::fields::norm(pair.minus))
              << "\n"
              << "reconstruction_error: "
              << mj::measure::format_double(mj::fields::norm(residual)) << "\n"
              << "plus_conj_defect:     "
              << mj::measure::format_double(conjugation_defect(pair.plus))
              << "\n"
              << "minus_conj_defect:    "
              << mj::measure::format_double(conjugation_defect(pair.minus))
              << "\n"
              << "cross_inner:          "
              << mj::measure::format_double(cross.real()) << " + "
              << mj::measure::format_double(cross.imag()) << "i\n";
  }
  return 0;
}

int cmd_check(const Args& args) {
  constexpr double kTol = 1e-10;
  mj::config::SimulationConfig cfg = load_config(args);
  const mj::fields::Grid grid = mj::config::grid_from(cfg);
  if (grid.total_points() > cfg.oracle_cap) {
    throw mj::ConfigError("check needs the dense reference; grid exceeds the " +
                          std::to_string(cfg.oracle_cap) + "-point cap");
  }
  const mj::fields::SpinorField initial = mj::config::initial_from(cfg);
  const double t = cfg.time.dt * cfg.time.steps;

  const mj::dynamics::EvolveResult dec = mj::dynamics::evolve_decomposed(
      initial, cfg.equation, t, args.flip_kinetic_sign);
  double imag_residual = 0.0;
  const mj::fields::SpinorField exd =
      mj::dynamics::evolve_expanded(initial, cfg.equation, t, &imag_residual);
  const mj::fields::SpinorField ora =
      mj::reference::dense_evolve(initial, cfg.equation, t, cfg.oracle_cap);

  auto max_dev = [](const mj::fields::SpinorField& a,
                    const mj::fields::SpinorField& b) {
    return (a.values - b.values).cwiseAbs().maxCoeff();
  };
  const double de = max_dev(dec.psi, exd);
  const double do_ = max_dev(dec.psi, ora);
  const double eo = max_dev(exd, ora);

  // Algebraic self-check: conjugating the single-mode Hamiltonian of the real
  // expansion with the fixed unitary must split it into the two mass branches.
  const Eigen::Matrix4cd u = mj::algebra::decoupling_unitary();
  const mj::dynamics::SplitMasses sm = mj::dynamics::split_masses(cfg.equation);
  const double half_diff = 0.5 * (sm.plus - sm.minus);
  const double mass = half_diff != 0.0 ? half_diff : 0.5 * (sm.plus + sm.minus);
  double residual_u = 0.0;
  for (int j = 0; j < grid.points(0); ++j) {
    const double k = grid.kinetic_momentum(0, j);
    const Eigen::Matrix4cd h = mj::algebra::majorana_mode_hamiltonian(k, mass);
    Eigen::Matrix4cd split = Eigen::Matrix4cd::Zero();
    split.block<2, 2>(0, 0) = mj::algebra::dirac_mode_hamiltonian(
        Eigen::VectorXd::Constant(1, k), mass, 1.0, 1.0);
    split.block<2, 2>(2, 2) = mj::algebra::dirac_mode_hamiltonian(
        Eigen::VectorXd::Constant(1, k), mass, -1.0, 1.0);
    residual_u = std::max(
        residual_u,
        (u.adjoint() * h * u - split).cwiseAbs().maxCoeff());
  }

  if (!args.quiet) {
    std::cout << "backend deviation decomposed|expanded: "
              << mj::measure::format_double(de) << "\n"
              << "backend deviation decomposed|oracle:   "
              << mj::measure::format_double(do_) << "\n"
              << "backend deviation expanded|oracle:     "
              << mj::measure::format_double(eo) << "\n"
              << "expanded imaginary residue:            "
              << mj::measure::format_double(imag_residual) << "\n"
              << "decoupling residual (k sweep):         "
              << mj::measure::format_double(residual_u) << "\n";
  }

  std::string failing;
  if (de > kTol) failing = "decomposed|expanded deviation";
  else if (do_ > kTol) failing = "decomposed|oracle deviation";
  else if (eo > kTol) failing = "expanded|oracle deviation";
  else if (imag_residual > kTol) failing = "expanded imaginary residue";
  else if (residual_u > kTol) failing = "decoupling residual";

  if (!failing.empty()) {
    std::cout << "CHECK FAILED: " << failing << " exceeds "
              << mj::measure::format_double(kTol) << "\n";
    return 5;
  }
  std::cout << "CHECK PASSED\n";
  return 0;
}

int cmd_spectrum(const Args& args) {
  mj::config::SimulationConfig cfg = load_config(args);
  const mj::fields::Grid grid = mj::config::grid_from(cfg);
  const Eigen::Matrix2cd kc = mj::dynamics::kind_conjugate_coeff(cfg.equation);

  // Mode energies along axis 0 (other axes at zero), sorted by momentum.
  std::vector<double> ks = grid.momenta(0);
  std::sort(ks.begin(), ks.end());
  std::cout << "k,e1,e2,e3,e4\n";
  for (double k : ks) {
    Eigen::VectorXd kv = Eigen::VectorXd::Zero(grid.dim());
    kv(0) = k;
    const Eigen::Matrix2cd a = mj::dynamics::kind_d_symbol(cfg.equation, kv);
    const Eigen::Matrix2cd b =
        mj::dynamics::kind_d_symbol(cfg.equation, Eigen::VectorXd(-kv))
            .conjugate();
    const Eigen::Matrix4cd g = mj::dynamics::expanded_mode_generator(a, b, kc);
    const Eigen::Vector4d e = mj::algebra::hermitian_eigenvalues(
        Eigen::Matrix4cd(std::complex<double>(0.0, 1.0) * g));
    std::cout << mj::measure::format_double(k);
    for (int i = 0; i < 4; ++i) {
      std::cout << ',' << mj::measure::format_double(e(i));
    }
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"majoranon: spinor-field dynamics with charge-conjugation "
               "decomposition (v" +
               std::string(mj::kVersionString) + ")"};
  app.require_subcommand(1);

  Args args;
  auto add_common = [&](CLI::App* sub, bool with_backend, bool with_flip) {
    sub->add_option("--config", args.config_path, "JSON run configuration")
        ->required();
    sub->add_flag("--quiet", args.quiet, "suppress informational output");
    if (with_backend) {
      sub->add_option("--backend", args.backend_override,
                      "override the configured backend "
                      "(decomposed|expanded|oracle)");
    }
    if (with_flip) {
      sub->add_flag("--debug-flip-kinetic-sign", args.flip_kinetic_sign,
                    "flip the kinetic sign inside the decomposed backend "
                    "(debug aid; breaks backend equivalence on purpose)");
    }
  };

  CLI::App* simulate =
      app.add_subcommand("simulate", "run a recorded time evolution");
  add_common(simulate, true, true);
  CLI::App* decompose = app.add_subcommand(
      "decompose", "split the initial field into its conjugation halves");
  add_common(decompose, false, false);
  CLI::App* check = app.add_subcommand(
      "check", "compare all backends on the configured problem");
  add_common(check, false, true);
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "print single-mode energies over the momentum lattice");
  add_common(spectrum, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(args);
    if (decompose->parsed()) return cmd_decompose(args);
    if (check->parsed()) return cmd_check(args);
    if (spectrum->parsed()) return cmd_spectrum(args);
    return 2;
  } catch (const mj::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mj::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const mj::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

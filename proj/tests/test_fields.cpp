#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "majoranon/errors.hpp"
#include "majoranon/field.hpp"
#include "majoranon/fourier.hpp"
#include "majoranon/grid.hpp"
#include "majoranon/measure.hpp"
#include "test_util.hpp"

using namespace majoranon;
using fields::Complex;
using fields::Grid;
using fields::make_grid;
using fields::Space;
using fields::SpinorField;
using testutil::max_abs_diff;

namespace {

const Complex kI(0.0, 1.0);
const double kPi = std::numbers::pi;

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "majoranon_field_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("grid construction and validation") {
  Grid g = make_grid(2, {8, 6}, {4.0, 3.0});
  CHECK(g.dim() == 2);
  CHECK(g.points(0) == 8);
  CHECK(g.points(1) == 6);
  CHECK(g.length(0) == 4.0);
  CHECK(g.spacing(0) == 0.5);
  CHECK(g.spacing(1) == 0.5);
  CHECK(g.total_points() == 48);
  CHECK(g.cell_volume() == 0.25);

  CHECK_THROWS_WITH_AS(make_grid(3, {4, 4, 4}, {1, 1, 1}),
                       "dimension 3 is not supported: only line (1) and planar (2) "
                       "problems",
                       ConfigError);
  CHECK_THROWS_AS(make_grid(0, {}, {}), ConfigError);
  CHECK_THROWS_AS(make_grid(1, {7}, {1.0}), ConfigError);   // odd count
  CHECK_THROWS_AS(make_grid(1, {2}, {1.0}), ConfigError);   // too few points
  CHECK_THROWS_AS(make_grid(1, {8}, {-1.0}), ConfigError);  // negative length
  CHECK_THROWS_AS(make_grid(1, {8}, {0.0}), ConfigError);
  CHECK_THROWS_AS(make_grid(2, {8}, {1.0, 1.0}), ConfigError);  // size mismatch
  CHECK_THROWS_AS(make_grid(1, {8}, {std::nan("")}), ConfigError);

  CHECK(g == make_grid(2, {8, 6}, {4.0, 3.0}));
  CHECK(g != make_grid(2, {8, 8}, {4.0, 3.0}));
  CHECK_THROWS_AS((void)g.points(2), ContractError);
}

TEST_CASE("grid coordinates and momentum lattice") {
  Grid g = make_grid(1, {8}, {4.0});
  // Centered box [-L/2, L/2): x_i = -2 + 0.5*i.
  CHECK(g.coordinate(0, 0) == -2.0);
  CHECK(g.coordinate(0, 4) == 0.0);
  CHECK(g.coordinate(0, 7) == 1.5);
  auto xs = g.coordinates(0);
  CHECK(xs.size() == 8);
  CHECK(xs[1] == -1.5);

  // Transform-order momenta 2*pi*j/L with j = 0..3, -4..-1; the half-filled
  // index reports the negative edge value but counts as zero kinetically.
  for (int i = 0; i < 8; ++i) {
    int j = i < 4 ? i : i - 8;
    CHECK(g.momentum(0, i) == 2.0 * kPi * j / 4.0);
  }
  CHECK(g.momentum(0, 4) == -2.0 * kPi);
  CHECK(g.kinetic_momentum(0, 4) == 0.0);
  CHECK(g.kinetic_momentum(0, 3) == g.momentum(0, 3));
  CHECK(g.kinetic_momentum(0, 5) == g.momentum(0, 5));
  CHECK(g.momenta(0).size() == 8);
  CHECK(g.momenta(0)[6] == -kPi);
}

TEST_CASE("grid flat indexing round-trips") {
  Grid g = make_grid(2, {4, 6}, {1.0, 2.0});
  // x is the outer (slow) axis.
  CHECK(g.flat_index(0, 0) == 0);
  CHECK(g.flat_index(0, 5) == 5);
  CHECK(g.flat_index(1, 0) == 6);
  CHECK(g.flat_index(3, 5) == 23);
  for (Eigen::Index p = 0; p < g.total_points(); ++p) {
    auto [ix, iy] = g.axis_indices(p);
    CHECK(g.flat_index(ix, iy) == p);
    CHECK(ix >= 0);
    CHECK(ix < 4);
    CHECK(iy >= 0);
    CHECK(iy < 6);
  }

  Grid g1 = make_grid(1, {6}, {1.0});
  CHECK(g1.flat_index(5) == 5);
  CHECK(g1.axis_indices(3)[0] == 3);
}

TEST_CASE("gaussian initial condition samples the stated formula") {
  Grid g = make_grid(1, {16}, {8.0});
  fields::GaussianInitial spec;
  spec.p0 = Eigen::VectorXd::Constant(1, 0.75);
  spec.delta = 1.25;
  spec.spinor << Complex(1.0, 0.5), Complex(-0.25, 2.0);
  SpinorField f = fields::sample_initial(g, spec);
  CHECK(f.space == Space::position);
  CHECK(f.values.size() == 32);
  for (int i : {0, 3, 8, 15}) {
    double x = g.coordinate(0, i);
    Complex envelope = std::exp(kI * (0.75 * x)) * std::exp(-x * x / (4.0 * 1.25 * 1.25));
    CHECK(std::abs(f.component(0)[i] - spec.spinor(0) * envelope) <= 1e-15);
    CHECK(std::abs(f.component(1)[i] - spec.spinor(1) * envelope) <= 1e-15);
  }

  fields::GaussianInitial unit = spec;
  unit.normalize = true;
  CHECK(std::abs(fields::norm(fields::sample_initial(g, unit)) - 1.0) <= 1e-12);

  // 2D: the envelope uses |x|^2 and the phase p0.x.
  Grid g2 = make_grid(2, {4, 6}, {3.0, 5.0});
  fields::GaussianInitial spec2;
  spec2.p0 = Eigen::VectorXd(2);
  spec2.p0 << 0.4, -0.9;
  spec2.delta = 0.8;
  spec2.spinor << Complex(0.3, 0.0), Complex(0.0, 1.0);
  SpinorField f2 = fields::sample_initial(g2, spec2);
  for (Eigen::Index p : {0, 7, 17}) {
    auto [ix, iy] = g2.axis_indices(p);
    double x = g2.coordinate(0, ix), y = g2.coordinate(1, iy);
    Complex envelope = std::exp(kI * (0.4 * x - 0.9 * y)) *
                       std::exp(-(x * x + y * y) / (4.0 * 0.8 * 0.8));
    CHECK(std::abs(f2.component(0)[p] - spec2.spinor(0) * envelope) <= 1e-15);
    CHECK(std::abs(f2.component(1)[p] - spec2.spinor(1) * envelope) <= 1e-15);
  }

  fields::GaussianInitial bad = spec;
  bad.p0 = Eigen::VectorXd::Zero(2);  // wrong dimension
  CHECK_THROWS_AS((void)fields::sample_initial(g, bad), ConfigError);
  bad = spec;
  bad.delta = 0.0;
  CHECK_THROWS_AS((void)fields::sample_initial(g, bad), ConfigError);
  bad = spec;
  bad.delta = -1.0;
  CHECK_THROWS_AS((void)fields::sample_initial(g, bad), ConfigError);
  bad = spec;
  bad.spinor << std::nan(""), 0.0;
  CHECK_THROWS_AS((void)fields::sample_initial(g, bad), ConfigError);
}

TEST_CASE("uniform initial condition") {
  Grid g = make_grid(1, {8}, {2.0});
  fields::UniformInitial spec;
  spec.spinor << Complex(1, 0), Complex(0, -2);
  SpinorField f = fields::sample_initial(g, spec);
  for (int i = 0; i < 8; ++i) {
    CHECK(f.component(0)[i] == Complex(1, 0));
    CHECK(f.component(1)[i] == Complex(0, -2));
  }

  fields::UniformInitial unit = spec;
  unit.normalize = true;
  CHECK(std::abs(fields::norm(fields::sample_initial(g, unit)) - 1.0) <= 1e-14);

  fields::UniformInitial zero;
  zero.spinor.setZero();
  zero.normalize = true;
  CHECK_THROWS_AS((void)fields::sample_initial(g, zero), ConfigError);
  zero.normalize = false;
  CHECK(fields::norm(fields::sample_initial(g, zero)) == 0.0);
}

TEST_CASE("table initial condition round-trips a snapshot exactly") {
  auto dir = scratch_dir();

  Grid g = make_grid(2, {4, 6}, {3.0, 5.0});
  SpinorField f = testutil::random_field(g, 97);
  auto path = (dir / "snap2d.csv").string();
  measure::snapshot_to_csv(f, path);
  SpinorField back = fields::sample_initial(g, fields::TableInitial{path});
  CHECK(back.values == f.values);  // shortest round-trip formatting is exact

  Grid g1 = make_grid(1, {8}, {4.0});
  SpinorField f1 = testutil::random_field(g1, 98);
  auto path1 = (dir / "snap1d.csv").string();
  measure::snapshot_to_csv(f1, path1);
  SpinorField back1 = fields::sample_initial(g1, fields::TableInitial{path1});
  CHECK(back1.values == f1.values);

  // Mismatched grid, bad header, short row count, and non-finite entries are
  // configuration errors; a missing file is an I/O error.
  Grid gwrong = make_grid(1, {8}, {8.0});
  CHECK_THROWS_AS((void)fields::sample_initial(gwrong, fields::TableInitial{path1}),
                  ConfigError);
  Grid gshort = make_grid(1, {16}, {4.0});
  CHECK_THROWS_AS((void)fields::sample_initial(gshort, fields::TableInitial{path1}),
                  ConfigError);

  auto badheader = (dir / "badheader.csv").string();
  write_text(badheader, "x,re1,im1,re2\n-2,0,0,0\n");
  CHECK_THROWS_AS((void)fields::sample_initial(g1, fields::TableInitial{badheader}),
                  ConfigError);

  auto nonfinite = (dir / "nonfinite.csv").string();
  std::string text = "x,re1,im1,re2,im2\n";
  for (int i = 0; i < 8; ++i) {
    text += measure::format_double(g1.coordinate(0, i));
    text += i == 3 ? ",nan,0,0,0\n" : ",1,0,0,0\n";
  }
  write_text(nonfinite, text);
  CHECK_THROWS_AS((void)fields::sample_initial(g1, fields::TableInitial{nonfinite}),
                  ConfigError);

  CHECK_THROWS_AS((void)fields::sample_initial(
                      g1, fields::TableInitial{(dir / "absent.csv").string()}),
                  IoError);
}

TEST_CASE("pointwise charge conjugation of fields") {
  Grid g = make_grid(1, {8}, {4.0});
  SpinorField f = testutil::random_field(g, 5);
  SpinorField fc = fields::charge_conjugate(f);
  for (int i = 0; i < 8; ++i) {
    CHECK(fc.component(0)[i] == -std::conj(f.component(1)[i]));
    CHECK(fc.component(1)[i] == -std::conj(f.component(0)[i]));
  }
  CHECK(testutil::field_diff(fields::charge_conjugate(fc), f) == 0.0);
  CHECK(std::abs(fields::norm(fc) - fields::norm(f)) <= 1e-15);

  SpinorField mom = fourier::to_momentum(f);
  CHECK_THROWS_AS((void)fields::charge_conjugate(mom), ContractError);
}

TEST_CASE("conjugation decomposition and reconstruction") {
  Grid g = make_grid(2, {4, 4}, {2.0, 3.0});
  SpinorField f = testutil::random_field(g, 13);
  fields::MajoranaPair pair = fields::decompose_majorana(f);

  // Both halves satisfy the self-conjugacy condition thanks to the -i phase
  // on the difference part.
  CHECK(testutil::field_diff(fields::charge_conjugate(pair.plus), pair.plus) <= 1e-15);
  CHECK(testutil::field_diff(fields::charge_conjugate(pair.minus), pair.minus) <= 1e-15);

  // Exact reconstruction and the norm identity
  // ||psi||^2 = (||plus||^2 + ||minus||^2) / 2.
  CHECK(testutil::field_diff(fields::reconstruct(pair), f) <= 1e-15);
  double n2 = fields::norm(f) * fields::norm(f);
  double halves = 0.5 * (fields::norm(pair.plus) * fields::norm(pair.plus) +
                         fields::norm(pair.minus) * fields::norm(pair.minus));
  CHECK(std::abs(n2 - halves) <= 1e-13);

  // Cross inner products of self-conjugate fields are real.
  CHECK(std::abs(fields::inner(pair.plus, pair.minus).imag()) <= 1e-14);

  // The uniform (1,0) state decomposes into the constant basis pair
  // (chi_plus, -chi_minus).
  fields::UniformInitial rest;
  rest.spinor << 1.0, 0.0;
  SpinorField u = fields::sample_initial(g, rest);
  fields::MajoranaPair upair = fields::decompose_majorana(u);
  double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index p = 0; p < g.total_points(); ++p) {
    CHECK(std::abs(upair.plus.component(0)[p] - Complex(s, 0)) <= 1e-15);
    CHECK(std::abs(upair.plus.component(1)[p] - Complex(-s, 0)) <= 1e-15);
    CHECK(std::abs(upair.minus.component(0)[p] - Complex(0, -s)) <= 1e-15);
    CHECK(std::abs(upair.minus.component(1)[p] - Complex(0, -s)) <= 1e-15);
  }

  SpinorField mom = fourier::to_momentum(f);
  CHECK_THROWS_AS((void)fields::decompose_majorana(mom), ContractError);
}

TEST_CASE("real expansion layout and round-trip") {
  Grid g = make_grid(1, {8}, {4.0});
  SpinorField f = testutil::random_field(g, 29);
  fields::RealField4 r = fields::real_expand(f);
  CHECK(r.values.size() == 32);
  const Eigen::Index n = g.total_points();
  CHECK(max_abs_diff(r.values.segment(0, n), f.component(0).real()) == 0.0);
  CHECK(max_abs_diff(r.values.segment(n, n), f.component(1).real()) == 0.0);
  CHECK(max_abs_diff(r.values.segment(2 * n, n), f.component(0).imag()) == 0.0);
  CHECK(max_abs_diff(r.values.segment(3 * n, n), f.component(1).imag()) == 0.0);

  SpinorField back = fields::real_contract(r);
  CHECK(back.values == f.values);
  CHECK(back.space == Space::position);
}

TEST_CASE("inner products carry the cell volume") {
  Grid g = make_grid(1, {8}, {4.0});  // dx = 0.5
  fields::UniformInitial one;
  one.spinor << 1.0, 0.0;
  SpinorField u = fields::sample_initial(g, one);
  // ||u||^2 = dx * sum |1|^2 = 0.5 * 8 = 4.
  CHECK(std::abs(fields::inner(u, u).real() - 4.0) <= 1e-15);
  CHECK(std::abs(fields::norm(u) - 2.0) <= 1e-15);

  SpinorField a = testutil::random_field(g, 41);
  SpinorField b = testutil::random_field(g, 42);
  Complex ab = fields::inner(a, b);
  CHECK(std::abs(ab - std::conj(fields::inner(b, a))) <= 1e-14);
  // Direct sum cross-check.
  Complex direct = 0.0;
  for (Eigen::Index i = 0; i < a.values.size(); ++i) {
    direct += std::conj(a.values[i]) * b.values[i];
  }
  CHECK(std::abs(ab - 0.5 * direct) <= 1e-13);

  SpinorField other = testutil::random_field(make_grid(1, {8}, {5.0}), 43);
  CHECK_THROWS_AS((void)fields::inner(a, other), ContractError);
  SpinorField mom = fourier::to_momentum(b);
  CHECK_THROWS_AS((void)fields::inner(a, mom), ContractError);
}

TEST_CASE("unitary transform matches the plain DFT sum") {
  // Frozen from tests/make_reference_values.py: DFT of [1+2i, -1, 0.5i, 3]
  // with the 1/sqrt(n) normalization.
  Grid g4 = make_grid(1, {4}, {1.0});
  Eigen::VectorXcd data(4);
  data << Complex(1, 2), Complex(-1, 0), Complex(0, 0.5), Complex(3, 0);
  fourier::transform(g4, data, true);
  Eigen::VectorXcd expected(4);
  expected << Complex(1.5, 1.25), Complex(0.5, 2.75), Complex(-0.5, 1.25),
      Complex(0.5, -1.25);
  CHECK(max_abs_diff(data, expected) <= 1e-15);

  // Random 1D vector against the O(n^2) definition.
  Grid g = make_grid(1, {16}, {3.0});
  testutil::Rng rng(71);
  Eigen::VectorXcd v = rng.vector(16);
  Eigen::VectorXcd vhat = v;
  fourier::transform(g, vhat, true);
  for (int k = 0; k < 16; ++k) {
    Complex sum = 0.0;
    for (int j = 0; j < 16; ++j) {
      sum += v[j] * std::exp(-kI * (2.0 * kPi * j * k / 16.0));
    }
    CHECK(std::abs(vhat[k] - sum / 4.0) <= 1e-13);
  }

  // Round trip is the identity; both directions preserve the norm.
  Eigen::VectorXcd v2 = vhat;
  fourier::transform(g, v2, false);
  CHECK(max_abs_diff(v2, v) <= 1e-14);
  CHECK(std::abs(v.norm() - vhat.norm()) <= 1e-13);
}

TEST_CASE("two-dimensional transform uses the x-outer layout") {
  Grid g = make_grid(2, {4, 6}, {3.0, 5.0});
  testutil::Rng rng(73);
  Eigen::VectorXcd v = rng.vector(g.total_points());
  Eigen::VectorXcd vhat = v;
  fourier::transform(g, vhat, true);

  const double scale = 1.0 / std::sqrt(24.0);
  for (Eigen::Index q = 0; q < g.total_points(); ++q) {
    auto [kx, ky] = g.axis_indices(q);
    Complex sum = 0.0;
    for (Eigen::Index p = 0; p < g.total_points(); ++p) {
      auto [jx, jy] = g.axis_indices(p);
      double phase = 2.0 * kPi * (double(jx) * kx / 4.0 + double(jy) * ky / 6.0);
      sum += v[p] * std::exp(-kI * phase);
    }
    CHECK(std::abs(vhat[q] - scale * sum) <= 1e-13);
  }

  Eigen::VectorXcd back = vhat;
  fourier::transform(g, back, false);
  CHECK(max_abs_diff(back, v) <= 1e-14);
}

TEST_CASE("field transforms tag the space and preserve the norm") {
  Grid g = make_grid(2, {4, 6}, {3.0, 5.0});
  SpinorField f = testutil::random_field(g, 79);
  SpinorField fhat = fourier::to_momentum(f);
  CHECK(fhat.space == Space::momentum);
  CHECK(std::abs(fields::norm(fhat) - fields::norm(f)) <= 1e-13);
  SpinorField back = fourier::to_position(fhat);
  CHECK(back.space == Space::position);
  CHECK(testutil::field_diff(back, f) <= 1e-14);

  CHECK_THROWS_AS((void)fourier::to_momentum(fhat), ContractError);
  CHECK_THROWS_AS((void)fourier::to_position(f), ContractError);
}

TEST_CASE("zero field helper") {
  Grid g = make_grid(1, {6}, {2.0});
  SpinorField z = fields::zero_field(g);
  CHECK(z.values.size() == 12);
  CHECK(testutil::max_abs(z.values) == 0.0);
  CHECK(z.space == Space::position);
  SpinorField zm = fields::zero_field(g, Space::momentum);
  CHECK(zm.space == Space::momentum);
}

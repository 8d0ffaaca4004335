#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "majoranon/field.hpp"

// Observables of a spinor field and CSV serialization of observable series and
// field snapshots. All floating-point output uses shortest round-trip
// formatting, so identical data serializes to identical bytes.

namespace majoranon::measure {

struct ObservableRecord {
  double t = 0.0;
  double norm = 0.0;
  double norm_plus = 0.0;
  double norm_minus = 0.0;
  // Per-axis means; index 1 unused in 1D.
  std::array<double, 2> x_mean{0.0, 0.0};
  std::array<double, 2> p_mean{0.0, 0.0};
  double pop_up = 0.0;           // |psi_1|^2 weight / norm^2
  double majorana_defect = 0.0;  // ||psi - psi_c|| / ||psi||
  double cross_inner_im = 0.0;   // |Im <psi_plus, psi_minus>|
  bool boundary_warning = false;
  bool zero_norm = false;  // norm == 0: means/populations are NaN sentinels
  int dim = 1;
};

struct SeriesMeta {
  std::string equation;  // short human-readable summary, e.g. "majorana(mass=1)"
  std::string backend;
  int dim = 1;
  std::vector<int> n;
  std::vector<double> length;
};

struct ObservableSeries {
  SeriesMeta meta;
  std::vector<ObservableRecord> records;
};

// Pointwise probability density |psi_1|^2 + |psi_2|^2 in grid flat order.
// Position-space input required.
Eigen::VectorXd density(const fields::SpinorField& f);

// Evaluate all observables. If pair is null the field is decomposed
// internally. A zero-norm field yields NaN means/populations with the
// zero_norm flag set rather than silent zeros. boundary_warning is set when
// density on any outermost grid layer exceeds 1e-6 of the peak density.
ObservableRecord observe(const fields::SpinorField& f,
                         const fields::MajoranaPair* pair = nullptr);

// Shortest round-trip decimal formatting (std::to_chars); NaN prints "nan".
std::string format_double(double v);

// CSV with header
// t,norm,norm_plus,norm_minus,x_mean[,y_mean],p_mean[,py_mean],pop_up,
// majorana_defect,cross_inner_im,boundary_warning
// (bracketed columns in 2D only; boundary_warning as 0/1).
void series_to_csv(const ObservableSeries& series, const std::string& path);
std::string series_to_csv_string(const ObservableSeries& series);

// CSV with header x[,y],re1,im1,re2,im2, one row per point in flat order.
// Position-space input required. Written so that a table initial condition
// reproduces the field exactly.
void snapshot_to_csv(const fields::SpinorField& f, const std::string& path);

}  // namespace majoranon::measure

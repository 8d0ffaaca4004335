#include "majoranon/measure.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "majoranon/errors.hpp"
#include "majoranon/fourier.hpp"

namespace majoranon::measure {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw IoError("write to '" + path + "' failed");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

Eigen::VectorXd density(const fields::SpinorField& f) {
  if (f.space != fields::Space::position) {
    throw ContractError("density: position-space field required");
  }
  return f.component(0).cwiseAbs2() + f.component(1).cwiseAbs2();
}

ObservableRecord observe(const fields::SpinorField& f,
                         const fields::MajoranaPair* pair) {
  if (f.space != fields::Space::position) {
    throw ContractError("observe: position-space field required");
  }
  const fields::Grid& grid = f.grid;
  ObservableRecord rec;
  rec.dim = grid.dim();
  rec.norm = fields::norm(f);

  fields::MajoranaPair local;
  if (pair == nullptr) {
    local = fields::decompose_majorana(f);
    pair = &local;
  }
  rec.norm_plus = fields::norm(pair->plus);
  rec.norm_minus = fields::norm(pair->minus);

  const Eigen::VectorXd rho = density(f);
  const double rho_max = rho.size() ? rho.maxCoeff() : 0.0;

  // Any outermost layer carrying more than 1e-6 of the peak density means the
  // packet reached the box edge and periodic wrap-around is imminent.
  double rho_edge = 0.0;
  for (Eigen::Index p = 0; p < rho.size(); ++p) {
    const auto idx = grid.axis_indices(p);
    bool edge = false;
    for (int a = 0; a < grid.dim(); ++a) {
      if (idx[a] == 0 || idx[a] == grid.points(a) - 1) edge = true;
    }
    if (edge) rho_edge = std::max(rho_edge, rho(p));
  }
  rec.boundary_warning = rho_edge > 1e-6 * rho_max;

  if (rec.norm == 0.0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.zero_norm = true;
    rec.x_mean = {nan, nan};
    rec.p_mean = {nan, nan};
    rec.pop_up = nan;
    rec.majorana_defect = nan;
    rec.cross_inner_im = std::abs(fields::inner(pair->plus, pair->minus).imag());
    return rec;
  }

  const double weight = rho.sum();
  for (int a = 0; a < grid.dim(); ++a) {
    double acc = 0.0;
    for (Eigen::Index p = 0; p < rho.size(); ++p) {
      acc += grid.coordinate(a, grid.axis_indices(p)[a]) * rho(p);
    }
    rec.x_mean[a] = acc / weight;
  }

  const fields::SpinorField fk = fourier::to_momentum(f);
  const Eigen::VectorXd rho_k =
      fk.component(0).cwiseAbs2() + fk.component(1).cwiseAbs2();
  const double weight_k = rho_k.sum();
  for (int a = 0; a < grid.dim(); ++a) {
    double acc = 0.0;
    for (Eigen::Index p = 0; p < rho_k.size(); ++p) {
      acc += grid.momentum(a, grid.axis_indices(p)[a]) * rho_k(p);
    }
    rec.p_mean[a] = acc / weight_k;
  }

  rec.pop_up = f.component(0).cwiseAbs2().sum() / weight;

  const fields::SpinorField fc = fields::charge_conjugate(f);
  rec.majorana_defect =
      std::sqrt(grid.cell_volume()) * (f.values - fc.values).norm() / rec.norm;

  rec.cross_inner_im = std::abs(fields::inner(pair->plus, pair->minus).imag());
  return rec;
}

std::string series_to_csv_string(const ObservableSeries& series) {
  const int dim = series.meta.dim;
  std::string out;
  out += "t,norm,norm_plus,norm_minus,x_mean";
  if (dim == 2) out += ",y_mean";
  out += ",p_mean";
  if (dim == 2) out += ",py_mean";
  out += ",pop_up,majorana_defect,cross_inner_im,boundary_warning\n";
  for (const auto& r : series.records) {
    out += format_double(r.t);
    out += ',';
    out += format_double(r.norm);
    out += ',';
    out += format_double(r.norm_plus);
    out += ',';
    out += format_double(r.norm_minus);
    for (int a = 0; a < dim; ++a) {
      out += ',';
      out += format_double(r.x_mean[a]);
    }
    for (int a = 0; a < dim; ++a) {
      out += ',';
      out += format_double(r.p_mean[a]);
    }
    out += ',';
    out += format_double(r.pop_up);
    out += ',';
    out += format_double(r.majorana_defect);
    out += ',';
    out += format_double(r.cross_inner_im);
    out += ',';
    out += r.boundary_warning ? '1' : '0';
    out += '\n';
  }
  return out;
}

void series_to_csv(const ObservableSeries& series, const std::string& path) {
  write_file(path, series_to_csv_string(series));
}

void snapshot_to_csv(const fields::SpinorField& f, const std::string& path) {
  if (f.space != fields::Space::position) {
    throw ContractError("snapshot_to_csv: position-space field required");
  }
  const fields::Grid& grid = f.grid;
  std::string out;
  out += grid.dim() == 1 ? "x,re1,im1,re2,im2\n" : "x,y,re1,im1,re2,im2\n";
  const Eigen::Index total = grid.total_points();
  for (Eigen::Index p = 0; p < total; ++p) {
    const auto idx = grid.axis_indices(p);
    for (int a = 0; a < grid.dim(); ++a) {
      if (a) out += ',';
      out += format_double(grid.coordinate(a, idx[a]));
    }
    const fields::Complex v1 = f.component(0)(p);
    const fields::Complex v2 = f.component(1)(p);
    out += ',';
    out += format_double(v1.real());
    out += ',';
    out += format_double(v1.imag());
    out += ',';
    out += format_double(v2.real());
    out += ',';
    out += format_double(v2.imag());
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace majoranon::measure

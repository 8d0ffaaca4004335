#include "majoranon/field.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "majoranon/errors.hpp"

namespace majoranon::fields {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_position(const SpinorField& f, const char* who) {
  if (f.space != Space::position) {
    throw ContractError(std::string(who) + ": position-space field required");
  }
}

void require_same_frame(const SpinorField& a, const SpinorField& b,
                        const char* who) {
  if (a.grid != b.grid) {
    throw ContractError(std::string(who) + ": fields live on different grids");
  }
  if (a.space != b.space) {
    throw ContractError(std::string(who) + ": fields live in different spaces");
  }
}

double parse_csv_double(std::string_view token, const std::string& path,
                        std::size_t line_no) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError(path + ":" + std::to_string(line_no) +
                      ": cannot parse number '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

SpinorField read_table(const Grid& grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open table '" + path + "' for reading");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError(path + ": empty table");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string expected_header =
      grid.dim() == 1 ? "x,re1,im1,re2,im2" : "x,y,re1,im1,re2,im2";
  if (line != expected_header) {
    throw ConfigError(path + ": expected header '" + expected_header +
                      "', got '" + line + "'");
  }

  SpinorField f = zero_field(grid);
  const Eigen::Index total = grid.total_points();
  const std::size_t ncols = grid.dim() == 1 ? 5 : 6;
  Eigen::Index row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row >= total) {
      throw ConfigError(path + ": more rows than grid points (" +
                        std::to_string(total) + ")");
    }
    auto tokens = split_csv(line);
    if (tokens.size() != ncols) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(ncols) + " columns, got " +
                        std::to_string(tokens.size()));
    }
    std::vector<double> vals(ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
      vals[c] = parse_csv_double(tokens[c], path, line_no);
    }
    const auto idx = grid.axis_indices(row);
    for (int a = 0; a < grid.dim(); ++a) {
      const double expect = grid.coordinate(a, idx[a]);
      if (std::abs(vals[a] - expect) >
          1e-9 * std::max(1.0, grid.length(a))) {
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": coordinate does not match the grid");
      }
    }
    const std::size_t o = grid.dim();
    const Complex v1(vals[o + 0], vals[o + 1]);
    const Complex v2(vals[o + 2], vals[o + 3]);
    if (!std::isfinite(vals[o]) || !std::isfinite(vals[o + 1]) ||
        !std::isfinite(vals[o + 2]) || !std::isfinite(vals[o + 3])) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": non-finite spinor value");
    }
    f.component(0)(row) = v1;
    f.component(1)(row) = v2;
    ++row;
  }
  if (row != total) {
    throw ConfigError(path + ": table has " + std::to_string(row) +
                      " rows, grid has " + std::to_string(total) + " points");
  }
  return f;
}

void normalize_field(SpinorField& f) {
  const double n = norm(f);
  if (!(n > 0.0)) {
    throw ConfigError("cannot normalize a zero field");
  }
  f.values /= n;
}

}  // namespace

Eigen::VectorBlock<Eigen::VectorXcd> SpinorField::component(int c) {
  const Eigen::Index n = grid.total_points();
  return values.segment(c * n, n);
}

Eigen::VectorBlock<const Eigen::VectorXcd> SpinorField::component(int c) const {
  const Eigen::Index n = grid.total_points();
  return values.segment(c * n, n);
}

SpinorField zero_field(const Grid& grid, Space space) {
  SpinorField f;
  f.grid = grid;
  f.space = space;
  f.values = Eigen::VectorXcd::Zero(2 * grid.total_points());
  return f;
}

SpinorField sample_initial(const Grid& grid, const InitialSpec& spec) {
  if (const auto* g = std::get_if<GaussianInitial>(&spec)) {
    if (g->p0.size() != grid.dim()) {
      throw ConfigError("gaussian initial: p0 must have " +
                        std::to_string(grid.dim()) + " components");
    }
    if (!(g->delta > 0.0) || !std::isfinite(g->delta)) {
      throw ConfigError("gaussian initial: delta must be positive and finite");
    }
    if (!g->spinor.allFinite() || !g->p0.allFinite()) {
      throw ConfigError("gaussian initial: non-finite parameters");
    }
    SpinorField f = zero_field(grid);
    const Eigen::Index total = grid.total_points();
    const double inv4d2 = 1.0 / (4.0 * g->delta * g->delta);
    for (Eigen::Index p = 0; p < total; ++p) {
      const auto idx = grid.axis_indices(p);
      double phase = 0.0, r2 = 0.0;
      for (int a = 0; a < grid.dim(); ++a) {
        const double x = grid.coordinate(a, idx[a]);
        phase += g->p0(a) * x;
        r2 += x * x;
      }
      const Complex amp = std::exp(Complex(-r2 * inv4d2, phase));
      f.component(0)(p) = amp * g->spinor(0);
      f.component(1)(p) = amp * g->spinor(1);
    }
    if (g->normalize) normalize_field(f);
    return f;
  }
  if (const auto* u = std::get_if<UniformInitial>(&spec)) {
    if (!u->spinor.allFinite()) {
      throw ConfigError("uniform initial: non-finite spinor");
    }
    SpinorField f = zero_field(grid);
    f.component(0).setConstant(u->spinor(0));
    f.component(1).setConstant(u->spinor(1));
    if (u->normalize) normalize_field(f);
    return f;
  }
  const auto& t = std::get<TableInitial>(spec);
  return read_table(grid, t.path);
}

SpinorField charge_conjugate(const SpinorField& f) {
  require_position(f, "charge_conjugate");
  SpinorField out = zero_field(f.grid);
  out.component(0) = -f.component(1).conjugate();
  out.component(1) = -f.component(0).conjugate();
  return out;
}

MajoranaPair decompose_majorana(const SpinorField& f) {
  require_position(f, "decompose_majorana");
  MajoranaPair pair;
  pair.plus = zero_field(f.grid);
  pair.minus = zero_field(f.grid);
  const auto c1 = f.component(0);
  const auto c2 = f.component(1);
  pair.plus.component(0) = kInvSqrt2 * (c1 - c2.conjugate());
  pair.plus.component(1) = kInvSqrt2 * (c2 - c1.conjugate());
  pair.minus.component(0) = -kI * kInvSqrt2 * (c1 + c2.conjugate());
  pair.minus.component(1) = -kI * kInvSqrt2 * (c2 + c1.conjugate());
  return pair;
}

SpinorField reconstruct(const MajoranaPair& pair) {
  require_same_frame(pair.plus, pair.minus, "reconstruct");
  SpinorField f;
  f.grid = pair.plus.grid;
  f.space = pair.plus.space;
  f.values = kInvSqrt2 * (pair.plus.values + kI * pair.minus.values);
  return f;
}

RealField4 real_expand(const SpinorField& f) {
  require_position(f, "real_expand");
  RealField4 r;
  r.grid = f.grid;
  const Eigen::Index n = f.grid.total_points();
  r.values.resize(4 * n);
  r.values.segment(0, n) = f.component(0).real();
  r.values.segment(n, n) = f.component(1).real();
  r.values.segment(2 * n, n) = f.component(0).imag();
  r.values.segment(3 * n, n) = f.component(1).imag();
  return r;
}

SpinorField real_contract(const RealField4& r) {
  SpinorField f = zero_field(r.grid);
  const Eigen::Index n = r.grid.total_points();
  f.component(0).real() = r.values.segment(0, n);
  f.component(1).real() = r.values.segment(n, n);
  f.component(0).imag() = r.values.segment(2 * n, n);
  f.component(1).imag() = r.values.segment(3 * n, n);
  return f;
}

Complex inner(const SpinorField& a, const SpinorField& b) {
  require_same_frame(a, b, "inner");
  return a.grid.cell_volume() * a.values.dot(b.values);
}

double norm(const SpinorField& f) {
  return std::sqrt(f.grid.cell_volume()) * f.values.norm();
}

}  // namespace majoranon::fields

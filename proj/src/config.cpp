#include "majoranon/config.hpp"

#include <Eigen/Core>
#include <cmath>
#include <fstream>
#include <sstream>

#include "majoranon/errors.hpp"
#include "majoranon/measure.hpp"
#include "majoranon/version.hpp"

namespace majoranon::config {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (item.key() == a) ok = true;
    }
    if (!ok) fail(where, "unknown key '" + item.key() + "'");
  }
}

const json& require(const json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing required key '" + std::string(key) + "'");
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "value must be finite");
  return v;
}

long as_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where, "expected a boolean");
  return j.get<bool>();
}

double as_sign(const json& j, const std::string& where) {
  const double v = as_number(j, where);
  if (v != 1.0 && v != -1.0) fail(where, "expected +1 or -1");
  return v;
}

Eigen::Vector2cd parse_spinor(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    fail(where, "expected two [re, im] pairs");
  }
  Eigen::Vector2cd s;
  for (int c = 0; c < 2; ++c) {
    const json& e = j[c];
    if (!e.is_array() || e.size() != 2) {
      fail(where, "component " + std::to_string(c + 1) +
                      ": expected an [re, im] pair");
    }
    s(c) = fields::Complex(as_number(e[0], where), as_number(e[1], where));
  }
  return s;
}

dynamics::EquationKind parse_equation(const json& j) {
  const std::string where = "equation";
  if (!j.is_object()) fail(where, "expected an object");
  const std::string kind = as_string(require(j, where, "kind"), where + ".kind");
  if (kind == "weyl") {
    check_keys(j, where, {"kind"});
    return dynamics::WeylKind{};
  }
  if (kind == "dirac") {
    check_keys(j, where, {"kind", "mass", "mass_sign", "kinetic_sign"});
    dynamics::DiracKind k;
    k.mass = as_number(require(j, where, "mass"), where + ".mass");
    if (j.contains("mass_sign")) {
      k.mass_sign = as_sign(j["mass_sign"], where + ".mass_sign");
    }
    if (j.contains("kinetic_sign")) {
      k.kinetic_sign = as_sign(j["kinetic_sign"], where + ".kinetic_sign");
    }
    return k;
  }
  if (kind == "majorana") {
    check_keys(j, where, {"kind", "mass"});
    return dynamics::MajoranaKind{
        as_number(require(j, where, "mass"), where + ".mass")};
  }
  if (kind == "dirac_majorana") {
    check_keys(j, where, {"kind", "dirac_mass", "majorana_mass"});
    dynamics::DiracMajoranaKind k;
    k.dirac_mass =
        as_number(require(j, where, "dirac_mass"), where + ".dirac_mass");
    k.majorana_mass =
        as_number(require(j, where, "majorana_mass"), where + ".majorana_mass");
    return k;
  }
  fail(where + ".kind", "unknown kind '" + kind +
                            "' (expected weyl, dirac, majorana, or "
                            "dirac_majorana)");
}

fields::InitialSpec parse_initial(const json& j, int dimension) {
  const std::string where = "initial";
  if (!j.is_object()) fail(where, "expected an object");
  const std::string type = as_string(require(j, where, "type"), where + ".type");
  if (type == "gaussian") {
    check_keys(j, where, {"type", "p0", "delta", "spinor", "normalize"});
    fields::GaussianInitial g;
    const json& p0 = require(j, where, "p0");
    if (!p0.is_array() || static_cast<int>(p0.size()) != dimension) {
      fail(where + ".p0", "expected " + std::to_string(dimension) + " numbers");
    }
    g.p0.resize(dimension);
    for (int a = 0; a < dimension; ++a) {
      g.p0(a) = as_number(p0[a], where + ".p0");
    }
    g.delta = as_number(require(j, where, "delta"), where + ".delta");
    if (!(g.delta > 0.0)) fail(where + ".delta", "must be positive");
    g.spinor = parse_spinor(require(j, where, "spinor"), where + ".spinor");
    if (j.contains("normalize")) {
      g.normalize = as_bool(j["normalize"], where + ".normalize");
    }
    return g;
  }
  if (type == "uniform") {
    check_keys(j, where, {"type", "spinor", "normalize"});
    fields::UniformInitial u;
    u.spinor = parse_spinor(require(j, where, "spinor"), where + ".spinor");
    if (j.contains("normalize")) {
      u.normalize = as_bool(j["normalize"], where + ".normalize");
    }
    return u;
  }
  if (type == "table") {
    check_keys(j, where, {"type", "path"});
    fields::TableInitial t;
    t.path = as_string(require(j, where, "path"), where + ".path");
    if (t.path.empty()) fail(where + ".path", "must not be empty");
    return t;
  }
  fail(where + ".type",
       "unknown type '" + type + "' (expected gaussian, uniform, or table)");
}

json equation_json(const dynamics::EquationKind& kind) {
  return std::visit(
      [](const auto& kk) -> json {
        using T = std::decay_t<decltype(kk)>;
        if constexpr (std::is_same_v<T, dynamics::WeylKind>) {
          return {{"kind", "weyl"}};
        } else if constexpr (std::is_same_v<T, dynamics::DiracKind>) {
          return {{"kind", "dirac"},
                  {"mass", kk.mass},
                  {"mass_sign", kk.mass_sign},
                  {"kinetic_sign", kk.kinetic_sign}};
        } else if constexpr (std::is_same_v<T, dynamics::MajoranaKind>) {
          return {{"kind", "majorana"}, {"mass", kk.mass}};
        } else if constexpr (std::is_same_v<T, dynamics::DiracMajoranaKind>) {
          return {{"kind", "dirac_majorana"},
                  {"dirac_mass", kk.dirac_mass},
                  {"majorana_mass", kk.majorana_mass}};
        } else {
          return {{"kind", "custom"}};
        }
      },
      kind);
}

json initial_json(const fields::InitialSpec& spec) {
  if (const auto* g = std::get_if<fields::GaussianInitial>(&spec)) {
    json p0 = json::array();
    for (Eigen::Index a = 0; a < g->p0.size(); ++a) p0.push_back(g->p0(a));
    return {{"type", "gaussian"},
            {"p0", p0},
            {"delta", g->delta},
            {"spinor",
             {{g->spinor(0).real(), g->spinor(0).imag()},
              {g->spinor(1).real(), g->spinor(1).imag()}}},
            {"normalize", g->normalize}};
  }
  if (const auto* u = std::get_if<fields::UniformInitial>(&spec)) {
    return {{"type", "uniform"},
            {"spinor",
             {{u->spinor(0).real(), u->spinor(0).imag()},
              {u->spinor(1).real(), u->spinor(1).imag()}}},
            {"normalize", u->normalize}};
  }
  const auto& t = std::get<fields::TableInitial>(spec);
  return {{"type", "table"}, {"path", t.path}};
}

}  // namespace

SimulationConfig parse_config_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset -> line number for a readable message.
    std::size_t line = 1;
    const std::size_t upto = std::min(e.byte, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ConfigError("config: malformed JSON near line " +
                      std::to_string(line) + ": " + e.what());
  } catch (const json::exception& e) {
    // e.g. a numeric literal that overflows double.
    throw ConfigError(std::string("config: unusable JSON value: ") + e.what());
  }
  if (!j.is_object()) fail("top level", "expected an object");
  check_keys(j, "top level",
             {"dimension", "grid", "equation", "initial", "backend", "time",
              "output", "oracle_cap"});

  SimulationConfig cfg;
  cfg.dimension =
      static_cast<int>(as_integer(require(j, "top level", "dimension"), "dimension"));
  if (cfg.dimension == 3) {
    fail("dimension",
         "dimension 3 is not supported: only line (1) and planar (2) problems");
  }
  if (cfg.dimension != 1 && cfg.dimension != 2) {
    fail("dimension", "must be 1 or 2");
  }

  const json& grid = require(j, "top level", "grid");
  if (!grid.is_object()) fail("grid", "expected an object");
  check_keys(grid, "grid", {"n", "length"});
  const json& n = require(grid, "grid", "n");
  const json& length = require(grid, "grid", "length");
  if (!n.is_array() || static_cast<int>(n.size()) != cfg.dimension) {
    fail("grid.n", "expected " + std::to_string(cfg.dimension) + " integers");
  }
  if (!length.is_array() || static_cast<int>(length.size()) != cfg.dimension) {
    fail("grid.length",
         "expected " + std::to_string(cfg.dimension) + " numbers");
  }
  for (int a = 0; a < cfg.dimension; ++a) {
    cfg.n.push_back(static_cast<int>(as_integer(n[a], "grid.n")));
    cfg.length.push_back(as_number(length[a], "grid.length"));
  }

  cfg.equation = parse_equation(require(j, "top level", "equation"));
  cfg.initial = parse_initial(require(j, "top level", "initial"), cfg.dimension);

  if (j.contains("backend")) {
    cfg.backend = dynamics::parse_backend(as_string(j["backend"], "backend"));
  }

  const json& time = require(j, "top level", "time");
  if (!time.is_object()) fail("time", "expected an object");
  check_keys(time, "time", {"dt", "steps", "record_every"});
  cfg.time.dt = as_number(require(time, "time", "dt"), "time.dt");
  if (!(cfg.time.dt > 0.0)) fail("time.dt", "must be positive");
  cfg.time.steps = as_integer(require(time, "time", "steps"), "time.steps");
  if (cfg.time.steps < 0) fail("time.steps", "must be non-negative");
  if (time.contains("record_every")) {
    cfg.time.record_every = as_integer(time["record_every"], "time.record_every");
    if (cfg.time.record_every < 1) fail("time.record_every", "must be >= 1");
  }

  if (j.contains("output")) {
    const json& output = j["output"];
    if (!output.is_object()) fail("output", "expected an object");
    check_keys(output, "output", {"series", "snapshots", "metadata"});
    if (output.contains("series")) {
      cfg.output.series = as_string(output["series"], "output.series");
      if (cfg.output.series.empty()) fail("output.series", "must not be empty");
    }
    if (output.contains("snapshots")) {
      cfg.output.snapshots = as_string(output["snapshots"], "output.snapshots");
      if (!cfg.output.snapshots.empty() &&
          cfg.output.snapshots.find("{tag}") == std::string::npos) {
        fail("output.snapshots", "pattern must contain {tag}");
      }
    }
    if (output.contains("metadata")) {
      cfg.output.metadata = as_string(output["metadata"], "output.metadata");
      if (cfg.output.metadata.empty()) {
        fail("output.metadata", "must not be empty");
      }
    }
  }

  if (j.contains("oracle_cap")) {
    const long cap = as_integer(j["oracle_cap"], "oracle_cap");
    if (cap < 1) fail("oracle_cap", "must be positive");
    cfg.oracle_cap = static_cast<int>(cap);
  }

  // Surface grid problems at parse time rather than first use.
  grid_from(cfg);
  return cfg;
}

SimulationConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config '" + path + "' for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

fields::Grid grid_from(const SimulationConfig& cfg) {
  return fields::make_grid(cfg.dimension, cfg.n, cfg.length);
}

fields::SpinorField initial_from(const SimulationConfig& cfg) {
  return fields::sample_initial(grid_from(cfg), cfg.initial);
}

json config_json(const SimulationConfig& cfg) {
  return {{"dimension", cfg.dimension},
          {"grid", {{"n", cfg.n}, {"length", cfg.length}}},
          {"equation", equation_json(cfg.equation)},
          {"initial", initial_json(cfg.initial)},
          {"backend", dynamics::backend_name(cfg.backend)},
          {"time",
           {{"dt", cfg.time.dt},
            {"steps", cfg.time.steps},
            {"record_every", cfg.time.record_every}}},
          {"output",
           {{"series", cfg.output.series},
            {"snapshots", cfg.output.snapshots},
            {"metadata", cfg.output.metadata}}},
          {"oracle_cap", cfg.oracle_cap}};
}

json conventions_json() {
  return {
      {"charge_conjugation",
       "psi_c = -sigma_x * conj(psi); componentwise psi_c1 = -conj(psi_2), "
       "psi_c2 = -conj(psi_1)"},
      {"decomposition",
       "psi_plus = (psi + psi_c)/sqrt(2), psi_minus = -i*(psi - psi_c)/sqrt(2), "
       "psi = (psi_plus + i*psi_minus)/sqrt(2); both halves self-conjugate"},
      {"split_masses",
       "halves evolve under sigma.p + m_plus/minus * sigma_z; majorana: "
       "+/-mass, dirac_majorana: dirac_mass +/- majorana_mass"},
      {"grid", "x_i = -L/2 + i*L/n on [-L/2, L/2), periodic"},
      {"momentum_lattice",
       "k_j = 2*pi*j/L in transform order; half-filled index reported as "
       "-pi*n/L, treated as 0 by kinetic symbols"},
      {"fourier", "unitary transforms: 1/sqrt(n) per axis in each direction"},
      {"storage",
       "component-major fields; 2D flattened x-outer, p = ix*ny + iy"},
      {"real_expansion", "[Re psi_1, Re psi_2, Im psi_1, Im psi_2]"},
  };
}

json metadata_json(const SimulationConfig& cfg, double wall_seconds) {
  return {{"config", config_json(cfg)},
          {"conventions", conventions_json()},
          {"versions",
           {{"majoranon", kVersionString},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                          std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)}}},
          {"wall_seconds", wall_seconds}};
}

void write_metadata(const std::string& path, const SimulationConfig& cfg,
                    double wall_seconds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << metadata_json(cfg, wall_seconds).dump(2) << "\n";
  if (!out) {
    throw IoError("write to '" + path + "' failed");
  }
}

std::string snapshot_path(const std::string& pattern, const std::string& tag) {
  std::string out = pattern;
  const std::string token = "{tag}";
  std::size_t pos = 0;
  while ((pos = out.find(token, pos)) != std::string::npos) {
    out.replace(pos, token.size(), tag);
    pos += tag.size();
  }
  return out;
}

}  // namespace majoranon::config

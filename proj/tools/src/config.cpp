#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hkink::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError("config field '" + field + "': " + msg);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where.empty() ? "<root>" : where, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) fail(where.empty() ? k : where + "." + k, "unknown key");
  }
}

template <typename T>
void read(const json& obj, const char* key, const std::string& where, T& out) {
  if (!obj.contains(key)) return;
  const std::string field = where.empty() ? key : where + "." + key;
  const json& v = obj.at(key);
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(field, "expected a boolean");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) fail(field, "expected a string");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) fail(field, "expected an integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) fail(field, "expected a number");
    } else {
      if (!v.is_array()) fail(field, "expected an array");
      for (const auto& e : v) {
        if (!e.is_number()) fail(field, "expected an array of numbers");
      }
    }
    out = v.get<T>();
  } catch (const json::exception& e) {
    fail(field, e.what());
  }
}

void positive(double v, const std::string& field) {
  if (!(v > 0.0)) fail(field, "must be positive");
}

int line_of(const std::string& text, std::size_t byte) {
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "config parse error at line " << line_of(text, e.byte) << ": " << e.what();
    throw ConfigError(os.str());
  }

  RunConfig c;
  only_keys(root, "", {"n", "nonlinearity", "eigen", "solver", "monotone", "schedule", "warm_start",
                       "probes", "planar", "newton", "farfield", "verify", "output"});
  read(root, "n", "", c.n);
  read(root, "nonlinearity", "", c.nonlinearity);
  read(root, "schedule", "", c.schedule);
  read(root, "warm_start", "", c.warm_start);
  read(root, "probes", "", c.probes);
  std::string output = c.output.string();
  read(root, "output", "", output);
  c.output = output;

  if (root.contains("eigen")) {
    const json& e = root["eigen"];
    only_keys(e, "eigen", {"intervals_r", "intervals_t", "R_ref", "lambda_tol", "residual_tol", "max_iterations"});
    read(e, "intervals_r", "eigen", c.eigen_grid.intervals_r);
    read(e, "intervals_t", "eigen", c.eigen_grid.intervals_t);
    read(e, "R_ref", "eigen", c.eigen_grid.R_ref);
    read(e, "lambda_tol", "eigen", c.eigen.lambda_tol);
    read(e, "residual_tol", "eigen", c.eigen.residual_tol);
    read(e, "max_iterations", "eigen", c.eigen.max_iterations);
  }
  if (root.contains("solver")) {
    const json& s = root["solver"];
    only_keys(s, "solver", {"method", "tolerance", "max_iterations"});
    std::string method = "direct";
    read(s, "method", "solver", method);
    if (method == "direct") {
      c.solver.method = SolveMethod::direct;
    } else if (method == "pcg") {
      c.solver.method = SolveMethod::pcg;
    } else {
      fail("solver.method", "expected \"direct\" or \"pcg\"");
    }
    read(s, "tolerance", "solver", c.solver.tolerance);
    read(s, "max_iterations", "solver", c.solver.max_iterations);
  }
  if (root.contains("monotone")) {
    const json& m = root["monotone"];
    only_keys(m, "monotone", {"tol_fix", "kmax"});
    read(m, "tol_fix", "monotone", c.monotone.tol_fix);
    read(m, "kmax", "monotone", c.monotone.kmax);
  }
  if (root.contains("planar")) {
    const json& p = root["planar"];
    only_keys(p, "planar", {"directions", "pairs", "seed"});
    read(p, "directions", "planar", c.planar.directions);
    read(p, "pairs", "planar", c.planar.pairs);
    read(p, "seed", "planar", c.planar.seed);
  }
  if (root.contains("newton")) {
    const json& q = root["newton"];
    only_keys(q, "newton", {"radius", "cells_r", "cells_theta", "cells_t", "step_cells"});
    read(q, "radius", "newton", c.newton.radius);
    read(q, "cells_r", "newton", c.newton.cells_r);
    read(q, "cells_theta", "newton", c.newton.cells_theta);
    read(q, "cells_t", "newton", c.newton.cells_t);
    read(q, "step_cells", "newton", c.newton.step_cells);
  }
  if (root.contains("farfield")) {
    const json& f = root["farfield"];
    only_keys(f, "farfield", {"a_values", "rmax", "step"});
    read(f, "a_values", "farfield", c.farfield.a_values);
    read(f, "rmax", "farfield", c.farfield.rmax);
    read(f, "step", "farfield", c.farfield.step);
  }
  if (root.contains("verify")) {
    const json& v = root["verify"];
    only_keys(v, "verify", {"residual_tol", "group_samples", "seed"});
    read(v, "residual_tol", "verify", c.verify.residual_tol);
    read(v, "group_samples", "verify", c.verify.group_samples);
    read(v, "seed", "verify", c.verify.seed);
  }

  if (c.n < 1) fail("n", "must be >= 1");
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), c.nonlinearity) == names.end()) {
    fail("nonlinearity", "unknown nonlinearity '" + c.nonlinearity + "'");
  }
  c.eigen_grid.n = c.n;
  if (c.eigen_grid.intervals_r < 8 || c.eigen_grid.intervals_t < 8) fail("eigen", "intervals must be >= 8");
  if (c.eigen_grid.intervals_r % 2 || c.eigen_grid.intervals_t % 2) fail("eigen", "intervals must be even");
  positive(c.eigen_grid.R_ref, "eigen.R_ref");
  positive(c.eigen.lambda_tol, "eigen.lambda_tol");
  positive(c.eigen.residual_tol, "eigen.residual_tol");
  if (c.eigen.max_iterations < 1) fail("eigen.max_iterations", "must be >= 1");
  try {
    c.solver.validate();
  } catch (const std::exception& e) {
    fail("solver", e.what());
  }
  c.eigen.solver = c.solver;
  c.monotone.solver = c.solver;
  positive(c.monotone.tol_fix, "monotone.tol_fix");
  if (c.monotone.kmax < 1) fail("monotone.kmax", "must be >= 1");
  if (c.schedule.empty()) fail("schedule", "must not be empty");
  if (c.schedule.front() < 1.0) fail("schedule", "first multiple of R0 must be >= 1");
  for (std::size_t k = 1; k < c.schedule.size(); ++k) {
    if (!(c.schedule[k] > c.schedule[k - 1])) fail("schedule", "must be strictly increasing");
  }
  for (double p : c.probes) {
    if (!(p >= 0.0)) fail("probes", "radii must be >= 0");
  }
  if (c.planar.directions < 1) fail("planar.directions", "must be >= 1");
  if (c.planar.pairs < 1) fail("planar.pairs", "must be >= 1");
  positive(c.newton.radius, "newton.radius");
  if (c.newton.cells_r < 2 || c.newton.cells_theta < 8 || c.newton.cells_t < 4) {
    fail("newton", "quadrature too coarse");
  }
  positive(c.newton.step_cells, "newton.step_cells");
  for (double a : c.farfield.a_values) {
    if (!(a >= 0.0 && a <= 1.0)) fail("farfield.a_values", "entries must lie in [0, 1]");
  }
  positive(c.farfield.step, "farfield.step");
  if (!(c.farfield.rmax > c.farfield.step)) fail("farfield.rmax", "must exceed the step");
  positive(c.verify.residual_tol, "verify.residual_tol");
  if (c.verify.group_samples < 1) fail("verify.group_samples", "must be >= 1");
  if (c.output.empty()) fail("output", "must not be empty");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace hkink::cli

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "hkink/continuation.hpp"
#include "hkink/error.hpp"
#include "hkink/export.hpp"
#include "hkink/extend.hpp"
#include "hkink/farfield.hpp"
#include "hkink/hgroup.hpp"
#include "report.hpp"

namespace hkink::cli {

namespace fs = std::filesystem;

namespace {

Json grid_json(const CylGrid& g) {
  return Json{{"n", g.n}, {"R", g.R}, {"t_min", g.t_min}, {"t_max", g.t_max}, {"Nr", g.Nr}, {"Nt", g.Nt}};
}

Json iteration_json(const IterationReport& r) {
  return Json{{"iterations", r.iterations},
              {"converged", r.converged},
              {"ordering_violation", r.ordering_violation},
              {"bounds_violation", r.bounds_violation},
              {"final_residual", r.final_residual},
              {"fixed_point_gap", r.fixed_point_gap},
              {"sup_diffs", r.sup_diffs}};
}

template <typename Fn>
void write_with(const fs::path& path, Fn&& fn) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  fn(os);
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

void write_field(const fs::path& path, const Field& f) {
  write_with(path, [&](std::ostream& os) { write_field_csv(os, f); });
}

fs::path gap_path(const fs::path& value_path) {
  fs::path p = value_path;
  p.replace_filename(value_path.stem().string() + "_gap.csv");
  return p;
}

void write_gap_field(const fs::path& path, const GapField& v) {
  write_field(path, v.value);
  write_field(gap_path(path), v.gap);
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

SvgSeries axis_series(const Field& v, const std::string& name) {
  SvgSeries s;
  s.label = name;
  const CylGrid& g = v.grid();
  for (int j = 0; j < g.Nt; ++j) {
    s.x.push_back(g.t(j));
    s.y.push_back(v(0, j));
  }
  return s;
}

struct EigOutputs {
  EigenPair pair;
  double epsilon = 0.0;
};

EigOutputs load_eig(const RunConfig& cfg) {
  const fs::path dir = cfg.output / "eig";
  const fs::path jpath = dir / "eigenpair.json";
  const fs::path cpath = dir / "phi0.csv";
  if (!fs::exists(jpath) || !fs::exists(cpath)) {
    throw MissingPrerequisite("missing " + jpath.string() + " or " + cpath.string() + "; run 'hkink eig' first");
  }
  Json j;
  try {
    std::ifstream in(jpath, std::ios::binary);
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw MissingPrerequisite("unreadable " + jpath.string() + ": " + e.what());
  }
  if (j.value("n", 0) != cfg.n || j.value("nonlinearity", std::string()) != cfg.nonlinearity ||
      j["grid"].value("Nr", 0) != cfg.eigen_grid.intervals_r + 1 ||
      j["grid"].value("Nt", 0) != cfg.eigen_grid.intervals_t + 1) {
    throw MissingPrerequisite(jpath.string() + " was produced with a different configuration; rerun 'hkink eig'");
  }
  EigOutputs out;
  const CylGrid g = CylGrid::half(cfg.n, j["R0"].get<double>(), j["grid"]["Nr"].get<int>(),
                                  j["grid"]["Nt"].get<int>());
  std::ifstream in(cpath, std::ios::binary);
  out.pair.phi0 = read_field_csv(in, g);
  out.pair.lambda0 = j["lambda0"].get<double>();
  out.pair.iterations = j["iterations"].get<int>();
  out.pair.rayleigh_residual = j["rayleigh_residual"].get<double>();
  out.epsilon = j["epsilon"].get<double>();
  return out;
}

Json stage_json(const StageResult& st) {
  return Json{{"R", st.R},
              {"grid", grid_json(st.half.value.grid())},
              {"passed", st.passed},
              {"odd", st.odd},
              {"bounded", st.bounded},
              {"above_barrier", st.above_barrier},
              {"barrier_margin", st.barrier_margin},
              {"warm_started", st.warm_started},
              {"truncation_residual", st.truncation_residual},
              {"subsolution",
               {{"passed", st.subsolution.passed},
                {"worst_margin", st.subsolution.worst_margin},
                {"worst_node", {st.subsolution.worst_i, st.subsolution.worst_j}}}},
              {"iteration", iteration_json(st.iteration)}};
}

Json planar_json(const PlanarReport& p, double floor) {
  Json spreads = Json::array();
  for (const auto& s : p.spreads) {
    spreads.push_back(Json{{"alpha", s.direction.alpha}, {"nu", s.direction.nu}, {"spread", s.spread}});
  }
  return Json{{"min_spread", p.min_spread},
              {"argmin", p.argmin},
              {"noise_floor", floor},
              {"passed", p.min_spread > floor},
              {"directions", spreads}};
}

std::vector<HeisenbergPoint> newton_samples() {
  return {HeisenbergPoint::planar(0.2, 0.0, 0.05), HeisenbergPoint::planar(0.0, 0.3, -0.1),
          HeisenbergPoint::planar(0.25, 0.25, 0.1), HeisenbergPoint::planar(0.4, -0.2, 0.15)};
}

}  // namespace

int cmd_eig(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const Nonlinearity f = make_builtin(cfg.nonlinearity);
  const ValidationReport hyp = validate_hypotheses(f);
  const R0Selection sel = choose_R0(f, cfg.eigen_grid, cfg.eigen);
  const double eps = choose_epsilon(f, sel.pair);
  int violations = 0;
  barrier_holds(f, sel.pair, eps, &violations);

  Json checks = Json::array();
  for (const auto& c : hyp.checks) {
    checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  const Json j{{"n", cfg.n},
               {"nonlinearity", f.name()},
               {"l", f.l()},
               {"shift", f.shift()},
               {"R0", sel.R0},
               {"predicted_R0", sel.predicted_R0},
               {"lambda_ref", sel.lambda_ref},
               {"doublings", sel.doublings},
               {"lambda0", sel.pair.lambda0},
               {"iterations", sel.pair.iterations},
               {"rayleigh_residual", sel.pair.rayleigh_residual},
               {"epsilon", eps},
               {"barrier_violations", violations},
               {"grid", grid_json(sel.pair.grid())},
               {"hypotheses", checks}};
  const fs::path dir = cfg.output / "eig";
  write_text(dir / "eigenpair.json", dump(j));
  write_field(dir / "phi0.csv", sel.pair.phi0);

  std::printf("lambda0 = %.17g\nR0 = %.17g\nepsilon = %.17g\n", sel.pair.lambda0, sel.R0, eps);
  return violations == 0 && hyp.all_passed() ? kOk : kInvariant;
}

int cmd_construct(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const Nonlinearity f = make_builtin(cfg.nonlinearity);
  const EigOutputs eig = load_eig(cfg);
  const double R0 = eig.pair.grid().R;
  const StageResult st = construct(f, eig.pair, eig.epsilon, cfg.schedule.front() * R0, cfg.monotone);

  const CylOperator op_full(st.full.value.grid());
  const double seam = seam_residual(st.full.value, f, op_full);
  const double off_seam = off_seam_residual(st.full.value, f, op_full);
  const double even = seam_residual(even_reflect(st.half.value), f, op_full);

  Json newton = nullptr;
  bool newton_ok = true;
  if (cfg.n == 1 && cfg.newton.radius <= R0) {
    const PotentialReport pr = newton_potential_check(st.full.value, f, newton_samples(), cfg.newton);
    Json samples = Json::array();
    for (const auto& s : pr.samples) {
      samples.push_back(Json{{"point", {s.point.x[0], s.point.y[0], s.point.t}},
                             {"laplacian_v", s.laplacian_v},
                             {"laplacian_w", s.laplacian_w},
                             {"residual", s.residual},
                             {"residual_coarse", s.residual_coarse},
                             {"error_estimate", s.error_estimate},
                             {"passed", s.passed}});
    }
    newton = Json{{"passed", pr.passed}, {"skipped_volume", pr.skipped_volume}, {"samples", samples}};
    newton_ok = pr.passed;
  }

  const bool seam_ok = seam <= 4.0 * st.truncation_residual && even >= 100.0 * st.truncation_residual;
  Json j = stage_json(st);
  j["R0"] = R0;
  j["epsilon"] = eig.epsilon;
  j["seam_residual"] = seam;
  j["off_seam_residual"] = off_seam;
  j["even_extension_seam_residual"] = even;
  j["seam_passed"] = seam_ok;
  j["newton_potential"] = newton;

  const fs::path dir = cfg.output / "construct";
  write_text(dir / "report.json", dump(j));
  write_field(dir / "u_half.csv", st.half.value);
  write_gap_field(dir / "u_full.csv", st.full);
  write_with(dir / "heatmap.svg", [&](std::ostream& os) {
    write_heatmap_svg(os, st.full.value, "u(r, t), R = " + label(st.R));
  });
  write_with(dir / "axis_profile.svg", [&](std::ostream& os) {
    write_line_svg(os, {axis_series(st.full.value, "R = " + label(st.R))}, "u(0, t)", "t", "u");
  });

  std::printf("R = %.17g iterations = %d fixed_point_gap = %.3g seam = %.3g truncation = %.3g\n", st.R,
              st.iteration.iterations, st.iteration.fixed_point_gap, seam, st.truncation_residual);
  return st.passed && seam_ok && newton_ok ? kOk : kInvariant;
}

int cmd_continue(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const Nonlinearity f = make_builtin(cfg.nonlinearity);
  const R0Selection sel = choose_R0(f, cfg.eigen_grid, cfg.eigen);
  const double eps = choose_epsilon(f, sel.pair);
  const double R0 = sel.R0;
  std::vector<double> schedule;
  for (double m : cfg.schedule) schedule.push_back(m * R0);

  ContinuationConfig cc;
  cc.monotone = cfg.monotone;
  cc.warm_start = cfg.warm_start;
  cc.jobs = ctx.jobs;
  const ContinuationResult res = run_continuation(f, sel.pair, eps, schedule, cc);

  Json stages = Json::array();
  for (const auto& st : res.stages) stages.push_back(stage_json(st));
  Json j{{"R0", R0},
         {"lambda0", sel.pair.lambda0},
         {"epsilon", eps},
         {"schedule", schedule},
         {"complete", res.complete},
         {"failure", res.failure},
         {"window", {res.window.r_lo, res.window.r_hi, res.window.t_lo, res.window.t_hi}},
         {"window_diffs", res.window_diffs},
         {"window_diffs_settle", window_diffs_settle(res.window_diffs)},
         {"stages", stages}};

  const fs::path dir = cfg.output / "continue";
  for (std::size_t k = 0; k < res.stages.size(); ++k) {
    write_gap_field(dir / ("u_R" + std::to_string(k) + ".csv"), res.stages[k].full);
  }
  if (!res.complete) {
    write_text(dir / "report.json", dump(j));
    std::fprintf(stderr, "continuation stopped: %s\n", res.failure.c_str());
    const bool numeric = res.stages.empty() || res.stages.back().passed;
    return numeric ? kNumeric : kInvariant;
  }

  const ReflectedField& fin = res.final();
  const TMonotonicityReport tm = t_monotonicity_check(fin, cfg.solver.tolerance);
  j["t_monotonicity"] = Json{{"passed", tm.passed},
                             {"violations", tm.violations},
                             {"nonstrict_interior", tm.nonstrict_interior},
                             {"min_increment", tm.min_increment},
                             {"worst_node", {tm.worst_i, tm.worst_j}}};

  std::vector<double> probes;
  for (double r : cfg.probes) {
    if (r <= fin.value.grid().R) probes.push_back(r);
  }
  const FarfieldProfile fp = farfield_probe(res, probes);
  Json pj = Json::array();
  for (const auto& p : fp.probes) {
    pj.push_back(Json{{"r", p.r},
                      {"monotone", p.monotone},
                      {"odd", p.odd},
                      {"u_at_zero", p.u_at_zero},
                      {"u_late", p.u_late},
                      {"u_t_star", p.u_t_star},
                      {"cross_R_monotone", p.cross_R_monotone}});
  }
  j["farfield_probe"] = Json{{"t_star", fp.t_star}, {"passed", fp.passed}, {"probes", pj}};

  PlanarSampling ps;
  ps.pairs = cfg.planar.pairs;
  ps.seed = cfg.planar.seed;
  ps.r_max = R0;
  ps.t_max = R0 * R0;
  const double floor = 10.0 * res.stages.back().truncation_residual;
  const PlanarReport pr = planar_ansatz_test(as_group_function(fin.value), cfg.n,
                                             fibonacci_directions(cfg.n, cfg.planar.directions, cfg.planar.seed), ps);
  j["planar"] = planar_json(pr, floor);

  const bool passed = window_diffs_settle(res.window_diffs) && tm.passed && fp.passed && pr.min_spread > floor;
  j["passed"] = passed;
  write_text(dir / "report.json", dump(j));

  write_with(dir / "heatmap.svg", [&](std::ostream& os) {
    write_heatmap_svg(os, fin.value, "u(r, t), R = " + label(res.stages.back().R));
  });
  std::vector<SvgSeries> series;
  for (const auto& st : res.stages) series.push_back(axis_series(st.full.value, "R = " + label(st.R)));
  write_with(dir / "axis_profile.svg", [&](std::ostream& os) { write_line_svg(os, series, "u(0, t)", "t", "u"); });

  std::printf("R0 = %.17g stages = %zu min planar spread = %.3g (floor %.3g)\n", R0, res.stages.size(),
              pr.min_spread, floor);
  return passed ? kOk : kInvariant;
}

int cmd_farfield(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const Nonlinearity f = make_builtin(cfg.nonlinearity);
  const FarfieldSettings& ff = cfg.farfield;
  const DichotomyReport d = oscillation_certificate(f, cfg.n, ff.a_values, ff.rmax, ff.step);

  const fs::path dir = cfg.output / "farfield";
  Json cases = Json::array();
  std::vector<SvgSeries> series;
  bool passed = d.passed;
  for (const auto& oc : d.cases) {
    const RadialODESolution sol = integrate_radial(f, cfg.n, oc.a, ff.rmax, ff.step);
    const FirstIntegralReport fi = first_integral_check(sol, f);
    Json c{{"a", oc.a},
           {"verdict", oc.verdict},
           {"crossings", oc.crossings},
           {"first_crossing", oc.first_crossing},
           {"gaps_checked", oc.gaps_checked},
           {"worst_gap", oc.worst_gap},
           {"gaps_ok", oc.gaps_ok},
           {"blew_up", oc.blew_up},
           {"first_integral_defect", fi.max_defect},
           {"decreasing_before_crossing", fi.decreasing_before_crossing}};
    passed = passed && fi.max_defect <= 1e-6 && fi.decreasing_before_crossing;
    if (!sol.zero_crossings.empty()) {
      const RadialODESolution half = integrate_radial(f, cfg.n, oc.a, ff.rmax, 0.5 * ff.step);
      const double shift = half.zero_crossings.empty()
                               ? INFINITY
                               : std::abs(half.zero_crossings.front() - sol.zero_crossings.front());
      c["crossing_shift_under_halving"] = shift;
      passed = passed && shift <= 1e-3;
      const LiouvilleTrace tr = liouville_transform(sol, f);
      c["liouville_ode_residual"] = tr.ode_residual;
      c["liouville_reconstruction_error"] = tr.reconstruction_error;
    }
    cases.push_back(c);
    write_with(dir / ("ode_a" + label(oc.a) + ".csv"), [&](std::ostream& os) { write_ode_csv(os, sol, f); });
    series.push_back(SvgSeries{"a = " + label(oc.a), sol.r, sol.U});
  }
  const Json j{{"n", cfg.n},
               {"nonlinearity", f.name()},
               {"rmax", ff.rmax},
               {"step", ff.step},
               {"sturm_gap_bound", sturm_gap_bound(f.l())},
               {"liouville_coefficient", liouville_coefficient(cfg.n)},
               {"liouville_coefficient_dimension_form", liouville_coefficient_dimension_form(cfg.n)},
               {"cases", cases},
               {"passed", passed}};
  write_text(dir / "report.json", dump(j));
  write_with(dir / "profiles.svg", [&](std::ostream& os) { write_line_svg(os, series, "U(r)", "r", "U"); });
  std::printf("farfield: %zu cases, %s\n", d.cases.size(), passed ? "passed" : "FAILED");
  return passed ? kOk : kInvariant;
}

namespace {

struct Suite {
  std::string name;
  std::string target;
  bool passed = false;
  Json detail;
};

Suite group_suite(const VerifySettings& vs, int n) {
  std::mt19937_64 rng(vs.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> lam(0.25, 4.0);
  auto point = [&] {
    std::vector<double> x(n), y(n);
    for (auto& c : x) c = u(rng);
    for (auto& c : y) c = u(rng);
    return HeisenbergPoint::make(x, y, u(rng));
  };
  auto diff = [](const HeisenbergPoint& a, const HeisenbergPoint& b) {
    double d = std::abs(a.t - b.t);
    for (std::size_t k = 0; k < a.x.size(); ++k) {
      d = std::max({d, std::abs(a.x[k] - b.x[k]), std::abs(a.y[k] - b.y[k])});
    }
    return d;
  };
  double assoc = 0, inv = 0, dil = 0, hom = 0;
  const HeisenbergPoint e = HeisenbergPoint::identity(n);
  for (int k = 0; k < vs.group_samples; ++k) {
    const auto a = point(), b = point(), c = point();
    const double l = lam(rng);
    assoc = std::max(assoc, diff(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c))));
    inv = std::max({inv, diff(group_mul(a, group_inv(a)), e), diff(group_mul(group_inv(a), a), e)});
    dil = std::max(dil, diff(dilate(l, group_mul(a, b)), group_mul(dilate(l, a), dilate(l, b))) / (l * l));
    hom = std::max(hom, std::abs(koranyi_norm(dilate(l, a)) - l * koranyi_norm(a)) / l);
  }
  Suite s{"group_algebra", "hgroup", false, nullptr};
  s.detail = Json{{"samples", vs.group_samples},
                  {"associativity", assoc},
                  {"inverse", inv},
                  {"dilation", dil},
                  {"norm_homogeneity", hom}};
  s.passed = std::max({assoc, inv, dil, hom}) <= 1e-12;
  return s;
}

Suite operator_suite(int n) {
  const CylGrid g = CylGrid::half(n, 2.0, 33, 33);
  const CylOperator op(g);
  const Field one = Field::sample(g, [](double, double) { return 1.0; });
  const Field t = Field::sample(g, [](double, double tt) { return tt; });
  const Field r2 = Field::sample(g, [](double r, double) { return r * r; });
  const Field l1 = apply(op, one), lt = apply(op, t), lr = apply(op, r2);
  double e1 = 0, et = 0, er = 0;
  for (int j = 1; j < g.Nt - 1; ++j) {
    for (int i = 0; i < g.Nr - 1; ++i) {
      e1 = std::max(e1, std::abs(l1(i, j)));
      et = std::max(et, std::abs(lt(i, j)));
      er = std::max(er, std::abs(lr(i, j) - 4.0 * n));
    }
  }
  Suite s{"operator_exactness", "cylgrid", false, nullptr};
  s.detail = Json{{"constant", e1}, {"linear_t", et}, {"r_squared", er}};
  s.passed = std::max({e1, et, er}) <= 1e-10;
  return s;
}

std::vector<Suite> field_suites(const fs::path& path, const RunConfig& cfg, const Nonlinearity& f) {
  const std::string target = fs::relative(path, cfg.output).generic_string();
  std::ifstream in(path, std::ios::binary);
  Field value = read_field_csv(in, cfg.n);
  GapField v;
  if (fs::exists(gap_path(path))) {
    std::ifstream gin(gap_path(path), std::ios::binary);
    v = GapField{value, read_field_csv(gin, value.grid())};
  } else {
    v = GapField::from_value(value);
  }
  const CylGrid& g = value.grid();
  if (!g.is_full() || g.Nt % 2 == 0) throw DomainError(target + " is not a full-cylinder field");
  std::vector<Suite> out;

  const TMonotonicityReport tm = t_monotonicity_check(v, cfg.solver.tolerance);
  out.push_back({"t_monotonicity_check", target, tm.passed,
                 Json{{"violations", tm.violations},
                      {"nonstrict_interior", tm.nonstrict_interior},
                      {"min_increment", tm.min_increment},
                      {"worst_node", {tm.worst_i, tm.worst_j}}}});

  const int s = g.seam_row();
  int asym = 0;
  for (int j = 0; j <= s; ++j) {
    for (int i = 0; i < g.Nr; ++i) asym += value(i, s + j) != -value(i, s - j);
  }
  out.push_back({"odd_symmetry", target, asym == 0, Json{{"asymmetric_nodes", asym}}});

  double over = 0.0;
  for (std::size_t k = 0; k < value.values().size(); ++k) {
    over = std::max({over, std::abs(value.values()[k]) - 1.0, -v.gap.values()[k]});
  }
  out.push_back({"bounds", target, over <= 10.0 * cfg.solver.tolerance, Json{{"max_excess", over}}});

  const CylOperator op(g);
  const double off = off_seam_residual(value, f, op);
  out.push_back({"equation_residual", target, off <= cfg.verify.residual_tol,
                 Json{{"max_residual", off}, {"tolerance", cfg.verify.residual_tol}}});

  const double trunc = extrapolated_residual(op, value, f);
  const double seam = seam_residual(value, f, op);
  out.push_back({"seam_residual", target, seam <= 4.0 * trunc,
                 Json{{"seam_residual", seam}, {"truncation_residual", trunc}}});

  PlanarSampling ps;
  ps.pairs = cfg.planar.pairs;
  ps.seed = cfg.planar.seed;
  ps.r_max = 0.5 * g.R;
  ps.t_max = 0.25 * g.R * g.R;
  const PlanarReport pr = planar_ansatz_test(as_group_function(value), cfg.n,
                                             fibonacci_directions(cfg.n, cfg.planar.directions, cfg.planar.seed), ps);
  out.push_back({"planar_ansatz_test", target, pr.min_spread > 10.0 * trunc,
                 Json{{"min_spread", pr.min_spread}, {"noise_floor", 10.0 * trunc}}});
  return out;
}

}  // namespace

int cmd_verify(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const Nonlinearity f = make_builtin(cfg.nonlinearity);
  std::vector<Suite> suites;
  suites.push_back(group_suite(cfg.verify, cfg.n));
  suites.push_back(operator_suite(cfg.n));

  std::vector<fs::path> fields;
  if (fs::exists(cfg.output / "construct" / "u_full.csv")) fields.push_back(cfg.output / "construct" / "u_full.csv");
  if (fs::is_directory(cfg.output / "continue")) {
    std::vector<fs::path> found;
    for (const auto& e : fs::directory_iterator(cfg.output / "continue")) {
      const std::string name = e.path().filename().string();
      if (name.rfind("u_R", 0) == 0 && name.find("_gap") == std::string::npos && e.path().extension() == ".csv") {
        found.push_back(e.path());
      }
    }
    std::sort(found.begin(), found.end());
    fields.insert(fields.end(), found.begin(), found.end());
  }
  for (const auto& p : fields) {
    for (auto& s : field_suites(p, cfg, f)) suites.push_back(std::move(s));
  }

  bool passed = true;
  Json sj = Json::array();
  for (const auto& s : suites) {
    passed = passed && s.passed;
    sj.push_back(Json{{"name", s.name}, {"target", s.target}, {"passed", s.passed}, {"detail", s.detail}});
    if (!s.passed) std::fprintf(stderr, "FAILED %s (%s)\n", s.name.c_str(), s.target.c_str());
  }
  const Json j{{"fields", fields.size()}, {"passed", passed}, {"suites", sj}};
  write_text(cfg.output / "verify" / "report.json", dump(j));
  std::printf("verify: %zu suites over %zu fields, %s\n", suites.size(), fields.size(), passed ? "passed" : "FAILED");
  return passed ? kOk : kInvariant;
}

}  // namespace hkink::cli

#include "hkink/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

#include "hkink/error.hpp"

namespace hkink {

CylGrid working_grid(const EigenPair& pair, double R, int refine) {
  const CylGrid& eg = pair.grid();
  if (refine < 1) throw DomainError("refinement factor must be >= 1");
  if (R < eg.R * (1.0 - 1e-12)) throw DomainError("working radius below R0");
  const double hr = eg.hr() / refine;
  const double ht = eg.ht() / refine;
  const int Nr = static_cast<int>(std::llround(R / hr)) + 1;
  const int Nt = static_cast<int>(std::llround(R * R / ht)) + 1;
  return CylGrid::half(eg.n, R, Nr, Nt);
}

namespace {

bool odd_bitwise(const Field& v) {
  const CylGrid& g = v.grid();
  const int s = g.seam_row();
  for (int j = 0; j <= s; ++j) {
    for (int i = 0; i < g.Nr; ++i) {
      if (v(i, s + j) != -v(i, s - j)) return false;
    }
  }
  return true;
}

void finish_stage(StageResult& st, const Nonlinearity& f, const ShiftedMap& T, const Field& v0,
                  const MonotoneConfig& cfg) {
  const double tol = cfg.solver.tolerance;
  st.truncation_residual = extrapolated_residual(T.op(), st.half.value, f);
  st.full = odd_reflect(st.half);
  st.odd = odd_bitwise(st.full.value);

  st.bounded = true;
  for (std::size_t k = 0; k < st.full.value.values().size(); ++k) {
    const double v = st.full.value.values()[k];
    if (!(std::abs(v) <= 1.0 + 10.0 * tol) || st.full.gap.values()[k] < -10.0 * tol) st.bounded = false;
  }
  st.barrier_margin = INFINITY;
  for (std::size_t k = 0; k < v0.values().size(); ++k) {
    st.barrier_margin = std::min(st.barrier_margin, st.half.value.values()[k] - v0.values()[k]);
  }
  st.above_barrier = st.barrier_margin >= -10.0 * tol;

  const IterationReport& it = st.iteration;
  const bool fixed = it.converged && it.fixed_point_gap <= cfg.tol_fix + 2.0 * tol;
  const bool ordered = st.warm_started || (it.ordering_violation <= 10.0 * tol && st.subsolution.passed);
  st.passed = fixed && ordered && it.bounds_violation <= 10.0 * tol && st.odd && st.bounded &&
              st.above_barrier;
}

StageResult run_stage(const Nonlinearity& f, const EigenPair& pair, double epsilon, double R,
                      const MonotoneConfig& cfg, int refine, const GapField* warm) {
  StageResult st;
  st.R = R;
  const CylGrid grid = working_grid(pair, R, refine);
  const ShiftedMap T(grid, f, cfg.solver);
  const Field v0 = barrier_v0(pair, epsilon, grid);
  st.subsolution = subsolution_check(v0, T(v0), cfg.solver.tolerance);

  MonotoneResult res;
  if (warm) {
    st.warm_started = true;
    GapField start{warm->value.resample(grid, 0.0), warm->gap.resample(grid, 1.0)};
    for (auto& v : start.value.values()) v = std::clamp(v, 0.0, 1.0);
    for (auto& v : start.gap.values()) v = std::clamp(v, 0.0, 1.0);
    res = iterate_from(T, std::move(start), cfg);
  } else {
    res = iterate(T, v0, cfg);
  }
  st.half = std::move(res.solution);
  st.iteration = std::move(res.report);
  finish_stage(st, f, T, v0, cfg);
  return st;
}

std::string describe_failure(const StageResult& st) {
  std::ostringstream os;
  os << "stage R = " << st.R << " failed:";
  if (!st.iteration.converged) os << " not converged;";
  if (!st.subsolution.passed && !st.warm_started) os << " barrier not a subsolution;";
  if (!st.odd) os << " not odd;";
  if (!st.bounded) os << " out of bounds;";
  if (!st.above_barrier) os << " below barrier;";
  return os.str();
}

}  // namespace

StageResult construct(const Nonlinearity& f, const EigenPair& pair, double epsilon, double R,
                      const MonotoneConfig& cfg, int refine) {
  return run_stage(f, pair, epsilon, R, cfg, refine, nullptr);
}

const ReflectedField& ContinuationResult::final() const {
  if (stages.empty()) throw DomainError("continuation produced no stage");
  return stages.back().full;
}

ContinuationResult run_continuation(const Nonlinearity& f, const EigenPair& pair, double epsilon,
                                    const std::vector<double>& schedule,
                                    const ContinuationConfig& cfg) {
  const double R0 = pair.grid().R;
  if (schedule.empty()) throw DomainError("empty schedule");
  if (schedule.front() < R0 * (1.0 - 1e-12)) throw DomainError("schedule starts below R0");
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    if (!(schedule[k] > schedule[k - 1])) throw DomainError("schedule must be strictly increasing");
  }
  if (cfg.jobs < 1) throw DomainError("jobs must be >= 1");

  ContinuationResult out;
  out.R0 = R0;
  out.epsilon = epsilon;
  out.schedule = schedule;
  out.window = cfg.window.value_or(Window{0.0, R0, -R0 * R0, R0 * R0});

  auto fail = [&](const std::string& msg) {
    out.failure = msg;
    return out;
  };

  if (cfg.warm_start || cfg.jobs == 1) {
    for (std::size_t k = 0; k < schedule.size(); ++k) {
      const GapField* warm = cfg.warm_start && k > 0 ? &out.stages.back().half : nullptr;
      StageResult st;
      try {
        st = run_stage(f, pair, epsilon, schedule[k], cfg.monotone, cfg.refine, warm);
      } catch (const Error& e) {
        return fail(e.what());
      }
      const bool ok = st.passed;
      out.stages.push_back(std::move(st));
      if (!ok) return fail(describe_failure(out.stages.back()));
    }
  } else {
    std::vector<std::optional<StageResult>> done(schedule.size());
    std::string error;
    for (std::size_t base = 0; base < schedule.size(); base += static_cast<std::size_t>(cfg.jobs)) {
      std::vector<std::future<StageResult>> batch;
      const std::size_t end = std::min(schedule.size(), base + static_cast<std::size_t>(cfg.jobs));
      for (std::size_t k = base; k < end; ++k) {
        batch.push_back(std::async(std::launch::async, [&, k] {
          return run_stage(f, pair, epsilon, schedule[k], cfg.monotone, cfg.refine, nullptr);
        }));
      }
      for (std::size_t k = base; k < end; ++k) {
        try {
          done[k] = batch[k - base].get();
        } catch (const Error& e) {
          if (error.empty()) error = e.what();
        }
      }
    }
    for (auto& st : done) {
      if (!st) return fail(error);
      const bool ok = st->passed;
      out.stages.push_back(std::move(*st));
      if (!ok) return fail(describe_failure(out.stages.back()));
    }
  }

  const Field& ref = out.stages.front().full.value;
  const CylGrid& rg = ref.grid();
  std::vector<std::pair<double, double>> nodes;
  for (int j = 0; j < rg.Nt; ++j) {
    for (int i = 0; i < rg.Nr; ++i) {
      if (out.window.contains(rg.r(i), rg.t(j))) nodes.emplace_back(rg.r(i), rg.t(j));
    }
  }
  for (std::size_t k = 1; k < out.stages.size(); ++k) {
    const Field& a = out.stages[k - 1].full.value;
    const Field& b = out.stages[k].full.value;
    double d = 0.0;
    for (const auto& [r, t] : nodes) d = std::max(d, std::abs(b.interpolate(r, t) - a.interpolate(r, t)));
    out.window_diffs.push_back(d);
  }
  out.complete = true;
  return out;
}

bool window_diffs_settle(const std::vector<double>& diffs) {
  int inversions = 0;
  for (std::size_t k = 1; k < diffs.size(); ++k) {
    if (diffs[k] > diffs[k - 1]) {
      ++inversions;
      if (diffs[k] - diffs[k - 1] > 0.1 * diffs[k]) return false;
    }
  }
  return inversions <= 1;
}

TMonotonicityReport t_monotonicity_check(const GapField& v, double tolerance) {
  const CylGrid& g = v.value.grid();
  require_same_grid(g, v.gap.grid());
  TMonotonicityReport rep;
  rep.min_increment = INFINITY;
  for (int j = 0; j + 1 < g.Nt; ++j) {
    for (int i = 0; i < g.Nr; ++i) {
      const double d = v.t_increment(i, j);
      if (d < -10.0 * tolerance) ++rep.violations;
      if (i == g.Nr - 1) continue;
      if (!(d > 0.0)) ++rep.nonstrict_interior;
      if (d < rep.min_increment) {
        rep.min_increment = d;
        rep.worst_i = i;
        rep.worst_j = j;
      }
    }
  }
  rep.passed = rep.violations == 0 && rep.nonstrict_interior == 0;
  return rep;
}

bool eta_convexity_check(const DomainPredicate& inside, const HeisenbergPoint& eta,
                         const std::vector<HeisenbergPoint>& samples,
                         const std::vector<double>& alphas, int subdivisions) {
  if (subdivisions < 1) throw DomainError("subdivisions must be >= 1");
  auto shifted = [&](double s, const HeisenbergPoint& xi) {
    HeisenbergPoint se = eta;
    for (auto& c : se.x) c *= s;
    for (auto& c : se.y) c *= s;
    se.t *= s;
    return group_mul(se, xi);
  };
  for (const auto& xi : samples) {
    if (!inside(xi)) continue;
    for (const double alpha : alphas) {
      if (!(alpha > 0.0) || !inside(shifted(alpha, xi))) continue;
      for (int k = 1; k < subdivisions; ++k) {
        if (!inside(shifted(alpha * k / subdivisions, xi))) return false;
      }
    }
  }
  return true;
}

DomainPredicate half_cylinder(const CylGrid& grid) {
  const double R = grid.R;
  return [R](const HeisenbergPoint& p) {
    return p.z_norm_sq() < R * R && p.t > 0.0 && p.t < R * R;
  };
}

GroupFunction as_group_function(const Field& v) {
  return [v](const HeisenbergPoint& p) { return v.interpolate(std::sqrt(p.z_norm_sq()), p.t); };
}

FarfieldProfile farfield_probe(const ContinuationResult& result, const std::vector<double>& r_probe,
                               std::optional<double> t_star) {
  const ReflectedField& fin = result.final();
  const CylGrid& g = fin.value.grid();
  FarfieldProfile out;
  out.t_star = t_star.value_or(result.R0 * result.R0);
  out.passed = true;
  for (const double r : r_probe) {
    if (!(r >= 0.0 && r <= g.R)) throw DomainError("probe radius outside the final grid");
    ProbeProfile p;
    p.r = r;
    const double x = r / g.hr();
    const int i = std::min(static_cast<int>(x), g.Nr - 2);
    const double a = x - i;
    auto column = [&](const Field& f, int j) {
      return a == 0.0 ? f(i, j) : (1.0 - a) * f(i, j) + a * f(i + 1, j);
    };
    p.monotone = true;
    for (int j = 0; j < g.Nt; ++j) {
      p.t.push_back(g.t(j));
      p.u.push_back(column(fin.value, j));
      if (j + 1 < g.Nt) {
        const double d = a == 0.0 ? fin.t_increment(i, j)
                                  : (1.0 - a) * fin.t_increment(i, j) + a * fin.t_increment(i + 1, j);
        if (!(d > 0.0) && r < g.R) p.monotone = false;
      }
    }
    const int s = g.seam_row();
    p.odd = true;
    for (int j = 0; j <= s; ++j) {
      if (p.u[s + j] != -p.u[s - j]) p.odd = false;
    }
    p.u_at_zero = p.u[s];
    p.u_late = fin.value.interpolate(r, 0.9 * g.t_max);
    if (p.u_late >= 0.5) p.u_late = 1.0 - fin.gap.interpolate(r, 0.9 * g.t_max);

    p.cross_R_monotone = true;
    for (const auto& st : result.stages) {
      if (!st.full.value.grid().contains(r, out.t_star)) continue;
      const double v = st.full.value.interpolate(r, out.t_star);
      if (!p.u_t_star.empty() && v < p.u_t_star.back()) p.cross_R_monotone = false;
      p.u_t_star.push_back(v);
    }
    const bool ok = p.monotone && p.odd && p.u_at_zero == 0.0 && p.u_late > 0.0 && p.u_late <= 1.0 &&
                    p.cross_R_monotone;
    out.passed = out.passed && ok;
    out.probes.push_back(std::move(p));
  }
  return out;
}

std::vector<PlanarDirection> fibonacci_directions(int n, int count, std::uint64_t seed) {
  if (n < 1 || count < 1) throw DomainError("need n >= 1 and count >= 1");
  std::vector<PlanarDirection> out;
  out.reserve(count);
  if (n == 1) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double nu = 1.0 - (k + 0.5) / count;
      const double rho = std::sqrt(1.0 - nu * nu);
      const double phi = golden * k;
      out.push_back({{rho * std::cos(phi), rho * std::sin(phi)}, nu});
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> v(2 * n + 1);
    double norm = 0.0;
    for (auto& c : v) {
      c = normal(rng);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0 || v.back() == 0.0) continue;
    PlanarDirection d;
    for (int k = 0; k < 2 * n; ++k) d.alpha.push_back(v[k] / norm);
    d.nu = std::abs(v.back()) / norm;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<PlanarDirection> boundary_directions(int n) {
  std::vector<PlanarDirection> out;
  for (int k = 0; k < 2 * n; ++k) {
    PlanarDirection d;
    d.alpha.assign(2 * n, 0.0);
    d.alpha[k] = 1.0;
    out.push_back(std::move(d));
  }
  return out;
}

PlanarReport planar_ansatz_test(const GroupFunction& u, int n,
                                const std::vector<PlanarDirection>& directions,
                                const PlanarSampling& sampling) {
  if (directions.empty()) throw DomainError("no planar directions");
  if (sampling.pairs < 1) throw DomainError("no level samples");
  if (!(sampling.r_max > 0.0 && sampling.t_max > 0.0)) throw DomainError("empty sampling region");
  const int m = 2 * n;
  // coordinates in a box inscribed in the ball |z| <= r_max
  const double box = sampling.r_max / std::sqrt(static_cast<double>(m));
  std::mt19937_64 rng(sampling.seed);
  std::uniform_real_distribution<double> coord(-box, box);
  std::uniform_real_distribution<double> time(-sampling.t_max, sampling.t_max);

  auto point = [&](const std::vector<double>& z, double t) {
    return HeisenbergPoint::make({z.begin(), z.begin() + n}, {z.begin() + n, z.end()}, t);
  };
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += a[k] * b[k];
    return s;
  };
  // largest s in [0, 1] keeping z + s d inside the box
  auto fit = [&](const std::vector<double>& z, const std::vector<double>& d) {
    double s = 1.0;
    for (int k = 0; k < m; ++k) {
      if (d[k] > 0.0) s = std::min(s, (box - z[k]) / d[k]);
      if (d[k] < 0.0) s = std::min(s, (-box - z[k]) / d[k]);
    }
    return std::max(s, 0.0);
  };

  PlanarReport rep;
  rep.min_spread = INFINITY;
  for (std::size_t q = 0; q < directions.size(); ++q) {
    const PlanarDirection& dir = directions[q];
    if (static_cast<int>(dir.alpha.size()) != m) throw DimensionError("direction dimension differs from 2n");
    const double a2 = dot(dir.alpha, dir.alpha);
    if (a2 == 0.0 && dir.nu == 0.0) throw DomainError("degenerate planar direction");
    if (dir.nu < 0.0) throw DomainError("nu must be nonnegative");

    DirectionSpread ds;
    ds.direction = dir;
    for (int k = 0; k < sampling.pairs; ++k) {
      std::vector<double> z(m), w(m), d(m);
      for (auto& c : z) c = coord(rng);
      for (auto& c : w) c = coord(rng);
      const double t = time(rng);
      for (int c = 0; c < m; ++c) d[c] = w[c] - z[c];
      double t2;
      if (dir.nu > 0.0) {
        // keep alpha . z + nu t fixed: t' = t - alpha . d / nu
        const double dt = -dot(dir.alpha, d) / dir.nu;
        double s = 1.0;
        if (t + dt > sampling.t_max) s = (sampling.t_max - t) / dt;
        if (t + dt < -sampling.t_max) s = (-sampling.t_max - t) / dt;
        for (auto& c : d) c *= s;
        t2 = t + s * dt;
      } else {
        const double p = dot(dir.alpha, d) / a2;
        for (int c = 0; c < m; ++c) d[c] -= p * dir.alpha[c];
        const double s = fit(z, d);
        for (auto& c : d) c *= s;
        t2 = time(rng);
      }
      for (int c = 0; c < m; ++c) w[c] = std::clamp(z[c] + d[c], -box, box);
      ds.spread = std::max(ds.spread, std::abs(u(point(z, t)) - u(point(w, t2))));
      ++ds.pairs;
    }
    if (ds.spread < rep.min_spread) {
      rep.min_spread = ds.spread;
      rep.argmin = q;
    }
    rep.spreads.push_back(std::move(ds));
  }
  return rep;
}

}  // namespace hkink

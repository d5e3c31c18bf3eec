#include "hkink/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hkink/error.hpp"

namespace hkink {

Field barrier_v0(const EigenPair& pair, double epsilon, const CylGrid& grid) {
  const CylGrid& eg = pair.grid();
  if (eg.n != grid.n) throw DimensionError("barrier and working grid differ in n");
  if (grid.t_min != 0.0 || grid.R < eg.R * (1.0 - 1e-12) || grid.t_max < eg.t_max * (1.0 - 1e-12)) {
    throw DimensionError("working grid must contain D_{R0}^+");
  }
  Field v0(grid);
  for (int j = 0; j < grid.Nt; ++j) {
    for (int i = 0; i < grid.Nr; ++i) {
      const double r = grid.r(i);
      const double t = grid.t(j);
      if (eg.contains(r, t)) v0(i, j) = epsilon * pair.phi0.interpolate(r, t);
    }
  }
  return v0;
}

ShiftedMap::ShiftedMap(const CylGrid& grid, Nonlinearity f, SolveConfig cfg)
    : f_(std::move(f)),
      cfg_(cfg),
      bc_(BoundaryData::psi(grid.R)),
      gap_bc_(BoundaryData::psi_gap(grid.R)),
      system_(CylOperator(grid), f_.shift(), cfg) {
  if (grid.t_min != 0.0) throw DomainError("the map T acts on half-cylinder grids");
}

namespace {

double clamp_unit(double v, double slack) {
  if (v < -slack || v > 1.0 + slack || !std::isfinite(v)) {
    std::ostringstream os;
    os << "T applied to a value outside [0, 1]: " << v;
    throw DomainError(os.str());
  }
  return std::clamp(v, 0.0, 1.0);
}

// (u, 1 - u) trusted in the regime where each member is the small one
struct Pair {
  double value;
  double gap;
};

Pair canonical(const GapField& v, std::size_t k, double slack) {
  const double u = v.value.values()[k];
  if (u <= 0.5) {
    const double c = clamp_unit(u, slack);
    return {c, 1.0 - c};
  }
  const double w = clamp_unit(v.gap.values()[k], slack);
  return {1.0 - w, w};
}

}  // namespace

Field ShiftedMap::operator()(const Field& v) const {
  const CylGrid& g = op().grid();
  require_same_grid(g, v.grid());
  const double slack = 10.0 * cfg_.tolerance;
  Field rhs(g);
  for (std::size_t k = 0; k < rhs.values().size(); ++k) {
    rhs.values()[k] = -f_.g(clamp_unit(v.values()[k], slack));
  }
  return system_.solve(bc_, rhs);
}

GapField ShiftedMap::operator()(const GapField& v) const {
  const CylGrid& g = op().grid();
  require_same_grid(g, v.value.grid());
  require_same_grid(g, v.gap.grid());
  const double slack = 10.0 * cfg_.tolerance;
  const double M = f_.shift();
  Field rhs_value(g);
  Field rhs_gap(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Pair p = canonical(v, k, slack);
    rhs_value.values()[k] = -f_.g(p.value);
    rhs_gap.values()[k] = f_.near_one(p.gap) - M * p.gap;
  }
  return GapField{system_.solve(bc_, rhs_value), system_.solve(gap_bc_, rhs_gap)};
}

double gap_sup_distance(const GapField& a, const GapField& b) {
  require_same_grid(a.value.grid(), b.value.grid());
  double worst = 0.0;
  const auto& av = a.value.values();
  const auto& bv = b.value.values();
  for (std::size_t k = 0; k < av.size(); ++k) {
    double d;
    if (av[k] >= 0.5 && bv[k] >= 0.5) {
      d = std::abs(a.gap.values()[k] - b.gap.values()[k]);
    } else if (av[k] <= -0.5 && bv[k] <= -0.5) {
      d = std::abs(a.gap.values()[k] - b.gap.values()[k]);
    } else {
      d = std::abs(av[k] - bv[k]);
    }
    worst = std::max(worst, d);
  }
  return worst;
}

SubsolutionReport subsolution_check(const Field& v0, const Field& u1, double tolerance) {
  require_same_grid(v0.grid(), u1.grid());
  const CylGrid& g = v0.grid();
  SubsolutionReport rep;
  rep.worst_margin = INFINITY;
  for (int j = 0; j < g.Nt; ++j) {
    for (int i = 0; i < g.Nr; ++i) {
      const double m = u1(i, j) - v0(i, j);
      if (m < rep.worst_margin) {
        rep.worst_margin = m;
        rep.worst_i = i;
        rep.worst_j = j;
      }
    }
  }
  rep.passed = rep.worst_margin >= -10.0 * tolerance;
  return rep;
}

namespace {

// max (a - b)_+ in the trusted representation
double ordering_excess(const GapField& a, const GapField& b) {
  double worst = 0.0;
  const auto& av = a.value.values();
  const auto& bv = b.value.values();
  for (std::size_t k = 0; k < av.size(); ++k) {
    double d;
    if (av[k] >= 0.5 && bv[k] >= 0.5) {
      d = b.gap.values()[k] - a.gap.values()[k];
    } else {
      d = av[k] - bv[k];
    }
    worst = std::max(worst, d);
  }
  return worst;
}

double bounds_excess(const GapField& v) {
  double worst = 0.0;
  for (std::size_t k = 0; k < v.value.values().size(); ++k) {
    worst = std::max({worst, -v.value.values()[k], -v.gap.values()[k]});
  }
  return worst;
}

MonotoneResult run(const ShiftedMap& T, GapField v, const MonotoneConfig& cfg) {
  MonotoneResult out;
  IterationReport& rep = out.report;
  rep.bounds_violation = bounds_excess(v);
  for (int k = 1; k <= cfg.kmax; ++k) {
    GapField next = T(v);
    const double diff = gap_sup_distance(next, v);
    rep.sup_diffs.push_back(diff);
    rep.ordering_violation = std::max(rep.ordering_violation, ordering_excess(v, next));
    rep.bounds_violation = std::max(rep.bounds_violation, bounds_excess(next));
    rep.iterations = k;
    v = std::move(next);
    if (diff < cfg.tol_fix) {
      rep.converged = true;
      break;
    }
  }
  const GapField probe = T(v);
  rep.fixed_point_gap = gap_sup_distance(probe, v);
  rep.final_residual = residual(T.op(), v.value, T.f());
  out.solution = std::move(v);
  return out;
}

}  // namespace

MonotoneResult iterate(const ShiftedMap& T, const Field& v0, const MonotoneConfig& cfg) {
  return run(T, GapField::from_value(v0), cfg);
}

MonotoneResult iterate_from(const ShiftedMap& T, GapField start, const MonotoneConfig& cfg) {
  return run(T, std::move(start), cfg);
}

}  // namespace hkink

#include "hkink/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hkink/error.hpp"

namespace hkink {

namespace {

struct State {
  double U;
  double dU;
};

State rhs(const Nonlinearity& f, int n, double r, const State& s) {
  return {s.dU, -(2.0 * n - 1.0) / r * s.dU - f(s.U)};
}

State rk4(const Nonlinearity& f, int n, double r, const State& s, double h) {
  const State k1 = rhs(f, n, r, s);
  const State k2 = rhs(f, n, r + 0.5 * h, {s.U + 0.5 * h * k1.U, s.dU + 0.5 * h * k1.dU});
  const State k3 = rhs(f, n, r + 0.5 * h, {s.U + 0.5 * h * k2.U, s.dU + 0.5 * h * k2.dU});
  const State k4 = rhs(f, n, r + h, {s.U + h * k3.U, s.dU + h * k3.dU});
  return {s.U + h / 6.0 * (k1.U + 2.0 * k2.U + 2.0 * k3.U + k4.U),
          s.dU + h / 6.0 * (k1.dU + 2.0 * k2.dU + 2.0 * k3.dU + k4.dU)};
}

// root of the cubic Hermite interpolant on [r0, r0 + h]
double hermite_root(double r0, double h, double u0, double d0, double u1, double d1) {
  auto p = [&](double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * u0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * u1 +
           (s3 - s2) * h * d1;
  };
  double lo = 0.0;
  double hi = 1.0;
  const double plo = p(lo);
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    if ((p(mid) > 0.0) == (plo > 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return r0 + 0.5 * (lo + hi) * h;
}

}  // namespace

RadialODESolution integrate_radial(const Nonlinearity& f, int n, double a, double rmax, double step) {
  if (n < 1) throw DomainError("Heisenberg index must be >= 1");
  if (!(step > 0.0)) throw DomainError("step must be positive");
  if (!(rmax > step)) throw DomainError("rmax must exceed one step");
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("a must lie in [0, 1]");

  RadialODESolution sol;
  sol.n = n;
  sol.a = a;
  sol.step = step;
  sol.f_label = f.name();
  const auto steps = static_cast<std::size_t>(std::llround(std::floor(rmax / step + 1e-9)));
  sol.r.reserve(steps + 1);
  sol.U.reserve(steps + 1);
  sol.dU.reserve(steps + 1);

  sol.r.push_back(0.0);
  sol.U.push_back(a);
  sol.dU.push_back(0.0);
  // 2n U''(0) = -f(a)
  const double fa = f(a);
  State s{a - fa * step * step / (4.0 * n), -fa * step / (2.0 * n)};
  sol.r.push_back(step);
  sol.U.push_back(s.U);
  sol.dU.push_back(s.dU);
  sol.last_valid_r = step;

  for (std::size_t k = 1; k < steps; ++k) {
    const double r = k * step;
    const State next = rk4(f, n, r, s, step);
    if (!std::isfinite(next.U) || std::abs(next.U) > 10.0) {
      sol.blew_up = true;
      break;
    }
    if ((s.U > 0.0 && next.U <= 0.0) || (s.U < 0.0 && next.U >= 0.0)) {
      sol.zero_crossings.push_back(
          next.U == 0.0 ? r + step : hermite_root(r, step, s.U, s.dU, next.U, next.dU));
    }
    s = next;
    sol.r.push_back((k + 1) * step);
    sol.U.push_back(s.U);
    sol.dU.push_back(s.dU);
    sol.last_valid_r = (k + 1) * step;
  }
  return sol;
}

FirstIntegralReport first_integral_check(const RadialODESolution& sol, const Nonlinearity& f) {
  FirstIntegralReport rep;
  const std::size_t N = sol.r.size();
  const double h = sol.step;
  const int p = 2 * sol.n - 1;
  std::vector<double> g(N);
  for (std::size_t k = 0; k < N; ++k) g[k] = std::pow(sol.r[k], p) * f(sol.U[k]);

  // running Simpson sums at even indices
  std::vector<double> even(N, 0.0);
  for (std::size_t k = 2; k < N; k += 2) {
    even[k] = even[k - 2] + h / 3.0 * (g[k - 2] + 4.0 * g[k - 1] + g[k]);
  }
  const double first_crossing =
      sol.zero_crossings.empty() ? INFINITY : sol.zero_crossings.front();

  for (std::size_t k = 1; k < N; ++k) {
    double integral;
    if (k % 2 == 0) {
      integral = even[k];
    } else if (k == 1) {
      integral = 0.5 * h * (g[0] + g[1]);
    } else {
      integral = even[k - 3] + 3.0 * h / 8.0 * (g[k - 3] + 3.0 * g[k - 2] + 3.0 * g[k - 1] + g[k]);
    }
    const double lhs = std::pow(sol.r[k], p) * sol.dU[k];
    const double d = std::abs(lhs + integral);
    if (d > rep.max_defect) {
      rep.max_defect = d;
      rep.worst_r = sol.r[k];
    }
    if (sol.r[k] < first_crossing && sol.U[k] > 0.0 && sol.U[k] < 1.0 && !(lhs < 0.0)) {
      rep.decreasing_before_crossing = false;
    }
  }
  return rep;
}

double liouville_coefficient(int n) {
  return -(2.0 * n - 1.0) * (2.0 * n - 3.0) / 4.0;
}

double liouville_coefficient_dimension_form(int n) {
  const double N = 2.0 * n;
  return (2.0 * n - 1.0) / 2.0 * (1.0 - (N - 1.0) / 2.0);
}

LiouvilleTrace liouville_transform(const RadialODESolution& sol, const Nonlinearity& f,
                                   double r_min) {
  LiouvilleTrace tr;
  tr.n = sol.n;
  const double e = (2.0 * sol.n - 1.0) / 2.0;
  const double c = liouville_coefficient(sol.n);
  const double stop = sol.zero_crossings.empty() ? INFINITY : sol.zero_crossings.front();
  for (std::size_t k = 1; k < sol.r.size(); ++k) {
    const double r = sol.r[k];
    if (r >= stop) break;
    const double U = sol.U[k];
    if (U == 0.0) throw DomainError("U vanishes inside the transform range");
    const double V = std::pow(r, e) * U;
    const double K = f(U) / U;
    tr.r.push_back(r);
    tr.V.push_back(V);
    tr.K.push_back(K);
    tr.H.push_back(K + c / (r * r));
    tr.reconstruction_error = std::max(tr.reconstruction_error, std::abs(std::pow(r, -e) * V - U));
  }
  if (tr.r.size() < 3) throw DomainError("too few samples before the first crossing");
  const double h2 = sol.step * sol.step;
  for (std::size_t k = 1; k + 1 < tr.r.size(); ++k) {
    if (tr.r[k] < r_min) continue;
    const double d2 = (tr.V[k + 1] - 2.0 * tr.V[k] + tr.V[k - 1]) / h2;
    tr.ode_residual = std::max(tr.ode_residual, std::abs(d2 + tr.H[k] * tr.V[k]));
  }
  return tr;
}

double sturm_gap_bound(double l) {
  if (!(l > 0.0)) throw DomainError("l must be positive");
  return std::numbers::pi / std::sqrt(0.5 * l);
}

DichotomyReport oscillation_certificate(const Nonlinearity& f, int n, const std::vector<double>& a_values,
                                        double rmax, double step) {
  DichotomyReport rep;
  rep.n = n;
  rep.rmax = rmax;
  rep.step = step;
  rep.passed = true;
  const double l = f.l();
  const double threshold = 0.9 * 0.5 * l;
  const double bound = 1.1 * sturm_gap_bound(l);
  const double cH = liouville_coefficient(n);

  for (const double a : a_values) {
    const RadialODESolution sol = integrate_radial(f, n, a, rmax, step);
    OscillationCase oc;
    oc.a = a;
    oc.blew_up = sol.blew_up;
    oc.crossings = static_cast<int>(sol.zero_crossings.size());
    const bool constant = std::all_of(sol.U.begin(), sol.U.end(), [&](double u) { return u == a; });

    if (a == 0.0 || a == 1.0) {
      oc.verdict = constant ? (a == 1.0 ? "fixed_point" : "trivial") : "inconclusive";
      rep.passed = rep.passed && constant;
      rep.cases.push_back(oc);
      continue;
    }

    auto H_at = [&](std::size_t k) {
      const double U = sol.U[k];
      const double K = U == 0.0 ? l : f(U) / U;
      return K + cH / (sol.r[k] * sol.r[k]);
    };
    oc.min_H = INFINITY;
    for (std::size_t k = 0; k < sol.r.size(); ++k) {
      if (sol.r[k] >= 1.0) oc.min_H = std::min(oc.min_H, H_at(k));
    }

    if (sol.zero_crossings.empty()) {
      oc.verdict = "inconclusive";
      rep.passed = false;
      rep.cases.push_back(oc);
      continue;
    }
    oc.verdict = "crossing";
    oc.first_crossing = sol.zero_crossings.front();
    for (std::size_t z = 1; z < sol.zero_crossings.size(); ++z) {
      const double lo = sol.zero_crossings[z - 1];
      const double hi = sol.zero_crossings[z];
      const auto k0 = static_cast<std::size_t>(std::ceil(lo / step));
      const auto k1 = std::min(sol.r.size() - 1, static_cast<std::size_t>(std::floor(hi / step)));
      bool above = k0 <= k1;
      for (std::size_t k = k0; k <= k1 && above; ++k) above = H_at(k) > threshold;
      if (!above) continue;
      ++oc.gaps_checked;
      oc.worst_gap = std::max(oc.worst_gap, hi - lo);
      if (hi - lo > bound) oc.gaps_ok = false;
    }
    rep.passed = rep.passed && oc.gaps_ok;
    rep.cases.push_back(oc);
  }
  return rep;
}

}  // namespace hkink

#include "hkink/eigenpair.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hkink/error.hpp"

namespace hkink {

double rayleigh_quotient(const CylOperator& op, const Field& phi) {
  const Field lphi = apply(op, phi);
  return -weighted_dot(op, lphi, phi) / weighted_dot(op, phi, phi);
}

namespace {

double weighted_norm(const CylOperator& op, const Field& u) {
  return std::sqrt(weighted_dot(op, u, u));
}

void normalize_sup(Field& u) {
  const double s = u.max();
  for (auto& v : u.values()) v /= s;
}

}  // namespace

EigenPair principal_eigenpair(const CylGrid& grid, const EigenConfig& cfg) {
  if (grid.t_min != 0.0) throw DomainError("principal_eigenpair expects a half-cylinder grid");
  const CylOperator op(grid);
  const ShiftedSystem system(op, 0.0, cfg.solver);
  const BoundaryData zero = BoundaryData::zero();
  const double R2 = grid.R * grid.R;

  Field phi = Field::sample(grid, [&](double r, double t) {
    return (1.0 - r / grid.R) * std::sin(std::numbers::pi * t / R2);
  });
  for (int j = 0; j < grid.Nt; ++j) {
    for (int i = 0; i < grid.Nr; ++i) {
      if (grid.dirichlet(i, j)) phi(i, j) = 0.0;
    }
  }
  normalize_sup(phi);

  double lambda = rayleigh_quotient(op, phi);
  EigenPair out;
  for (int k = 1; k <= cfg.max_iterations; ++k) {
    // -L w = phi  <=>  (L - 0) w = -phi
    Field rhs = phi;
    for (auto& v : rhs.values()) v = -v;
    Field w = system.solve(zero, rhs);

    for (int j = 1; j < grid.Nt - 1; ++j) {
      for (int i = 0; i < grid.Nr - 1; ++i) {
        if (!(w(i, j) > 0.0)) {
          std::ostringstream os;
          os << "inverse iterate lost positivity at node (" << i << ", " << j << ")";
          throw ConvergenceError(os.str(), w(i, j));
        }
      }
    }
    normalize_sup(w);
    phi = std::move(w);

    const double next = rayleigh_quotient(op, phi);
    const double change = std::abs(next - lambda) / std::abs(next);
    lambda = next;

    Field defect = apply(op, phi);
    for (std::size_t q = 0; q < defect.values().size(); ++q) {
      defect.values()[q] += lambda * phi.values()[q];
    }
    for (int j = 0; j < grid.Nt; ++j) {
      for (int i = 0; i < grid.Nr; ++i) {
        if (grid.dirichlet(i, j)) defect(i, j) = 0.0;
      }
    }
    const double res = weighted_norm(op, defect) / (lambda * weighted_norm(op, phi));
    out.iterations = k;
    out.rayleigh_residual = res;
    if (change < cfg.lambda_tol && res <= cfg.residual_tol) {
      out.lambda0 = lambda;
      out.phi0 = std::move(phi);
      return out;
    }
  }
  std::ostringstream os;
  os << "inverse power iteration did not converge in " << cfg.max_iterations
     << " steps (Rayleigh residual " << out.rayleigh_residual << ")";
  throw ConvergenceError(os.str(), out.rayleigh_residual);
}

CylGrid EigenGridPolicy::grid(double R) const {
  return CylGrid::half(n, R, intervals_r + 1, intervals_t + 1);
}

R0Selection choose_R0(const Nonlinearity& f, const EigenGridPolicy& policy,
                      const EigenConfig& cfg) {
  const double target = 0.5 * f.l();
  R0Selection sel;
  const EigenPair ref = principal_eigenpair(policy.grid(policy.R_ref), cfg);
  sel.lambda_ref = ref.lambda0;
  // lambda0(R) = lambda0(R_ref) (R_ref / R)^2, exactly for dilated meshes
  sel.predicted_R0 = policy.R_ref * std::sqrt(ref.lambda0 / target);
  double R0 = sel.predicted_R0 * (1.0 + 1e-6);
  if (R0 <= policy.R_ref && ref.lambda0 <= target) R0 = policy.R_ref;

  for (int d = 0; d <= 8; ++d) {
    EigenPair pair = principal_eigenpair(policy.grid(R0), cfg);
    if (pair.lambda0 <= target) {
      sel.R0 = R0;
      sel.doublings = d;
      sel.pair = std::move(pair);
      return sel;
    }
    R0 *= 2.0;
  }
  throw ConvergenceError("no R0 with lambda0 <= l/2 after 8 doublings", R0);
}

bool barrier_holds(const Nonlinearity& f, const EigenPair& pair, double epsilon, int* violations) {
  int count = 0;
  for (const double phi : pair.phi0.values()) {
    const double s = epsilon * phi;
    if (pair.lambda0 * s > f(s)) ++count;
  }
  if (violations) *violations = count;
  return count == 0;
}

double choose_epsilon(const Nonlinearity& f, const EigenPair& pair) {
  if (pair.lambda0 > 0.5 * f.l()) {
    throw DomainError("choose_epsilon requires lambda0 <= l/2");
  }
  const bool closed_form = f.name() == "cubic";
  double eps = closed_form ? std::sqrt(1.0 - pair.lambda0) : 0.5;
  auto bisect = [&](double good, double bad) {
    for (int k = 0; k < 50; ++k) {
      const double mid = 0.5 * (good + bad);
      if (barrier_holds(f, pair, mid)) {
        good = mid;
      } else {
        bad = mid;
      }
    }
    return good;
  };
  if (barrier_holds(f, pair, eps)) {
    return closed_form ? eps : bisect(eps, 1.0);
  }
  // the closed form can sit one rounding error above the admissible set
  double nudged = eps;
  for (int k = 0; k < 64; ++k) {
    nudged = std::nextafter(nudged, 0.0);
    if (barrier_holds(f, pair, nudged)) return nudged;
  }

  double bad = eps;
  double good = 0.0;
  for (int k = 0; k < 60; ++k) {
    eps *= 0.5;
    if (barrier_holds(f, pair, eps)) {
      good = eps;
      break;
    }
    bad = eps;
  }
  if (good == 0.0) throw ConvergenceError("no admissible barrier amplitude found", eps);
  return bisect(good, bad);
}

}  // namespace hkink

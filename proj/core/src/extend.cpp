#include "hkink/extend.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hkink/error.hpp"

namespace hkink {

namespace {

CylGrid full_of(const CylGrid& half) {
  if (half.is_full() || half.t_min != 0.0) throw DomainError("odd_reflect expects a half-cylinder field");
  CylGrid g = half;
  g.t_min = -half.t_max;
  g.Nt = 2 * half.Nt - 1;
  return g;
}

}  // namespace

ReflectedField odd_reflect(const GapField& half, double tolerance) {
  const CylGrid& h = half.value.grid();
  require_same_grid(h, half.gap.grid());
  const CylGrid g = full_of(h);
  for (int i = 0; i < h.Nr; ++i) {
    if (std::abs(half.value(i, 0)) > tolerance) {
      std::ostringstream os;
      os << "bottom row of the half field is not zero at r = " << h.r(i) << ": " << half.value(i, 0);
      throw DomainError(os.str());
    }
  }
  const int s = h.Nt - 1;
  ReflectedField out{Field(g), Field(g)};
  for (int j = 0; j < h.Nt; ++j) {
    for (int i = 0; i < h.Nr; ++i) {
      const double u = j == 0 ? 0.0 : half.value(i, j);
      const double w = j == 0 ? 1.0 : half.gap(i, j);
      out.value(i, s + j) = u;
      out.gap(i, s + j) = w;
      out.value(i, s - j) = -u;
      out.gap(i, s - j) = w;
    }
  }
  // -0.0 on the seam would compare equal but print differently
  for (int i = 0; i < g.Nr; ++i) out.value(i, s) = 0.0;
  return out;
}

ReflectedField odd_reflect(const Field& half, double tolerance) {
  return odd_reflect(GapField::from_value(half), tolerance);
}

Field even_reflect(const Field& half) {
  const CylGrid& h = half.grid();
  const CylGrid g = full_of(h);
  const int s = h.Nt - 1;
  Field out(g);
  for (int j = 0; j < h.Nt; ++j) {
    for (int i = 0; i < h.Nr; ++i) {
      out(i, s + j) = half(i, j);
      out(i, s - j) = half(i, j);
    }
  }
  return out;
}

namespace {

double row_residual(const Field& v, const Nonlinearity& f, const CylOperator& op, bool seam) {
  const CylGrid& g = op.grid();
  require_same_grid(g, v.grid());
  if (!g.is_full()) throw DomainError("seam residuals need a full-cylinder field");
  const int s = g.seam_row();
  double worst = 0.0;
  for (int j = 1; j < g.Nt - 1; ++j) {
    if ((j == s) != seam) continue;
    for (int i = 0; i < g.Nr - 1; ++i) {
      worst = std::max(worst, std::abs(op.apply_at(v, i, j) + f(v(i, j))));
    }
  }
  return worst;
}

}  // namespace

double seam_residual(const Field& v, const Nonlinearity& f, const CylOperator& op_full) {
  return row_residual(v, f, op_full, true);
}

double off_seam_residual(const Field& v, const Nonlinearity& f, const CylOperator& op_full) {
  return row_residual(v, f, op_full, false);
}

PotentialQuadrature PotentialQuadrature::halved() const {
  PotentialQuadrature q = *this;
  q.cells_r = std::max(1, cells_r / 2);
  q.cells_theta = std::max(4, cells_theta / 2);
  q.cells_t = std::max(2, cells_t / 2);
  return q;
}

double newton_potential(const std::function<double(double, double)>& source,
                        const HeisenbergPoint& xi, const PotentialQuadrature& quad,
                        double* skipped_volume) {
  if (xi.dim() != 1) throw DimensionError("newton_potential is implemented for n = 1");
  if (quad.cells_r < 1 || quad.cells_theta < 1 || quad.cells_t < 1 || !(quad.radius > 0.0)) {
    throw DomainError("invalid quadrature resolution");
  }
  const double c = GroupConstants::fundamental(1).c_q;
  const double rho = quad.radius;
  const double dr = rho / quad.cells_r;
  const double dth = 2.0 * std::numbers::pi / quad.cells_theta;
  const double dt = 2.0 * rho * rho / quad.cells_t;

  const double x = xi.x[0];
  const double y = xi.y[0];
  const double r_xi = std::hypot(x, y);
  double th_xi = std::atan2(y, x);
  if (th_xi < 0.0) th_xi += 2.0 * std::numbers::pi;

  std::vector<double> cs(quad.cells_theta), sn(quad.cells_theta);
  for (int b = 0; b < quad.cells_theta; ++b) {
    const double th = (b + 0.5) * dth;
    cs[b] = std::cos(th);
    sn[b] = std::sin(th);
  }

  double sum = 0.0;
  for (int a = 0; a < quad.cells_r; ++a) {
    const double rp = (a + 0.5) * dr;
    const bool r_hit = std::abs(r_xi - rp) <= 0.5 * dr;
    for (int k = 0; k < quad.cells_t; ++k) {
      const double tp = -rho * rho + (k + 0.5) * dt;
      const double s = source(rp, tp);
      if (s == 0.0) continue;
      const bool t_hit = std::abs(xi.t - tp) <= 0.5 * dt;
      const double vol = rp * dr * dth * dt;
      for (int b = 0; b < quad.cells_theta; ++b) {
        if (r_hit && t_hit) {
          const double th = (b + 0.5) * dth;
          double d = std::abs(th_xi - th);
          d = std::min(d, 2.0 * std::numbers::pi - d);
          // near the axis every angular cell touches the pole
          if (d <= 0.5 * dth || r_xi < dr) {
            if (skipped_volume) *skipped_volume += vol;
            continue;
          }
        }
        const double xp = rp * cs[b];
        const double yp = rp * sn[b];
        // xi'^{-1} o xi
        const double zx = x - xp;
        const double zy = y - yp;
        const double tt = xi.t - tp + 2.0 * (xp * y - x * yp);
        const double z2 = zx * zx + zy * zy;
        const double norm2 = std::sqrt(z2 * z2 + tt * tt);
        if (norm2 == 0.0) {
          if (skipped_volume) *skipped_volume += vol;
          continue;
        }
        sum += c / norm2 * s * vol;  // |.|^{2-Q} = |.|^{-2} for n = 1
      }
    }
  }
  return -sum;
}

PotentialReport newton_potential_check(const Field& v, const Nonlinearity& f,
                                       const std::vector<HeisenbergPoint>& samples,
                                       const PotentialQuadrature& quad, double floor) {
  const CylGrid& g = v.grid();
  if (g.n != 1) throw DimensionError("newton_potential_check is implemented for n = 1");
  if (!g.is_full()) throw DomainError("newton_potential_check expects a reflected field");
  if (quad.radius > g.R || quad.radius * quad.radius > g.t_max) {
    throw DomainError("quadrature cylinder leaves the grid");
  }
  const CylOperator op(g);
  const Field lv = apply(op, v);
  auto source = [&](double r, double t) { return f(v.interpolate(r, t)); };

  PotentialReport rep;
  rep.passed = true;
  const PotentialQuadrature coarse = quad.halved();
  for (const auto& p : samples) {
    if (p.dim() != 1) throw DimensionError("sample dimension differs from the field's");
    if (koranyi_norm(p) == 0.0) throw DomainError("sample at the pole");
    const double r = std::sqrt(p.z_norm_sq());
    PotentialSample s;
    s.point = p;
    s.laplacian_v = lv.interpolate(r, p.t);

    auto laplacian_w = [&](const PotentialQuadrature& q) {
      const double cell = std::max({q.radius / q.cells_r, 2.0 * q.radius * q.radius / q.cells_t,
                                    q.radius * 2.0 * std::numbers::pi / q.cells_theta});
      const double h = q.step_cells * cell;
      return apply_kohn(
          [&](const HeisenbergPoint& a) { return newton_potential(source, a, q); }, p, h);
    };
    double skipped = 0.0;
    newton_potential(source, p, quad, &skipped);
    s.laplacian_w = laplacian_w(quad);
    const double lw_coarse = laplacian_w(coarse);
    rep.skipped_volume = std::max(rep.skipped_volume, skipped);

    s.residual = s.laplacian_v + s.laplacian_w;
    s.residual_coarse = s.laplacian_v + lw_coarse;
    s.error_estimate = std::abs(s.residual - s.residual_coarse);
    s.passed = std::abs(s.residual) <= 2.0 * s.error_estimate + floor;
    rep.passed = rep.passed && s.passed;
    rep.samples.push_back(s);
  }
  return rep;
}

}  // namespace hkink

#include "hkink/hgroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hkink/error.hpp"

namespace hkink {

namespace {

void require_same_dim(const HeisenbergPoint& a, const HeisenbergPoint& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("Heisenberg index mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

}  // namespace

HeisenbergPoint HeisenbergPoint::make(std::vector<double> x, std::vector<double> y, double t) {
  if (x.empty() || x.size() != y.size()) {
    throw DimensionError("x and y must have equal length n >= 1");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(x.begin(), x.end(), finite) || !std::all_of(y.begin(), y.end(), finite) ||
      !std::isfinite(t)) {
    throw DomainError("Heisenberg point with non-finite coordinate");
  }
  return HeisenbergPoint{std::move(x), std::move(y), t};
}

HeisenbergPoint HeisenbergPoint::identity(int n) {
  if (n < 1) throw DimensionError("Heisenberg index must be >= 1");
  const auto un = static_cast<std::size_t>(n);
  return HeisenbergPoint{std::vector<double>(un, 0.0), std::vector<double>(un, 0.0), 0.0};
}

HeisenbergPoint HeisenbergPoint::planar(double x, double y, double t) {
  return make({x}, {y}, t);
}

double HeisenbergPoint::z_norm_sq() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * x[i] + y[i] * y[i];
  return s;
}

GroupConstants GroupConstants::unit(int n) {
  if (n < 1) throw DimensionError("Heisenberg index must be >= 1");
  return GroupConstants{n, 2 * n + 2, 1.0};
}

GroupConstants GroupConstants::fundamental(int n) {
  GroupConstants c = unit(n);
  const double g = std::tgamma(0.5 * n);
  c.c_q = std::pow(2.0, n - 4) * g * g / std::pow(std::numbers::pi, n + 1);
  return c;
}

HeisenbergPoint group_mul(const HeisenbergPoint& a, const HeisenbergPoint& b) {
  require_same_dim(a, b);
  HeisenbergPoint out = b;
  double twist = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    out.x[i] += a.x[i];
    out.y[i] += a.y[i];
    // Im(conj(z_b) z_a) = x_b y_a - y_b x_a
    twist += b.x[i] * a.y[i] - b.y[i] * a.x[i];
  }
  out.t = a.t + b.t + 2.0 * twist;
  return out;
}

HeisenbergPoint group_inv(const HeisenbergPoint& a) {
  HeisenbergPoint out = a;
  for (auto& v : out.x) v = -v;
  for (auto& v : out.y) v = -v;
  out.t = -a.t;
  return out;
}

HeisenbergPoint dilate(double lambda, const HeisenbergPoint& a) {
  if (!(lambda > 0.0)) throw DomainError("dilation factor must be positive");
  HeisenbergPoint out = a;
  for (auto& v : out.x) v *= lambda;
  for (auto& v : out.y) v *= lambda;
  out.t = lambda * lambda * a.t;
  return out;
}

double koranyi_norm(const HeisenbergPoint& a) {
  const double z2 = a.z_norm_sq();
  return std::pow(z2 * z2 + a.t * a.t, 0.25);
}

double distance(const HeisenbergPoint& a, const HeisenbergPoint& b) {
  require_same_dim(a, b);
  return koranyi_norm(group_mul(group_inv(b), a));
}

double gamma(const HeisenbergPoint& a, const GroupConstants& c) {
  if (a.dim() != c.n) throw DimensionError("group constants built for a different n");
  const double rho = koranyi_norm(a);
  if (rho == 0.0) throw DomainError("fundamental solution evaluated at its pole");
  return c.c_q * std::pow(rho, 2 - c.Q);
}

double default_kohn_step(const HeisenbergPoint& a) {
  return std::max(1e-3 * koranyi_norm(a), 1e-5);
}

double apply_kohn(const GroupFunction& fn, const HeisenbergPoint& a, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");

  auto eval = [&](const HeisenbergPoint& p) {
    const double v = fn(p);
    if (!std::isfinite(v)) throw DomainError("non-finite function value in apply_kohn");
    return v;
  };

  const double f0 = eval(a);
  const double h2 = h * h;

  double f_tp, f_tm;
  {
    HeisenbergPoint p = a;
    p.t = a.t + h;
    f_tp = eval(p);
    p.t = a.t - h;
    f_tm = eval(p);
  }
  const double d_tt = (f_tp - 2.0 * f0 + f_tm) / h2;

  double sum = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    const double xi = a.x[i];
    const double yi = a.y[i];

    // second derivatives along x_i and y_i
    auto along = [&](std::vector<double> HeisenbergPoint::*coord, double dc, double dt) {
      HeisenbergPoint p = a;
      (p.*coord)[i] += dc;
      p.t += dt;
      return eval(p);
    };
    const double d_xx =
        (along(&HeisenbergPoint::x, h, 0.0) - 2.0 * f0 + along(&HeisenbergPoint::x, -h, 0.0)) / h2;
    const double d_yy =
        (along(&HeisenbergPoint::y, h, 0.0) - 2.0 * f0 + along(&HeisenbergPoint::y, -h, 0.0)) / h2;
    const double d_xt =
        (along(&HeisenbergPoint::x, h, h) - along(&HeisenbergPoint::x, h, -h) -
         along(&HeisenbergPoint::x, -h, h) + along(&HeisenbergPoint::x, -h, -h)) /
        (4.0 * h2);
    const double d_yt =
        (along(&HeisenbergPoint::y, h, h) - along(&HeisenbergPoint::y, h, -h) -
         along(&HeisenbergPoint::y, -h, h) + along(&HeisenbergPoint::y, -h, -h)) /
        (4.0 * h2);

    sum += d_xx + d_yy + 4.0 * yi * d_xt - 4.0 * xi * d_yt + 4.0 * (xi * xi + yi * yi) * d_tt;
  }
  return sum;
}

}  // namespace hkink

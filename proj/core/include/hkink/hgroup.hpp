#pragma once

#include <functional>
#include <vector>

namespace hkink {

/// A point (x, y, t) of the Heisenberg group H^n, with z = x + iy in C^n.
struct HeisenbergPoint {
  std::vector<double> x;
  std::vector<double> y;
  double t = 0.0;

  /// Heisenberg index n.
  int dim() const noexcept { return static_cast<int>(x.size()); }

  /// Validating constructor: equal lengths >= 1, all entries finite.
  static HeisenbergPoint make(std::vector<double> x, std::vector<double> y, double t);
  static HeisenbergPoint identity(int n);
  /// n = 1 shorthand.
  static HeisenbergPoint planar(double x, double y, double t);

  /// |z|^2
  double z_norm_sq() const noexcept;
};

/// Homogeneous dimension and the constant in front of the fundamental solution.
struct GroupConstants {
  int n = 1;
  int Q = 4;
  double c_q = 1.0;

  /// C_Q = 1; used wherever only harmonicity and scaling matter.
  static GroupConstants unit(int n);
  /// C_Q normalised so that -Delta_H Gamma = delta for the vector fields
  /// X_i = d/dx_i + 2 y_i d/dt, Y_i = d/dy_i - 2 x_i d/dt.
  static GroupConstants fundamental(int n);
};

/// a o b = (z_a + z_b, t_a + t_b + 2 Im(conj(z_b) . z_a)).
HeisenbergPoint group_mul(const HeisenbergPoint& a, const HeisenbergPoint& b);
HeisenbergPoint group_inv(const HeisenbergPoint& a);
/// (lambda z, lambda^2 t); throws DomainError for lambda <= 0.
HeisenbergPoint dilate(double lambda, const HeisenbergPoint& a);
double koranyi_norm(const HeisenbergPoint& a);
/// |b^{-1} o a|, left invariant.
double distance(const HeisenbergPoint& a, const HeisenbergPoint& b);
/// C_Q |a|^{2-Q}; throws DomainError at the identity.
double gamma(const HeisenbergPoint& a, const GroupConstants& c);

using GroupFunction = std::function<double(const HeisenbergPoint&)>;

/// Centered second-order finite-difference approximation of
/// Delta_H fn(a) = sum_i (X_i^2 + Y_i^2) fn(a), evaluated in the expanded form
/// d_xx + d_yy + 4y d_xt - 4x d_yt + 4(x^2 + y^2) d_tt per coordinate pair.
/// Throws DomainError if any sampled value is not finite.
double apply_kohn(const GroupFunction& fn, const HeisenbergPoint& a, double h);

/// Default step: 1e-3 * |a|, but never below 1e-5.
double default_kohn_step(const HeisenbergPoint& a);

}  // namespace hkink

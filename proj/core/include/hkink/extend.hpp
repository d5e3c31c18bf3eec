#pragma once

#include <vector>

#include "hkink/cylgrid.hpp"
#include "hkink/hgroup.hpp"
#include "hkink/nonlinearity.hpp"

namespace hkink {

/// Full-cylinder field with v(r, -t) = -v(r, t); gap = 1 - |v|.
using ReflectedField = GapField;

/// v(r, t) = u(r, t) for t >= 0 and -u(r, -t) for t <= 0; the t = 0 row is
/// shared and set to 0. Throws DomainError if the bottom row of u exceeds
/// `tolerance` in modulus or u is not on a half grid.
ReflectedField odd_reflect(const GapField& half, double tolerance = 1e-12);
ReflectedField odd_reflect(const Field& half, double tolerance = 1e-12);

/// v(r, -t) = +u(r, t): the wrong-parity extension, kept as a negative control.
Field even_reflect(const Field& half);

/// max |L v + f(v)| over the non-Dirichlet nodes of the t = 0 row.
double seam_residual(const Field& v, const Nonlinearity& f, const CylOperator& op_full);

/// max |L v + f(v)| over non-Dirichlet nodes off the t = 0 row.
double off_seam_residual(const Field& v, const Nonlinearity& f, const CylOperator& op_full);

/// Midpoint quadrature in cylindrical coordinates (r', theta', t') over the
/// local cylinder {|z'| < radius, |t'| < radius^2}; n = 1 only.
struct PotentialQuadrature {
  double radius = 1.0;
  int cells_r = 24;
  int cells_theta = 48;
  int cells_t = 48;
  /// Finite-difference step for Delta_H w, in units of the largest cell side.
  double step_cells = 4.0;

  PotentialQuadrature halved() const;
};

/// w(xi) = -int Gamma(xi'^{-1} o xi) s(|z'|, t') dxi' over the local cylinder,
/// with Gamma normalised as the fundamental solution of -Delta_H. The cell
/// containing xi (if any) is skipped and its volume added to *skipped_volume.
double newton_potential(const std::function<double(double, double)>& source,
                        const HeisenbergPoint& xi, const PotentialQuadrature& quad,
                        double* skipped_volume = nullptr);

struct PotentialSample {
  HeisenbergPoint point;
  double laplacian_v = 0.0;  ///< Delta_H v, from the discrete operator
  double laplacian_w = 0.0;  ///< Delta_H w, finite differences of the quadrature
  double residual = 0.0;     ///< Delta_H (v + w) at the given resolution
  double residual_coarse = 0.0;  ///< same at half the quadrature resolution
  double error_estimate = 0.0;   ///< |residual - residual_coarse|
  bool passed = false;
};

struct PotentialReport {
  std::vector<PotentialSample> samples;
  double skipped_volume = 0.0;
  bool passed = false;
};

/// Probes the removable-singularity argument: with w the local Newton potential
/// of f(v), checks Delta_H (v + w) ~ 0 at the samples. A sample passes when its
/// residual is within twice the resolution-halving error estimate plus
/// `floor`. Throws DomainError for samples at the pole or n != 1.
PotentialReport newton_potential_check(const Field& v, const Nonlinearity& f,
                                       const std::vector<HeisenbergPoint>& samples,
                                       const PotentialQuadrature& quad = {},
                                       double floor = 0.0);

}  // namespace hkink

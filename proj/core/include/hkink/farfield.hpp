#pragma once

#include <string>
#include <vector>

#include "hkink/nonlinearity.hpp"

namespace hkink {

/// Radial profile U on [0, rmax] solving U'' + (2n-1)/r U' + f(U) = 0,
/// U(0) = a, U'(0) = 0, sampled on a uniform step.
struct RadialODESolution {
  int n = 1;
  double a = 0.0;
  double step = 0.0;
  std::string f_label;
  std::vector<double> r;
  std::vector<double> U;
  std::vector<double> dU;
  std::vector<double> zero_crossings;
  bool blew_up = false;     ///< |U| > 10 was reached
  double last_valid_r = 0.0;
};

/// Fourth-order integration: the series U = a - f(a) r^2 / (4n) over the
/// first step, then classical RK4. Crossings are located on the cubic Hermite
/// interpolant of each bracketing step by bisection. Throws DomainError for
/// step <= 0, rmax <= step, a outside [0, 1] or n < 1.
RadialODESolution integrate_radial(const Nonlinearity& f, int n, double a, double rmax, double step);

struct FirstIntegralReport {
  double max_defect = 0.0;  ///< max |r^{2n-1} U' + int_0^r rho^{2n-1} f(U)|
  double worst_r = 0.0;
  /// r^{2n-1} U' < 0 on every sample in (0, first crossing) with 0 < U < 1.
  bool decreasing_before_crossing = true;
};

/// Both sides of r^{2n-1} U'(r) = -int_0^r rho^{2n-1} f(U) drho on the stored
/// samples, with composite Simpson (3/8 on the last three panels for odd counts).
FirstIntegralReport first_integral_check(const RadialODESolution& sol, const Nonlinearity& f);

/// -(2n-1)(2n-3)/4, the coefficient of 1/r^2 in H.
double liouville_coefficient(int n);
/// The same coefficient written (2n-1)/2 (1 - (N-1)/2) with N = 2n.
double liouville_coefficient_dimension_form(int n);

struct LiouvilleTrace {
  int n = 1;
  std::vector<double> r;
  std::vector<double> V;  ///< r^{(2n-1)/2} U
  std::vector<double> K;  ///< f(U) / U
  std::vector<double> H;  ///< K + liouville_coefficient(n) / r^2
  /// max |V'' + H V| over interior samples with r >= r_min, second differences.
  double ode_residual = 0.0;
  /// max |r^{-(2n-1)/2} V - U|.
  double reconstruction_error = 0.0;
};

/// The trace on samples 0 < r < first crossing (or the whole run without one).
/// V ~ r^{(2n-1)/2} is not smooth at the axis, so the finite-difference
/// residual is only taken for r >= r_min. Throws DomainError if U vanishes on
/// the range or fewer than 3 samples remain.
LiouvilleTrace liouville_transform(const RadialODESolution& sol, const Nonlinearity& f,
                                   double r_min = 0.1);

/// pi / sqrt(l/2): zero spacing of U'' + (l/2) U = 0.
double sturm_gap_bound(double l);

struct OscillationCase {
  double a = 0.0;
  /// "crossing", "fixed_point", "trivial" or "inconclusive"
  std::string verdict;
  int crossings = 0;
  double first_crossing = 0.0;
  int gaps_checked = 0;   ///< gaps on which H > 0.9 l/2 throughout
  double worst_gap = 0.0; ///< largest checked gap
  bool gaps_ok = true;    ///< every checked gap <= 1.1 sturm_gap_bound(l)
  double min_H = 0.0;     ///< smallest H seen after r = 1 (inconclusive runs)
  bool blew_up = false;
};

struct DichotomyReport {
  int n = 1;
  double rmax = 0.0;
  double step = 0.0;
  std::vector<OscillationCase> cases;
  /// every a in (0, 1) crossed with checked gaps within the bound, and every
  /// a in {0, 1} stayed constant
  bool passed = false;
};

/// Runs integrate_radial for each a and classifies the outcome.
DichotomyReport oscillation_certificate(const Nonlinearity& f, int n, const std::vector<double>& a_values,
                                        double rmax, double step = 1e-3);

}  // namespace hkink

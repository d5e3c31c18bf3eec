#pragma once

#include <vector>

#include "hkink/cylgrid.hpp"
#include "hkink/eigenpair.hpp"
#include "hkink/linsolve.hpp"
#include "hkink/nonlinearity.hpp"

namespace hkink {

/// v0 = eps * phi0 on D_{R0}^+ and 0 elsewhere, sampled on `grid` (exactly when
/// the eigen mesh nodes embed in `grid`, bilinearly otherwise). Throws
/// DimensionError if the grid does not cover D_{R0}^+ or the Heisenberg
/// indices differ.
Field barrier_v0(const EigenPair& pair, double epsilon, const CylGrid& grid);

/// The map T: T(v) = u solving (L - M) u = -g(v) in D_R^+, u = psi on the
/// boundary. The shifted system is factored once at construction.
class ShiftedMap {
 public:
  ShiftedMap(const CylGrid& grid, Nonlinearity f, SolveConfig cfg = {});

  /// Plain evaluation. v must satisfy 0 <= v <= 1 up to 10 * tolerance (it is
  /// clamped); larger violations throw DomainError.
  Field operator()(const Field& v) const;
  /// Evaluation on a value/gap pair: u from (M - L) u = g(v) with data psi and
  /// the gap w = 1 - u from (M - L) w = M w_v - f(1 - w_v) with data 1 - psi.
  /// Both right-hand sides are nonnegative, so both solves keep full relative
  /// precision in their own small-value regime.
  GapField operator()(const GapField& v) const;

  const CylOperator& op() const noexcept { return system_.op(); }
  const Nonlinearity& f() const noexcept { return f_; }
  const BoundaryData& boundary() const noexcept { return bc_; }
  double tolerance() const noexcept { return cfg_.tolerance; }

 private:
  Nonlinearity f_;
  SolveConfig cfg_;
  BoundaryData bc_;
  BoundaryData gap_bc_;
  ShiftedSystem system_;
};

struct MonotoneConfig {
  double tol_fix = 1e-8;
  int kmax = 500;
  SolveConfig solver{};
};

struct IterationReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> sup_diffs;     ///< sup |v_{k+1} - v_k| per step
  double ordering_violation = 0.0;   ///< max (v_k - v_{k+1})_+
  double bounds_violation = 0.0;     ///< max of (v_k - 1)_+ and (-v_k)_+
  double final_residual = 0.0;       ///< max |L u + f(u)| over interior nodes
  double fixed_point_gap = 0.0;      ///< sup |T(u) - u| at exit
};

struct MonotoneResult {
  GapField solution;
  IterationReport report;
};

struct SubsolutionReport {
  bool passed = true;
  double worst_margin = 0.0;  ///< min of u1 - v0
  int worst_i = 0;
  int worst_j = 0;
};

/// Checks u1 >= v0 - 10 * tolerance nodewise.
SubsolutionReport subsolution_check(const Field& v0, const Field& u1, double tolerance);

/// Monotone iteration v_{k+1} = T(v_k) from the barrier until
/// sup |v_{k+1} - v_k| < tol_fix or kmax steps (report.converged = false).
MonotoneResult iterate(const ShiftedMap& T, const Field& v0, const MonotoneConfig& cfg = {});

/// Same loop from an arbitrary start in [0, 1] (warm start). The ordering
/// statistics are still recorded but carry no guarantee.
MonotoneResult iterate_from(const ShiftedMap& T, GapField start, const MonotoneConfig& cfg = {});

/// sup |a - b| using gaps where both nodes sit near +-1.
double gap_sup_distance(const GapField& a, const GapField& b);

}  // namespace hkink

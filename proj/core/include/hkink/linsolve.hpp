#pragma once

#include <functional>
#include <memory>

#include "hkink/cylgrid.hpp"

namespace hkink {

/// Dirichlet data on the three non-axis sides. The axis carries the symmetry
/// condition built into the operator. Lids take precedence at the corners.
struct BoundaryData {
  std::function<double(double t)> side;    ///< r = R
  std::function<double(double r)> bottom;  ///< t = t_min
  std::function<double(double r)> top;     ///< t = t_max

  static BoundaryData zero();
  static BoundaryData constant(double c);
  /// psi(t) = t / R^2 on the side, 0 at the bottom, 1 at the top.
  static BoundaryData psi(double R);
  /// 1 - psi: the data seen by the gap 1 - u.
  static BoundaryData psi_gap(double R);

  double at(const CylGrid& g, int i, int j) const;
  /// Field equal to the data on Dirichlet rows and `interior` elsewhere.
  Field fill(const CylGrid& g, double interior = 0.0) const;
};

enum class SolveMethod { direct, pcg };

struct SolveConfig {
  double tolerance = 1e-10;  ///< relative residual, in (0, 1e-2]
  int max_iterations = 20000;
  SolveMethod method = SolveMethod::direct;

  void validate() const;
};

/// (L - M) u = rhs on one grid with a fixed shift M >= 0. The system is
/// assembled once in the symmetric form W (M - L) and, for the direct method,
/// factored once (sparse LDL^T, AMD ordering); every solve reuses it.
///
/// With the M-matrix sign pattern the factor has nonpositive off-diagonals, so
/// for rhs <= 0 and nonnegative boundary data both triangular sweeps only add
/// nonnegative terms: tiny solution entries come out with full relative
/// precision.
class ShiftedSystem {
 public:
  ShiftedSystem(const CylOperator& op, double shift, SolveConfig cfg = {});
  ~ShiftedSystem();
  ShiftedSystem(ShiftedSystem&&) noexcept;
  ShiftedSystem& operator=(ShiftedSystem&&) noexcept;

  /// Boundary rows equal `bc` exactly; throws ConvergenceError if the relative
  /// residual misses the tolerance and DimensionError on grid mismatch.
  Field solve(const BoundaryData& bc, const Field& rhs) const;
  /// Same, with boundary values read from the Dirichlet rows of `boundary`.
  Field solve_with_boundary(const Field& boundary, const Field& rhs) const;

  /// ||(L - M) u - rhs||_inf / max(||rhs||_inf, M ||u||_inf, 1) over interior nodes.
  double relative_residual(const Field& u, const Field& rhs) const;

  const CylOperator& op() const noexcept;
  double shift() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Field solve_shifted(const CylOperator& op, double shift, const BoundaryData& bc, const Field& rhs,
                    const SolveConfig& cfg = {});

struct MaximumPrincipleReport {
  bool lower_applicable = false;  ///< rhs <= 0 and bc >= 0
  bool upper_applicable = false;  ///< bc <= B and rhs >= -M B, B = max(bc, 0)
  double upper_bound = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  bool passed = true;
};

/// Checks the sign conclusions of the discrete maximum principle for a computed
/// solution u of (L - M) u = rhs with data bc.
MaximumPrincipleReport maximum_principle_check(const CylOperator& op, double shift,
                                               const BoundaryData& bc, const Field& rhs,
                                               const Field& u, double tolerance);

}  // namespace hkink

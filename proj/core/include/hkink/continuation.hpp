#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hkink/cylgrid.hpp"
#include "hkink/eigenpair.hpp"
#include "hkink/extend.hpp"
#include "hkink/hgroup.hpp"
#include "hkink/monotone.hpp"
#include "hkink/nonlinearity.hpp"

namespace hkink {

/// Half grid on D_R^+ with the node spacing of the eigen mesh divided by
/// `refine`, so that the eigen mesh nodes embed and grids for different R nest.
/// R must be at least the eigen mesh's R.
CylGrid working_grid(const EigenPair& pair, double R, int refine = 1);

struct StageResult {
  double R = 0.0;
  GapField half;
  ReflectedField full;
  IterationReport iteration;
  SubsolutionReport subsolution;
  double truncation_residual = 0.0;  ///< extrapolated_residual of the half field
  double barrier_margin = 0.0;       ///< min of u - v0 over t >= 0
  bool odd = false;
  bool bounded = false;
  bool above_barrier = false;
  bool warm_started = false;
  bool passed = false;
};

struct ContinuationConfig {
  MonotoneConfig monotone{};
  /// Seed each R with the previous solution (clipped to [0, 1]) instead of v0.
  /// Forces sequential execution.
  bool warm_start = false;
  /// Concurrent per-R constructions in verification mode.
  int jobs = 1;
  /// Defaults to [0, R0] x [-R0^2, R0^2].
  std::optional<Window> window;
  int refine = 1;
};

struct ContinuationResult {
  double R0 = 0.0;
  double epsilon = 0.0;
  std::vector<double> schedule;
  std::vector<StageResult> stages;  ///< successful stages, in schedule order
  Window window{};
  /// sup |u_{k+1} - u_k| over the window nodes of the first stage's grid.
  std::vector<double> window_diffs;
  bool complete = false;
  std::string failure;  ///< first stage failure, empty when complete

  const ReflectedField& final() const;
};

/// Runs the construction (barrier from the fixed eigenpair, monotone
/// iteration, odd reflection) for each R of a strictly increasing schedule with
/// schedule[0] >= R0. Stage failures stop the run and leave partial results
/// with complete = false. Throws DomainError for an invalid schedule.
ContinuationResult run_continuation(const Nonlinearity& f, const EigenPair& pair, double epsilon,
                                    const std::vector<double>& schedule,
                                    const ContinuationConfig& cfg = {});

/// One stage on its own: the R = schedule[0] run of run_continuation.
StageResult construct(const Nonlinearity& f, const EigenPair& pair, double epsilon, double R,
                      const MonotoneConfig& cfg = {}, int refine = 1);

/// Window diffs allowed one inversion of at most 10% of the larger value.
bool window_diffs_settle(const std::vector<double>& diffs);

struct TMonotonicityReport {
  int violations = 0;         ///< increments below -10 tol anywhere
  int nonstrict_interior = 0; ///< increments <= 0 off the outer side r = R
  double min_increment = 0.0; ///< over the columns i < Nr - 1
  int worst_i = 0;
  int worst_j = 0;
  bool passed = false;
};

/// Forward t-differences v(i, j+1) - v(i, j), with gaps near +-1.
TMonotonicityReport t_monotonicity_check(const GapField& v, double tolerance = 1e-10);

using DomainPredicate = std::function<bool(const HeisenbergPoint&)>;

/// For each sample xi inside the domain and each alpha in `alphas` with
/// alpha eta o xi inside, checks that s eta o xi stays inside for s on a uniform
/// subdivision of (0, alpha). Here s eta = (s z_eta, s t_eta).
bool eta_convexity_check(const DomainPredicate& inside, const HeisenbergPoint& eta,
                         const std::vector<HeisenbergPoint>& samples,
                         const std::vector<double>& alphas, int subdivisions = 64);

/// The open half cylinder {|z| < R, 0 < t < R^2} of a half grid.
DomainPredicate half_cylinder(const CylGrid& grid);

/// u(xi) = V(|z|, t) by bilinear interpolation.
GroupFunction as_group_function(const Field& v);

struct ProbeProfile {
  double r = 0.0;
  std::vector<double> t;
  std::vector<double> u;
  bool monotone = false;    ///< strictly increasing in t, gap-aware
  bool odd = false;         ///< u(r, -t) = -u(r, t) bitwise
  double u_at_zero = 0.0;
  double u_late = 0.0;      ///< u(r, 0.9 R^2)
  /// u(r, t_star) for each stage that covers (r, t_star)
  std::vector<double> u_t_star;
  bool cross_R_monotone = false;
};

struct FarfieldProfile {
  double t_star = 0.0;
  std::vector<ProbeProfile> probes;
  bool passed = false;
};

/// Profiles of the final field at the given radii, and u(r, t_star) across the
/// schedule (t_star defaults to R0^2). Throws DomainError for probes outside
/// the final grid.
FarfieldProfile farfield_probe(const ContinuationResult& result, const std::vector<double>& r_probe,
                               std::optional<double> t_star = std::nullopt);

/// (alpha, nu): level sets {alpha . z + nu t = c} with alpha . z = sum alpha_i x_i +
/// alpha_{n+i} y_i.
struct PlanarDirection {
  std::vector<double> alpha;
  double nu = 0.0;
};

/// `count` unit directions with nu > 0: a Fibonacci lattice on the upper
/// hemisphere for n = 1, seeded Gaussian samples otherwise.
std::vector<PlanarDirection> fibonacci_directions(int n, int count, std::uint64_t seed = 1);
/// (e_k, 0) for k = 1..2n.
std::vector<PlanarDirection> boundary_directions(int n);

struct PlanarSampling {
  int pairs = 512;
  double r_max = 1.0;  ///< |z|, |z'| <= r_max
  double t_max = 1.0;  ///< |t|, |t'| <= t_max
  std::uint64_t seed = 12345;
};

struct DirectionSpread {
  PlanarDirection direction;
  double spread = 0.0;
  int pairs = 0;
};

struct PlanarReport {
  std::vector<DirectionSpread> spreads;
  double min_spread = 0.0;
  std::size_t argmin = 0;
};

/// For each direction, the largest |u(xi) - u(xi')| over sampled pairs on a
/// common level set. A planar function has zero spread along its own
/// direction. Throws DomainError for empty directions, pairs < 1, or a
/// direction with alpha = 0 and nu = 0.
PlanarReport planar_ansatz_test(const GroupFunction& u, int n,
                                const std::vector<PlanarDirection>& directions,
                                const PlanarSampling& sampling);

}  // namespace hkink

#pragma once

#include "hkink/cylgrid.hpp"
#include "hkink/linsolve.hpp"
#include "hkink/nonlinearity.hpp"

namespace hkink {

/// Principal Dirichlet eigenpair of -L on a half-cylinder grid.
struct EigenPair {
  double lambda0 = 0.0;
  Field phi0;  ///< sup-normalised, positive inside, zero on Dirichlet rows
  int iterations = 0;
  /// ||L phi + lambda phi||_w / (lambda ||phi||_w)
  double rayleigh_residual = 0.0;

  const CylGrid& grid() const noexcept { return phi0.grid(); }
};

struct EigenConfig {
  SolveConfig solver{};
  double lambda_tol = 1e-9;    ///< relative change between successive estimates
  double residual_tol = 1e-8;  ///< relative Rayleigh residual
  int max_iterations = 500;
};

/// Inverse power iteration from the seed (1 - r/R) sin(pi t / R^2).
/// Throws DomainError for full grids and ConvergenceError when the tolerances
/// are not met or an iterate loses its sign.
EigenPair principal_eigenpair(const CylGrid& grid, const EigenConfig& cfg = {});

/// Rayleigh quotient <-L phi, phi>_w / <phi, phi>_w.
double rayleigh_quotient(const CylOperator& op, const Field& phi);

/// Node counts used to mesh D_R^+ for the eigenproblem: the grid on any R has
/// intervals_r + 1 by intervals_t + 1 nodes, so meshes on different R are
/// exact dilates of each other.
struct EigenGridPolicy {
  int n = 1;
  int intervals_r = 64;
  int intervals_t = 32;
  double R_ref = 1.0;

  CylGrid grid(double R) const;
};

struct R0Selection {
  double R0 = 0.0;
  double predicted_R0 = 0.0;  ///< from the R^-2 law at R_ref
  double lambda_ref = 0.0;
  int doublings = 0;
  EigenPair pair;
};

/// Smallest R0 (up to a 1e-6 margin) with lambda0(R0) <= l/2: predicts R0 from
/// lambda0(R_ref) and the R^-2 scaling, verifies by a direct eigensolve and
/// doubles R0 until verified (at most 8 times).
R0Selection choose_R0(const Nonlinearity& f, const EigenGridPolicy& policy,
                      const EigenConfig& cfg = {});

/// True iff lambda0 * eps * phi <= f(eps * phi) at every node.
bool barrier_holds(const Nonlinearity& f, const EigenPair& pair, double epsilon,
                   int* violations = nullptr);

/// epsilon in (0, 1) with lambda0 eps phi0 <= f(eps phi0) nodewise. For the
/// cubic the start value is sqrt(1 - lambda0), otherwise 1/2; the start is
/// halved until admissible and then bisected upward. Throws DomainError if
/// lambda0 > l/2 and ConvergenceError if nothing admissible is found.
double choose_epsilon(const Nonlinearity& f, const EigenPair& pair);

}  // namespace hkink

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hkink/error.hpp"
#include "hkink/linsolve.hpp"

using namespace hkink;

namespace {

// u* with rhs = (L - M) u*; the solve must give u* back
struct Manufactured {
  CylGrid g;
  Field exact, rhs;
};

Manufactured manufactured(int n, double M) {
  Manufactured m{CylGrid::half(n, 2.0, 33, 41), {}, {}};
  m.exact = Field::sample(m.g, [](double r, double t) { return std::exp(-r * r) * std::sin(1.0 + t); });
  const CylOperator op(m.g);
  m.rhs = apply(op, m.exact);
  for (auto k = 0u; k < m.rhs.values().size(); ++k) m.rhs.values()[k] -= M * m.exact.values()[k];
  return m;
}

double sup_diff(const Field& a, const Field& b) {
  double d = 0.0;
  for (auto k = 0u; k < a.values().size(); ++k) d = std::max(d, std::abs(a.values()[k] - b.values()[k]));
  return d;
}

}  // namespace

TEST(LinSolve, ReproducesManufacturedSolution) {
  for (int n : {1, 2}) {
    for (double M : {0.0, 2.0}) {
      const auto m = manufactured(n, M);
      const CylOperator op(m.g);
      const ShiftedSystem sys(op, M);
      const Field u = sys.solve_with_boundary(m.exact, m.rhs);
      EXPECT_LE(sup_diff(u, m.exact), 1e-10) << n << " " << M;
      EXPECT_LE(sys.relative_residual(u, m.rhs), 1e-12);
    }
  }
}

TEST(LinSolve, DirectAndPcgAgree) {
  const auto m = manufactured(1, 2.0);
  const CylOperator op(m.g);
  SolveConfig pcg;
  pcg.method = SolveMethod::pcg;
  pcg.tolerance = 1e-12;
  const Field a = ShiftedSystem(op, 2.0).solve_with_boundary(m.exact, m.rhs);
  const Field b = ShiftedSystem(op, 2.0, pcg).solve_with_boundary(m.exact, m.rhs);
  EXPECT_LE(sup_diff(a, b), 1e-9);
}

TEST(LinSolve, BoundaryRowsAreExact) {
  const CylGrid g = CylGrid::half(1, 2.0, 17, 17);
  const CylOperator op(g);
  const Field u = solve_shifted(op, 2.0, BoundaryData::psi(2.0), Field(g));
  for (int j = 0; j < g.Nt; ++j) EXPECT_EQ(u(g.Nr - 1, j), g.t(j) / 4.0);
  for (int i = 0; i < g.Nr; ++i) {
    EXPECT_EQ(u(i, 0), 0.0);
    EXPECT_EQ(u(i, g.Nt - 1), 1.0);
  }
}

TEST(LinSolve, MaximumPrinciple) {
  const CylGrid g = CylGrid::half(2, 3.0, 25, 37);
  const CylOperator op(g);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Field rhs(g);
    for (auto& v : rhs.values()) v = -u01(rng);
    const BoundaryData bc = BoundaryData::psi(3.0);
    const Field u = solve_shifted(op, 2.0, bc, rhs);
    const auto rep = maximum_principle_check(op, 2.0, bc, rhs, u, 1e-12);
    EXPECT_TRUE(rep.lower_applicable);
    EXPECT_TRUE(rep.passed);
    EXPECT_GE(rep.min_value, 0.0);
  }
  // right-hand side in [-M B, 0] keeps the solution in [0, B]
  Field rhs = Field::sample(g, [](double r, double t) { return -2.0 * (0.5 + 0.5 * std::sin(r * t)); });
  const Field u = solve_shifted(op, 2.0, BoundaryData::constant(1.0), rhs);
  const auto rep = maximum_principle_check(op, 2.0, BoundaryData::constant(1.0), rhs, u, 1e-12);
  EXPECT_TRUE(rep.upper_applicable);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.max_value, 1.0 + 1e-12);
}

TEST(LinSolve, MaximumPrincipleCatchesViolation) {
  const CylGrid g = CylGrid::half(1, 2.0, 9, 9);
  const CylOperator op(g);
  Field u(g);
  u(3, 3) = -1e-3;
  const auto rep = maximum_principle_check(op, 2.0, BoundaryData::zero(), Field(g), u, 1e-12);
  EXPECT_FALSE(rep.passed);
}

TEST(LinSolve, RejectsBadInput) {
  const CylGrid g = CylGrid::half(1, 2.0, 9, 9);
  const CylOperator op(g);
  SolveConfig bad;
  bad.tolerance = 0.5;
  EXPECT_THROW(ShiftedSystem(op, 1.0, bad), DomainError);
  EXPECT_THROW(ShiftedSystem(op, -1.0), DomainError);
  const ShiftedSystem sys(op, 1.0);
  EXPECT_THROW(sys.solve(BoundaryData::zero(), Field(CylGrid::half(1, 2.0, 9, 11))), DimensionError);
}

TEST(LinSolve, PcgOnStretchedCells) {
  // t_max = R^2 makes the vertical coupling dominate far from the axis
  const CylGrid g = CylGrid::half(1, 10.0, 129, 129);
  const CylOperator op(g);
  SolveConfig pcg;
  pcg.method = SolveMethod::pcg;
  const Field rhs = Field::sample(g, [](double r, double t) { return -std::exp(-r - t); });
  const Field a = solve_shifted(op, 2.0, BoundaryData::psi(g.R), rhs, pcg);
  const Field b = solve_shifted(op, 2.0, BoundaryData::psi(g.R), rhs);
  EXPECT_LE(sup_diff(a, b), 1e-8);
}

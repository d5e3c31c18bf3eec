#include <gtest/gtest.h>

#include <cmath>

#include "hkink/cylgrid.hpp"
#include "hkink/error.hpp"

using namespace hkink;

namespace {

double lap_exact(int n, double r, double t) {
  // sin(r) cos(t)
  return (-std::sin(r) + (2 * n - 1) * std::cos(r) / r - 4 * r * r * std::sin(r)) * std::cos(t);
}

// max error of the discrete operator on nodes with r in [lo, hi], 0 < t < t_max
double op_error(int n, int Nr, int Nt, double lo, double hi) {
  const CylGrid g = CylGrid::half(n, 2.0, Nr, Nt);
  const Field u = Field::sample(g, [](double r, double t) { return std::sin(r) * std::cos(t); });
  const Field lu = apply(CylOperator(g), u);
  double e = 0.0;
  for (int j = 1; j < g.Nt - 1; ++j) {
    for (int i = 1; i < g.Nr - 1; ++i) {
      if (g.r(i) < lo || g.r(i) > hi) continue;
      e = std::max(e, std::abs(lu(i, j) - lap_exact(n, g.r(i), g.t(j))));
    }
  }
  return e;
}

}  // namespace

TEST(CylGrid, Geometry) {
  const CylGrid h = CylGrid::half(1, 2.0, 17, 33);
  EXPECT_EQ(h.t_max, 4.0);
  EXPECT_EQ(h.seam_row(), 0);
  EXPECT_DOUBLE_EQ(h.hr(), 0.125);
  const CylGrid f = CylGrid::full(1, 2.0, 17, 65);
  EXPECT_TRUE(f.is_full());
  EXPECT_EQ(f.t(f.seam_row()), 0.0);
  EXPECT_TRUE(f.dirichlet(16, 3));
  EXPECT_FALSE(f.dirichlet(0, 3));
  EXPECT_THROW(CylGrid::half(0, 1.0, 9, 9), Error);
}

TEST(CylGrid, OperatorExactOnLowDegree) {
  for (int n : {1, 2, 3}) {
    const CylGrid g = CylGrid::half(n, 3.0, 25, 41);
    const CylOperator op(g);
    const Field one = apply(op, Field(g, 1.0));
    const Field t = apply(op, Field::sample(g, [](double, double tt) { return tt; }));
    const Field r2 = apply(op, Field::sample(g, [](double r, double) { return r * r; }));
    const Field r2t = apply(op, Field::sample(g, [](double r, double tt) { return r * r * tt; }));
    for (int j = 1; j < g.Nt - 1; ++j) {
      for (int i = 0; i < g.Nr - 1; ++i) {
        EXPECT_NEAR(one(i, j), 0.0, 1e-10);
        EXPECT_NEAR(t(i, j), 0.0, 1e-10);
        EXPECT_NEAR(r2(i, j), 4.0 * n, 1e-10);
        EXPECT_NEAR(r2t(i, j), 4.0 * n * g.t(j), 1e-9);
      }
    }
  }
}

TEST(CylGrid, SecondOrderAwayFromAxis) {
  for (int n : {1, 2}) {
    const double e1 = op_error(n, 33, 33, 0.5, 1.5);
    const double e2 = op_error(n, 65, 65, 0.5, 1.5);
    EXPECT_GE(std::log2(e1 / e2), 1.9) << "n = " << n;
  }
}

TEST(CylGrid, SecondOrderOnAxis) {
  // cos(r) cos(t) is smooth across the axis; the limit there is 2n U_rr
  auto err = [](int Nr, int Nt) {
    const CylGrid g = CylGrid::half(1, 2.0, Nr, Nt);
    const Field u = Field::sample(g, [](double r, double t) { return std::cos(r) * std::cos(t); });
    const Field lu = apply(CylOperator(g), u);
    double e = 0.0;
    for (int j = 1; j < g.Nt - 1; ++j) e = std::max(e, std::abs(lu(0, j) + 2.0 * std::cos(g.t(j))));
    return e;
  };
  EXPECT_GE(std::log2(err(33, 33) / err(65, 65)), 1.9);
}

TEST(CylGrid, WeightedSymmetry) {
  const CylGrid g = CylGrid::half(2, 2.0, 21, 17);
  const CylOperator op(g);
  auto bump = [&](double a) {
    return Field::sample(g, [&, a](double r, double t) {
      return (g.R - r) * t * (g.t_max - t) * std::cos(a * r + t);
    });
  };
  const Field u = bump(0.3), v = bump(1.7);
  const double lhs = weighted_dot(op, apply(op, u), v);
  const double rhs = weighted_dot(op, u, apply(op, v));
  EXPECT_NEAR(lhs, rhs, 1e-10 * std::abs(lhs));
  EXPECT_LT(weighted_dot(op, apply(op, u), u), 0.0);
}

TEST(CylGrid, InterpolationAndResample) {
  const CylGrid g = CylGrid::half(1, 2.0, 9, 17);
  const Field u = Field::sample(g, [](double r, double t) { return 1.0 + 2.0 * r - t + 0.5 * r * t; });
  EXPECT_NEAR(u.interpolate(0.37, 1.91), 1.0 + 0.74 - 1.91 + 0.5 * 0.37 * 1.91, 1e-13);
  const Field w = u.resample(CylGrid::half(1, 2.0, 17, 33));
  EXPECT_NEAR(w(3, 5), 1.0 + 2.0 * 0.375 - 0.625 + 0.5 * 0.375 * 0.625, 1e-13);
  EXPECT_THROW(require_same_grid(g, CylGrid::half(1, 2.0, 9, 9)), DimensionError);
}

TEST(CylGrid, GapFieldIncrement) {
  const CylGrid g = CylGrid::half(1, 1.0, 9, 9);
  const GapField v = GapField::from_value(Field::sample(g, [](double, double t) { return t; }));
  EXPECT_NEAR(v.gap(2, 3), 1.0 - g.t(3), 1e-15);
  EXPECT_NEAR(v.t_increment(2, 3), g.ht(), 1e-15);
}

TEST(CylGrid, ResidualOfExactSolutions) {
  const Nonlinearity f = make_cubic();
  const CylGrid g = CylGrid::half(1, 2.0, 17, 17);
  const CylOperator op(g);
  EXPECT_EQ(residual(op, Field(g, 1.0), f), 0.0);
  EXPECT_EQ(extrapolated_residual(op, Field(g, -1.0), f), 0.0);
  EXPECT_THROW(extrapolated_residual(CylOperator(CylGrid::half(1, 2.0, 16, 17)), Field(CylGrid::half(1, 2.0, 16, 17)), f),
               DimensionError);
}

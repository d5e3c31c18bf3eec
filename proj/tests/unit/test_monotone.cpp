#include <gtest/gtest.h>

#include <cmath>

#include "hkink/continuation.hpp"
#include "hkink/error.hpp"
#include "hkink/monotone.hpp"

using namespace hkink;

namespace {

struct Setup {
  Nonlinearity f = make_cubic();
  EigenPair pair;
  double eps = 0.0;
  CylGrid grid;
};

const Setup& setup() {
  static const Setup s = [] {
    Setup s;
    EigenGridPolicy pol;
    pol.intervals_r = 16;
    pol.intervals_t = 8;
    s.pair = choose_R0(s.f, pol).pair;
    s.eps = choose_epsilon(s.f, s.pair);
    s.grid = working_grid(s.pair, 2.0 * s.pair.grid().R);
    return s;
  }();
  return s;
}

}  // namespace

TEST(Monotone, BarrierShape) {
  const auto& s = setup();
  const Field v0 = barrier_v0(s.pair, s.eps, s.grid);
  EXPECT_DOUBLE_EQ(v0.max(), s.eps);
  EXPECT_GE(v0.min(), 0.0);
  const double R0 = s.pair.grid().R;
  for (int j = 0; j < s.grid.Nt; ++j) {
    for (int i = 0; i < s.grid.Nr; ++i) {
      if (s.grid.r(i) > R0 + 1e-12 || s.grid.t(j) > R0 * R0 + 1e-9) EXPECT_EQ(v0(i, j), 0.0);
    }
  }
  EXPECT_THROW(barrier_v0(s.pair, s.eps, CylGrid::half(1, 0.5 * R0, 9, 9)), DimensionError);
}

TEST(Monotone, MapOfConstants) {
  const auto& s = setup();
  const ShiftedMap T(s.grid, s.f);
  const Field u0 = T(Field(s.grid, 0.0));
  const Field u1 = T(Field(s.grid, 1.0));
  EXPECT_GE(u0.min(), 0.0);
  EXPECT_LE(u0.max(), 1.0);
  EXPECT_LE(u1.max(), 1.0 + 1e-12);
  for (auto k = 0u; k < u0.values().size(); ++k) EXPECT_LE(u0.values()[k], u1.values()[k] + 1e-12);
  EXPECT_THROW(T(Field(s.grid, 1.1)), DomainError);
}

TEST(Monotone, MapIsOrderPreserving) {
  const auto& s = setup();
  const ShiftedMap T(s.grid, s.f);
  const Field a = barrier_v0(s.pair, s.eps, s.grid);
  Field b = a;
  for (int j = 0; j < s.grid.Nt; ++j) {
    for (int i = 0; i < s.grid.Nr; ++i) b(i, j) += 0.3 * (1.0 - a(i, j)) * std::abs(std::sin(i + 2.0 * j));
  }
  const Field ta = T(a), tb = T(b);
  for (auto k = 0u; k < ta.values().size(); ++k) EXPECT_LE(ta.values()[k], tb.values()[k] + 1e-12);
}

TEST(Monotone, IterationFromBarrier) {
  const auto& s = setup();
  const ShiftedMap T(s.grid, s.f);
  const Field v0 = barrier_v0(s.pair, s.eps, s.grid);
  MonotoneConfig cfg;
  const MonotoneResult res = iterate(T, v0, cfg);
  EXPECT_TRUE(res.report.converged);
  EXPECT_LE(res.report.ordering_violation, 1e-9);
  EXPECT_LE(res.report.bounds_violation, 1e-9);
  EXPECT_LE(res.report.fixed_point_gap, cfg.tol_fix * 1.01);
  for (std::size_t k = 1; k < res.report.sup_diffs.size(); ++k) EXPECT_GE(res.report.sup_diffs[k], 0.0);
  EXPECT_TRUE(subsolution_check(v0, T(v0), 1e-10).passed);

  // the limit sits above the barrier and inside (0, 1)
  for (auto k = 0u; k < v0.values().size(); ++k) EXPECT_GE(res.solution.value.values()[k], v0.values()[k] - 1e-10);
  const auto tm = t_monotonicity_check(res.solution);
  EXPECT_TRUE(tm.passed);
}

TEST(Monotone, SubsolutionNegativeControl) {
  const auto& s = setup();
  Field v0 = barrier_v0(s.pair, s.eps, s.grid);
  Field u1 = v0;
  u1(3, 3) -= 1e-3;
  const auto rep = subsolution_check(v0, u1, 1e-10);
  EXPECT_FALSE(rep.passed);
  EXPECT_EQ(rep.worst_i, 3);
  EXPECT_EQ(rep.worst_j, 3);
}

TEST(Monotone, RejectsFullGrid) {
  EXPECT_THROW(ShiftedMap(CylGrid::full(1, 2.0, 9, 17), make_cubic()), DomainError);
}

#include <gtest/gtest.h>

#include <cmath>

#include "hkink/continuation.hpp"
#include "hkink/error.hpp"

using namespace hkink;

namespace {

struct Run {
  Nonlinearity f = make_cubic();
  EigenPair pair;
  double eps = 0.0;
  ContinuationResult result;
};

const Run& run() {
  static const Run r = [] {
    Run r;
    EigenGridPolicy pol;
    pol.intervals_r = 16;
    pol.intervals_t = 8;
    r.pair = choose_R0(r.f, pol).pair;
    r.eps = choose_epsilon(r.f, r.pair);
    const double R0 = r.pair.grid().R;
    r.result = run_continuation(r.f, r.pair, r.eps, {2.0 * R0, 4.0 * R0});
    return r;
  }();
  return r;
}

GapField linear_in_t(const CylGrid& g, double slope) {
  return GapField::from_value(Field::sample(g, [=](double, double t) { return slope * t / (g.t_max - g.t_min); }));
}

}  // namespace

TEST(Continuation, WorkingGridKeepsSpacing) {
  const auto& r = run();
  const CylGrid& e = r.pair.grid();
  const CylGrid w = working_grid(r.pair, 4.0 * e.R);
  EXPECT_EQ(w.Nr, 4 * (e.Nr - 1) + 1);
  EXPECT_EQ(w.Nt, 16 * (e.Nt - 1) + 1);
  EXPECT_NEAR(w.hr(), e.hr(), 1e-12);
  EXPECT_NEAR(w.ht(), e.ht(), 1e-12);
}

TEST(Continuation, TwoStages) {
  const auto& r = run();
  ASSERT_TRUE(r.result.complete) << r.result.failure;
  ASSERT_EQ(r.result.stages.size(), 2u);
  for (const auto& st : r.result.stages) {
    EXPECT_TRUE(st.passed);
    EXPECT_TRUE(st.odd);
    EXPECT_TRUE(st.bounded);
    EXPECT_TRUE(st.above_barrier);
  }
  EXPECT_EQ(r.result.window_diffs.size(), 1u);
  const auto tm = t_monotonicity_check(r.result.final());
  EXPECT_TRUE(tm.passed);
  EXPECT_EQ(tm.nonstrict_interior, 0);
  EXPECT_GT(tm.min_increment, 0.0);
}

TEST(Continuation, ProbeProfiles) {
  const auto& r = run();
  const FarfieldProfile fp = farfield_probe(r.result, {0.0, 1.0, 2.0});
  EXPECT_TRUE(fp.passed);
  for (const auto& p : fp.probes) {
    EXPECT_TRUE(p.monotone);
    EXPECT_TRUE(p.odd);
    EXPECT_EQ(p.u_at_zero, 0.0);
    EXPECT_GT(p.u_late, 0.9);
    EXPECT_LE(p.u_late, 1.0);
  }
}

TEST(Continuation, SingleStageMatchesConstruct) {
  const auto& r = run();
  const StageResult st = construct(r.f, r.pair, r.eps, 2.0 * r.pair.grid().R);
  EXPECT_EQ(st.full.value.values(), r.result.stages.front().full.value.values());
  const double R0 = r.pair.grid().R;
  EXPECT_THROW(run_continuation(r.f, r.pair, r.eps, {2.0 * R0, 1.5 * R0}), DomainError);
  EXPECT_THROW(run_continuation(r.f, r.pair, r.eps, {0.5 * R0}), DomainError);
}

TEST(Continuation, WindowDiffsSettle) {
  EXPECT_TRUE(window_diffs_settle({1e-3, 1e-6, 1e-9}));
  EXPECT_TRUE(window_diffs_settle({1e-3}));
  EXPECT_TRUE(window_diffs_settle({1e-3, 1e-6, 1.05e-6}));
  EXPECT_FALSE(window_diffs_settle({1e-3, 1e-6, 2e-6}));
  EXPECT_FALSE(window_diffs_settle({1e-3, 1.05e-3, 1e-6, 1.05e-6}));
}

TEST(Continuation, TMonotonicityControls) {
  const CylGrid g = CylGrid::full(1, 2.0, 9, 33);
  EXPECT_TRUE(t_monotonicity_check(linear_in_t(g, 1.0)).passed);
  const auto flat = t_monotonicity_check(GapField::from_value(Field(g, 0.5)));
  EXPECT_FALSE(flat.passed);
  EXPECT_GT(flat.nonstrict_interior, 0);
  const auto down = t_monotonicity_check(linear_in_t(g, -1.0));
  EXPECT_FALSE(down.passed);
  EXPECT_GT(down.violations, 0);
}

TEST(Continuation, EtaConvexity) {
  const CylGrid g = CylGrid::half(1, 2.0, 9, 9);
  const HeisenbergPoint up = HeisenbergPoint::planar(0, 0, 1);
  std::vector<HeisenbergPoint> samples;
  for (int k = 0; k < 50; ++k) {
    samples.push_back(HeisenbergPoint::planar(1.5 * std::cos(k), 1.5 * std::sin(k) * 0.5, -3.5 + 0.15 * k));
  }
  const std::vector<double> alphas{0.5, 1.0, 2.0, 3.0};
  EXPECT_TRUE(eta_convexity_check(half_cylinder(g), up, samples, alphas));

  // Koranyi ball with a slab removed
  const DomainPredicate cut = [](const HeisenbergPoint& p) {
    return koranyi_norm(p) < 2.0 && std::abs(p.t) > 0.2;
  };
  EXPECT_FALSE(eta_convexity_check(cut, up, samples, alphas));

  const HeisenbergPoint only = HeisenbergPoint::planar(0.1, 0.2, 0.3);
  const DomainPredicate point = [&](const HeisenbergPoint& p) {
    return p.x[0] == only.x[0] && p.y[0] == only.y[0] && p.t == only.t;
  };
  EXPECT_TRUE(eta_convexity_check(point, up, {only}, alphas));
}

TEST(Continuation, PlanarControls) {
  PlanarSampling ps;
  ps.r_max = 2.0;
  ps.t_max = 4.0;
  const double s = std::sqrt(0.3 * 0.3 + 0.4 * 0.4 + 0.5 * 0.5);
  const PlanarDirection own{{0.3 / s, 0.4 / s}, 0.5 / s};
  const GroupFunction planar = [&](const HeisenbergPoint& p) {
    return std::tanh(own.alpha[0] * p.x[0] + own.alpha[1] * p.y[0] + own.nu * p.t);
  };
  auto dirs = fibonacci_directions(1, 32, 5);
  dirs.push_back(own);
  const PlanarReport rep = planar_ansatz_test(planar, 1, dirs, ps);
  EXPECT_LE(rep.min_spread, 1e-12);
  EXPECT_EQ(rep.argmin, dirs.size() - 1);

  // a cylindrical function is constant along equal (|z|, t) but far from planar
  const GroupFunction cyl = [](const HeisenbergPoint& p) { return std::tanh(p.t - p.z_norm_sq()); };
  EXPECT_GT(planar_ansatz_test(cyl, 1, fibonacci_directions(1, 32, 5), ps).min_spread, 0.05);
  const HeisenbergPoint a = HeisenbergPoint::planar(0.6, 0.8, 0.4);
  const HeisenbergPoint b = HeisenbergPoint::planar(-0.8, 0.6, 0.4);
  EXPECT_EQ(cyl(a), cyl(b));

  for (const auto& d : fibonacci_directions(2, 16, 9)) {
    double norm = d.nu * d.nu;
    for (double c : d.alpha) norm += c * c;
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_GT(d.nu, 0.0);
  }
  EXPECT_THROW(planar_ansatz_test(planar, 1, {}, ps), DomainError);
}

TEST(Continuation, ComputedFieldIsNotPlanar) {
  const auto& r = run();
  PlanarSampling ps;
  ps.r_max = r.pair.grid().R;
  ps.t_max = ps.r_max * ps.r_max;
  const auto rep = planar_ansatz_test(as_group_function(r.result.final().value), 1, fibonacci_directions(1, 16, 3), ps);
  EXPECT_GT(rep.min_spread, 10.0 * r.result.stages.back().truncation_residual);
}

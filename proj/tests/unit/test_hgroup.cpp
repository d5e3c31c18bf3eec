#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hkink/error.hpp"
#include "hkink/hgroup.hpp"

using namespace hkink;

namespace {

double diff(const HeisenbergPoint& a, const HeisenbergPoint& b) {
  double d = std::abs(a.t - b.t);
  for (int i = 0; i < a.dim(); ++i) d = std::max({d, std::abs(a.x[i] - b.x[i]), std::abs(a.y[i] - b.y[i])});
  return d;
}

HeisenbergPoint random_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = u(rng);
    y[i] = u(rng);
  }
  return HeisenbergPoint::make(x, y, u(rng));
}

}  // namespace

TEST(HGroup, ProductOfUnitVectors) {
  const auto p = group_mul(HeisenbergPoint::planar(1, 0, 0), HeisenbergPoint::planar(0, 1, 0));
  EXPECT_EQ(p.x[0], 1.0);
  EXPECT_EQ(p.y[0], 1.0);
  EXPECT_EQ(p.t, -2.0);
}

TEST(HGroup, GroupIdentities) {
  std::mt19937_64 rng(3);
  for (int n : {1, 2, 3}) {
    const auto e = HeisenbergPoint::identity(n);
    for (int k = 0; k < 200; ++k) {
      const auto a = random_point(rng, n), b = random_point(rng, n), c = random_point(rng, n);
      EXPECT_LE(diff(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c))), 1e-12);
      EXPECT_LE(diff(group_mul(a, group_inv(a)), e), 1e-12);
      EXPECT_LE(diff(group_mul(e, a), a), 0.0);
      const double l = 0.5 + k * 0.01;
      EXPECT_LE(diff(dilate(l, group_mul(a, b)), group_mul(dilate(l, a), dilate(l, b))), 1e-12 * l * l);
      EXPECT_NEAR(koranyi_norm(dilate(l, a)), l * koranyi_norm(a), 1e-12 * l);
      EXPECT_NEAR(distance(group_mul(c, a), group_mul(c, b)), distance(a, b), 1e-11);
    }
  }
}

TEST(HGroup, KoranyiNormAndMismatch) {
  EXPECT_DOUBLE_EQ(koranyi_norm(HeisenbergPoint::planar(0, 0, 16)), 4.0);
  EXPECT_DOUBLE_EQ(koranyi_norm(HeisenbergPoint::planar(3, 4, 0)), 5.0);
  EXPECT_THROW(group_mul(HeisenbergPoint::identity(1), HeisenbergPoint::identity(2)), DimensionError);
  EXPECT_THROW(gamma(HeisenbergPoint::identity(1), GroupConstants::unit(1)), DomainError);
}

TEST(HGroup, FundamentalConstantClosedForm) {
  EXPECT_NEAR(GroupConstants::fundamental(1).c_q, 1.0 / (8.0 * std::numbers::pi), 1e-15);
  EXPECT_EQ(GroupConstants::fundamental(2).Q, 6);
}

// -Delta_H Gamma = delta tested against phi = exp(-|z|^2 - t^2) with the
// cylindrical Laplacian written out by hand.
TEST(HGroup, FundamentalSolutionFlux) {
  for (int n : {1, 2}) {
    const double cq = GroupConstants::fundamental(n).c_q;
    const int Q = 2 * n + 2;
    const double sphere = n == 1 ? 2.0 * std::numbers::pi : 2.0 * std::numbers::pi * std::numbers::pi;
    const int nr = 1200, nt = 2400;
    const double rmax = 6.0, tmax = 6.0, hr = rmax / nr, ht = 2 * tmax / nt;
    double sum = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double r = (i + 0.5) * hr;
      for (int j = 0; j < nt; ++j) {
        const double t = -tmax + (j + 0.5) * ht;
        const double phi = std::exp(-r * r - t * t);
        const double lap = (4 * r * r - 4.0 * n + 4 * r * r * (4 * t * t - 2)) * phi;
        const double g = cq / std::pow(r * r * r * r + t * t, (Q - 2) / 4.0);
        sum += sphere * std::pow(r, 2 * n - 1) * g * lap;
      }
    }
    EXPECT_NEAR(sum * hr * ht, -1.0, 1e-2) << "n = " << n;
  }
}

TEST(HGroup, GammaHarmonicSecondOrder) {
  const GroupConstants c = GroupConstants::unit(1);
  const GroupFunction g = [&](const HeisenbergPoint& p) { return gamma(p, c); };
  for (const auto& p : {HeisenbergPoint::planar(1, 0, 0), HeisenbergPoint::planar(0.5, 0.5, 0.3),
                        HeisenbergPoint::planar(0, 0.8, -1), HeisenbergPoint::planar(0.3, -1, 2),
                        HeisenbergPoint::planar(-0.7, 0.2, 0.5)}) {
    const double e1 = std::abs(apply_kohn(g, p, 2e-2));
    const double e2 = std::abs(apply_kohn(g, p, 1e-2));
    EXPECT_GE(std::log2(e1 / e2), 1.9);
  }
}

TEST(HGroup, KohnOnPolynomials) {
  // Delta_H (|z|^2 t) = 4 n t and Delta_H t^2 = 8 |z|^2
  const auto p = HeisenbergPoint::make({0.3, -0.2}, {0.1, 0.5}, 0.7);
  const GroupFunction f = [](const HeisenbergPoint& a) { return a.z_norm_sq() * a.t; };
  const GroupFunction t2 = [](const HeisenbergPoint& a) { return a.t * a.t; };
  EXPECT_NEAR(apply_kohn(f, p, 1e-3), 8.0 * 0.7, 1e-6);
  EXPECT_NEAR(apply_kohn(t2, p, 1e-3), 8.0 * p.z_norm_sq(), 1e-6);
}

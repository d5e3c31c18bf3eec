#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "hkink/eigenpair.hpp"
#include "hkink/error.hpp"

using namespace hkink;

namespace {

// smallest eigenvalue of -L on the unknowns, from a dense nonsymmetric solver
double dense_lambda0(const CylGrid& g) {
  const CylOperator op(g);
  std::vector<std::pair<int, int>> nodes;
  for (int j = 1; j < g.Nt - 1; ++j) {
    for (int i = 0; i < g.Nr - 1; ++i) nodes.emplace_back(i, j);
  }
  const int m = static_cast<int>(nodes.size());
  Eigen::MatrixXd A(m, m);
  for (int c = 0; c < m; ++c) {
    Field e(g);
    e(nodes[c].first, nodes[c].second) = 1.0;
    const Field le = apply(op, e);
    for (int r = 0; r < m; ++r) A(r, c) = -le(nodes[r].first, nodes[r].second);
  }
  const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(A, false).eigenvalues();
  double lo = INFINITY;
  for (int k = 0; k < m; ++k) lo = std::min(lo, ev[k].real());
  return lo;
}

}  // namespace

TEST(EigenPair, MatchesDenseSolver) {
  for (int n : {1, 2}) {
    const CylGrid g = CylGrid::half(n, 1.5, 11, 9);
    const EigenPair p = principal_eigenpair(g);
    EXPECT_NEAR(p.lambda0, dense_lambda0(g), 1e-8 * p.lambda0) << "n = " << n;
  }
}

TEST(EigenPair, PositiveAndNormalised) {
  const CylGrid g = CylGrid::half(1, 2.0, 33, 17);
  const EigenPair p = principal_eigenpair(g);
  EXPECT_EQ(p.phi0.max(), 1.0);
  for (int j = 0; j < g.Nt; ++j) {
    for (int i = 0; i < g.Nr; ++i) {
      if (g.dirichlet(i, j)) {
        EXPECT_EQ(p.phi0(i, j), 0.0);
      } else {
        EXPECT_GT(p.phi0(i, j), 0.0);
      }
    }
  }
  EXPECT_NEAR(rayleigh_quotient(CylOperator(g), p.phi0), p.lambda0, 1e-7 * p.lambda0);
}

TEST(EigenPair, DilationScaling) {
  EigenGridPolicy pol;
  pol.intervals_r = 16;
  pol.intervals_t = 8;
  const double l1 = principal_eigenpair(pol.grid(1.0)).lambda0;
  const double l2 = principal_eigenpair(pol.grid(2.0)).lambda0;
  EXPECT_NEAR(l2 / l1, 0.25, 1e-8);

  // equal spacing on the larger domain: only close to the law
  const double m1 = principal_eigenpair(CylGrid::half(1, 1.0, 17, 9)).lambda0;
  const double m2 = principal_eigenpair(CylGrid::half(1, 2.0, 33, 33)).lambda0;
  EXPECT_GE(m2 / m1, 0.24);
  EXPECT_LE(m2 / m1, 0.26);
}

TEST(EigenPair, RadiusAndBarrier) {
  const Nonlinearity f = make_cubic();
  EigenGridPolicy pol;
  pol.intervals_r = 16;
  pol.intervals_t = 8;
  const R0Selection sel = choose_R0(f, pol);
  EXPECT_LE(sel.pair.lambda0, 0.5);
  EXPECT_GT(sel.pair.lambda0, 0.49);
  const double eps = choose_epsilon(f, sel.pair);
  // lambda s <= s (1 - s^2) for s = eps phi with sup phi = 1
  EXPECT_NEAR(eps, std::sqrt(1.0 - sel.pair.lambda0), 1e-14);
  int violations = -1;
  EXPECT_TRUE(barrier_holds(f, sel.pair, eps, &violations));
  EXPECT_EQ(violations, 0);
  EXPECT_FALSE(barrier_holds(f, sel.pair, 1.01 * eps, &violations));
  EXPECT_GT(violations, 0);

  EigenPair small = principal_eigenpair(pol.grid(1.0));
  EXPECT_THROW(choose_epsilon(f, small), DomainError);
}

// Copyright 2026 The zenodae Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "zenodae/gaussian_zeno.hpp"

using namespace zenodae;

namespace {

double even_moment(int m) { return std::tgamma(2.0 * m + 1) / std::tgamma(m + 1.0); }

ComplexMatrix random_hermitian(Index n, std::mt19937_64& rng) {
  const ComplexMatrix a = oracle::random_matrix(n, n, rng);
  return (a + a.adjoint()) / 2.0;
}

const StokesOperators& stokes4() {
  static const StokesOperators ops = build_operators(4);
  return ops;
}

}  // namespace

TEST(GaussianAncilla, MomentsAndSymmetry) {
  const GaussianAncilla anc = gaussian_ancilla(256, 12.0);
  EXPECT_NEAR(anc.g.squaredNorm(), 1.0, settings().gauss_tol);
  EXPECT_NEAR(gaussian_moment(anc, 0), 1.0, 1e-14);
  EXPECT_NEAR(gaussian_moment(anc, 2), 2.0, 1e-10);
  EXPECT_NEAR(gaussian_moment(anc, 4), 12.0, 1e-9);
  for (int m = 0; m <= 6; ++m) {
    EXPECT_EQ(gaussian_moment(anc, 2 * m + 1), 0.0);
    EXPECT_LE(std::abs(gaussian_moment(anc, 2 * m) / even_moment(m) - 1.0), 1e-8) << m;
  }
  EXPECT_GE(anc.m_max, 2);
  for (Index m = 0; m <= anc.m_max; ++m)
    EXPECT_LE(std::abs(gaussian_moment(anc, 2 * m) - even_moment(static_cast<int>(m))), settings().gauss_tol);
  for (Index j = 0; j < anc.Q; ++j) {
    EXPECT_EQ(anc.nodes(j), -anc.nodes(anc.Q - 1 - j));
    EXPECT_EQ(anc.g(j), anc.g(anc.Q - 1 - j));
  }
  // Direct moment sum through the diagonal operator.
  const ComplexMatrix F = anc.Fq();
  EXPECT_NEAR(anc.g.dot(F * F * anc.g).real(), 2.0, 1e-10);
}

TEST(GaussianAncilla, CharacteristicFunction) {
  const GaussianAncilla anc = gaussian_ancilla();
  for (int k = 0; k <= 60; ++k) {
    const double u = 3.0 * k / 60.0;
    EXPECT_LE(std::abs(gaussian_characteristic(anc, u) - std::exp(-u * u)), 1e-8) << u;
    Complex direct = 0.0;
    for (Index j = 0; j < anc.Q; ++j) direct += std::norm(anc.g(j)) * std::exp(Complex(0, -u * anc.nodes(j)));
    EXPECT_LE(std::abs(direct - gaussian_characteristic(anc, u)), 1e-14);
  }
}

TEST(GaussianAncilla, Errors) {
  EXPECT_THROW(gaussian_ancilla(15, 12), Error);
  EXPECT_THROW(gaussian_ancilla(17, 12), Error);
  EXPECT_THROW(gaussian_ancilla(64, 5), Error);
}

TEST(HeatDilation, TrivialAndScalar) {
  const GaussianAncilla anc = gaussian_ancilla();
  std::mt19937_64 rng(1);
  const ComplexMatrix b = random_hermitian(3, rng);
  EXPECT_EQ(heat_via_dilation(b, anc, 0.0), ComplexMatrix::Identity(3, 3));
  RealVector lam(3);
  lam << -1.5, 0.2, 2.0;
  const ComplexMatrix d = lam.cast<Complex>().asDiagonal();
  const ComplexMatrix out = heat_via_dilation(d, anc, 0.5);
  for (Index j = 0; j < 3; ++j) EXPECT_NEAR(out(j, j).real(), std::exp(-0.5 * lam(j) * lam(j)), 1e-10);
  EXPECT_LE((out - ComplexMatrix(out.diagonal().asDiagonal())).norm(), 1e-14);
}

TEST(HeatDilation, EqualsLiteralKroneckerExponential) {
  const GaussianAncilla anc = gaussian_ancilla(32, 8.0);
  std::mt19937_64 rng(2);
  const ComplexMatrix b = random_hermitian(3, rng);
  const double t = 0.3;
  const ComplexMatrix big = oracle::expm((Complex(0, -std::sqrt(t)) * oracle::kron(anc.Fq(), b)).eval());
  const ComplexMatrix lift = oracle::kron(anc.g, ComplexMatrix::Identity(3, 3));
  const ComplexMatrix literal = lift.adjoint() * big * lift;
  EXPECT_LE((heat_via_dilation(b, anc, t) - literal).norm(), 1e-12);
}

TEST(HeatDilation, StokesDirac) {
  const StokesOperators& ops = stokes4();
  const double nb = oracle::opnorm(ops.Bh);
  const double t = 4.0 / (nb * nb);
  const ComplexMatrix expect = oracle::expm((-t * ops.Bh * ops.Bh).eval());
  EXPECT_LE((heat_via_dilation(ops.Bh, gaussian_ancilla(), t) - expect).norm(), 1e-6);
}

TEST(HeatDilation, RejectsNonHermitian) {
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 1) = 1.0;
  try {
    heat_via_dilation(b, gaussian_ancilla(), 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStructure);
  }
}

TEST(Lchs, KnownRules) {
  LchsQuadrature q = lchs_nodes(0.25, 1);
  EXPECT_EQ(q.k(0), 0.0);
  EXPECT_EQ(q.c(0), 1.0);
  q = lchs_nodes(0.25, 2);  // s = ±1/sqrt(2), k = 2 sqrt(t) s
  EXPECT_NEAR(q.kmax, 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(q.c(0), 0.5, 1e-14);
  q = lchs_nodes(1.0, 3);  // s = 0, ±sqrt(3/2); weights 2/3, 1/6
  EXPECT_NEAR(q.kmax, 2.0 * std::sqrt(1.5), 1e-13);
  EXPECT_NEAR(q.c(1), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(q.c(0), 1.0 / 6.0, 1e-14);
  for (Index mq = 1; mq <= 60; ++mq) {
    q = lchs_nodes(0.7, mq);
    EXPECT_NEAR(q.c.sum(), 1.0, 1e-12) << mq;
    EXPECT_GT(q.c.minCoeff(), 0.0);
    EXPECT_EQ(q.c.cwiseAbs().sum(), q.c.sum());
  }
  EXPECT_THROW(lchs_nodes(1.0, 0), Error);
}

TEST(Lchs, ScalarConvergence) {
  for (double tl2 : {1.0, 4.0, 9.0}) {
    const double t = 0.5, lambda = std::sqrt(tl2 / t);
    Index needed = -1;
    double prev = 1e300;
    for (Index mq = 1; mq <= 60; ++mq) {
      const LchsQuadrature q = lchs_nodes(t, mq);
      Complex s = 0.0;
      for (Index m = 0; m < mq; ++m) s += q.c(m) * std::exp(Complex(0, -q.k(m) * lambda));
      const double err = std::abs(s - std::exp(-tl2));
      if (mq % 2 == 1) {  // odd rules nest the central node; compare like with like
        EXPECT_LE(err, 1.5 * std::max(prev, 1e-13));
        prev = err;
      }
      if (needed < 0 && err <= 1e-6) needed = mq;
    }
    EXPECT_GT(needed, 0) << tl2;
    RecordProperty("nodes_for_1e-6_at_tl2_" + std::to_string(static_cast<int>(tl2)), static_cast<int>(needed));
  }
}

TEST(Lchs, ApplyToStokes) {
  const StokesOperators& ops = stokes4();
  const ComplexVector u0 = ops.PiH * taylor_green_init(ops.grid);
  ComplexVector v = ComplexVector::Zero(ops.Bh.rows());
  v.head(ops.velocity_dim()) = u0;
  EXPECT_LE((apply_lchs(ops.Bh, lchs_nodes(1e-14, 4), v) - v).norm(), 1e-10);

  const double t = 0.01;
  const ComplexVector exact = oracle::expm((-t * ops.Sh).eval()) * u0;
  double best = 1e300;
  for (Index mq = 2; mq <= 20; mq += 2) {
    const ComplexVector w = apply_lchs(ops.Bh, lchs_nodes(t, mq), v);
    best = std::min(best, (w.head(ops.velocity_dim()) - exact).norm());
  }
  EXPECT_LE(best, 1e-6);

  const LchsQuadrature q = lchs_nodes(t, 6);
  for (Index m = 0; m < q.Mq; ++m)
    EXPECT_NEAR((oracle::unitary(ops.Bh, q.k(m)) * v).norm(), v.norm(), 1e-10);
}

TEST(Dirac, SquareRootStructure) {
  double prev_b = 0.0;
  for (Index n : {4, 8}) {
    const StokesOperators ops = build_operators(n);
    const double h = ops.grid.h;
    const double nb = oracle::opnorm(ops.Bh);
    EXPECT_LE(nb, oracle::opnorm(ops.Gh) * (1 + 1e-12));
    EXPECT_GE(nb * h, 2.0);
    EXPECT_LE(nb * h, 2.0 * std::sqrt(2.0));
    const double ns = oracle::opnorm(ops.Sh) * h * h;
    EXPECT_GE(ns, 4.0);
    EXPECT_LE(ns, 8.0);
    if (prev_b > 0.0) EXPECT_NEAR(nb / prev_b, 2.0, 0.2);
    prev_b = nb;
  }
  const StokesOperators& ops = stokes4();
  const double t = 0.01;
  const ComplexMatrix e = oracle::expm((-t * ops.Bh * ops.Bh).eval());
  const Index nv = ops.velocity_dim();
  EXPECT_LE((e.topLeftCorner(nv, nv) - oracle::expm((-t * ops.Sh).eval())).norm(), 1e-12);
}

TEST(Dirac, ZenoProduct) {
  const StokesOperators& ops = stokes4();
  EXPECT_LE((zeno_dirac_product(ops, 0.0, 5) - ops.lifted_projector()).norm(), 1e-12);

  StokesOperators free = ops;
  free.PiH = ComplexMatrix::Identity(ops.velocity_dim(), ops.velocity_dim());
  const ComplexMatrix exact_free = oracle::unitary(free.dirac(), 0.1);
  for (Index r : {1, 3, 8}) EXPECT_LE((zeno_dirac_product(free, 0.1, r) - exact_free).norm(), 1e-11) << r;

  const ComplexMatrix target = oracle::unitary(ops.Bh, 0.1) * ops.lifted_projector();
  double prev = 0.0;
  for (Index r = 1; r <= 64; r *= 2) {
    const double err = (zeno_dirac_product(ops, 0.1, r) - target).norm();
    if (prev > 0.0) {
      EXPECT_GE(prev / err, 1.4) << r;
      EXPECT_LE(prev / err, 2.6) << r;
    }
    prev = err;
  }
}

TEST(Chi, Properties) {
  const StokesOperators& ops = stokes4();
  const ComplexVector u0 = taylor_green_init(ops.grid);
  EXPECT_EQ(chi_factor(ops, u0, 0.0), 1.0);
  double last = 1.0;
  for (double t : {1e-3, 1e-2, 5e-2, 1e-1}) {
    const double c = chi_factor(ops, u0, t);
    EXPECT_GE(c, last);
    last = c;
  }
  EXPECT_NEAR(chi_factor(ops, 3.0 * u0, 0.01), chi_factor(ops, u0, 0.01), 1e-12);
  try {
    chi_factor(ops, ComplexVector::Zero(ops.velocity_dim()), 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParameter);
  }
}

TEST(Chi, SettlesUnderRefinement) {
  std::vector<double> chi;
  for (Index n : {4, 8, 16}) {
    const StokesOperators ops = build_operators(n);
    chi.push_back(chi_factor(ops, taylor_green_init(ops.grid), 0.01));
  }
  EXPECT_LT(std::abs(chi[2] - chi[1]), std::abs(chi[1] - chi[0]));
  EXPECT_LT(std::abs(chi[2] - chi[1]) / chi[2], 0.1);
}

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
#include <random>

#include "oracles.hpp"
#include "zenodae/rlc_ladder.hpp"
#include "zenodae/stokes_mac.hpp"
#include "zenodae/zeno.hpp"

using namespace zenodae;

namespace {

struct Toy {
  ConstrainedDAE dae;
  MomentAncilla anc;
  DilatedSystem sys;
};

Toy toy() {
  ConstrainedDAE d = random_dae(3, 1, 123);
  MomentAncilla anc = build_ancilla(8, 4);
  DilatedSystem sys = build_dilated(d, anc);
  return Toy{d, anc, sys};
}

// Smallest degree whose filter stays below eps on the gap, found by scanning.
Index scanned_degree(double kappa, double eps) {
  for (Index q = 2;; q += 2) {
    const PolyProjectorSpec spec{kappa, 1.0, eps, q};
    if (filter_sup_on_gap(spec, 4000) <= eps) return q;
  }
}

}  // namespace

TEST(ZenoProduct, ExactWithoutConstraint) {
  const ConstrainedDAE d = random_dae(3, 0, 5);
  const DilatedSystem sys = build_dilated(d, build_ancilla(6, 3));
  const ComplexVector expect = oracle::unitary(sys.hhat(), 0.7) * sys.psi0;
  for (Index N : {1, 3, 16}) EXPECT_LE((zeno_product(sys, 0.7, N) - expect).norm(), 1e-12) << N;
}

TEST(ZenoProduct, ZeroTime) {
  const Toy t = toy();
  EXPECT_LE((zeno_product(t.sys, 0.0, 5) - t.sys.psi0).norm(), 1e-14);
  EXPECT_THROW(zeno_product(t.sys, 1.0, 0), Error);
}

TEST(ZenoProduct, FirstOrderConvergence) {
  const Toy t = toy();
  const ComplexMatrix php = t.sys.lifted_projector() * t.sys.hhat() * t.sys.lifted_projector();
  const ComplexVector exact = oracle::unitary(php, 1.0) * t.sys.psi0;
  std::vector<double> err;
  std::vector<Index> Ns;
  for (Index N = 2; N <= 256; N *= 2) {
    Ns.push_back(N);
    err.push_back((zeno_product(t.sys, 1.0, N) - exact).norm());
  }
  for (std::size_t k = 3; k + 1 < err.size(); ++k) {
    const double ratio = err[k] / err[k + 1];
    EXPECT_GE(ratio, 1.6) << Ns[k];
    EXPECT_LE(ratio, 2.4) << Ns[k];
  }
  // error(N) <= c t^2 |Hhat|^2 / N with c fitted at the finest N.
  const double h2 = std::pow(oracle::opnorm(t.sys.hhat()), 2);
  const double c = err.back() * static_cast<double>(Ns.back()) / h2;
  for (std::size_t k = 0; k < err.size(); ++k) EXPECT_LE(err[k], 2.0 * c * h2 / static_cast<double>(Ns[k]));
}

TEST(PolyDegree, FormulaExamples) {
  for (double eps : {1e-3, 1e-6, 1e-9})
    EXPECT_EQ(poly_projector_degree(2.0, 2.0, eps), static_cast<Index>(std::ceil(std::log(2.0 / eps))) + 1);
  for (double kappa : {1.0, std::sqrt(2.0), 5.0}) {
    const Index q1 = poly_projector_degree(kappa, 1.0, 1e-6);
    const Index q2 = poly_projector_degree(kappa, 1.0, 0.5e-6);
    EXPECT_LE(static_cast<double>(q2 - q1), kappa * std::log(2.0) + 1.0);
  }
  EXPECT_LE(poly_projector_degree(std::sqrt(2.0), 1.0, 1e-8), 29);
  EXPECT_THROW(poly_projector_degree(1.0, 2.0, 1e-3), Error);
  EXPECT_THROW(poly_projector_degree(1.0, 1.0, 1.5), Error);
  EXPECT_THROW(poly_projector_degree(1.0, 0.0, 1e-3), Error);
}

TEST(PolyFilter, UnitAtZeroSmallOnGap) {
  for (double kappa : {1.0, std::sqrt(2.0), 3.0, 10.0, 40.0})
    for (double eps : {1e-3, 1e-6, 1e-9, 1e-12}) {
      const PolyProjectorSpec spec = make_poly_projector_spec(kappa, 1.0, eps);
      EXPECT_EQ(filter_value(spec, 0.0), 1.0);
      EXPECT_LE(filter_sup_on_gap(spec), eps) << kappa << " " << eps;
    }
}

TEST(PolyFilter, MatchesChebyshevDefinition) {
  const PolyProjectorSpec spec{4.0, 1.0, 1e-6, 12};
  const double g2 = 1.0 / 16.0;
  const double s0 = (1 + g2) / (1 - g2);
  auto cheb = [](Index k, double s) {
    double a = 1.0, b = s;
    if (k == 0) return a;
    for (Index j = 1; j < k; ++j) {
      const double c = 2.0 * s * b - a;
      a = b;
      b = c;
    }
    return b;
  };
  for (double x : {0.0, 0.05, 0.2, 0.25, 0.5, 0.9, 1.0}) {
    const double s = (1 + g2 - 2 * x * x) / (1 - g2);
    EXPECT_NEAR(filter_value(spec, x), cheb(6, s) / cheb(6, s0), 1e-13) << x;
  }
}

TEST(PolyProjector, SimpleCases) {
  ComplexMatrix c(1, 2);
  c << 1, 0;
  const ComplexMatrix p = poly_projector_apply(c, make_poly_projector_spec(1.0, 1.0, 1e-6));
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(1, 1) = 1.0;
  EXPECT_LE((p - expect).norm(), 1e-6);
  EXPECT_LE((poly_projector_apply(ComplexMatrix::Zero(2, 3), make_poly_projector_spec(1.0, 1.0, 1e-6)) -
             ComplexMatrix::Identity(3, 3))
                .norm(),
            1e-15);
}

TEST(PolyProjector, LadderConstraint) {
  for (Index N : {2, 8, 32}) {
    RlcParams p;
    p.N = N;
    const ConstrainedDAE d = build_rlc(p);
    const ComplexMatrix exact = oracle::projector(d.C);
    for (double eps : {1e-3, 1e-6, 1e-9}) {
      const ComplexMatrix q = poly_projector_apply(d.C, make_poly_projector_spec(std::sqrt(2.0), 1.0, eps));
      EXPECT_LE(oracle::opnorm(q - exact), eps) << N << " " << eps;
      EXPECT_LE(oracle::opnorm(q * q - q), 3 * eps);
    }
  }
}

TEST(PolyProjector, GapViolation) {
  ComplexMatrix c(1, 2);
  c << 0.5, 0;
  try {
    poly_projector_apply(c, make_poly_projector_spec(1.0, 1.0, 1e-3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGap);
    EXPECT_NE(std::string(e.what()).find("0.5"), std::string::npos);
  }
}

TEST(PolyProjector, DegreeGrowsLinearlyInConditionNumber) {
  const double eps = 1e-6;
  std::vector<double> kappas = {2, 4, 8, 16, 32};
  std::vector<double> q;
  for (double k : kappas) {
    q.push_back(static_cast<double>(scanned_degree(k, eps)));
    EXPECT_EQ(static_cast<Index>(q.back()), minimal_filter_degree(k, eps)) << k;
  }
  // Least-squares slope of q against kappa.
  double mk = 0, mq = 0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    mk += kappas[j] / q.size();
    mq += q[j] / q.size();
  }
  double num = 0, den = 0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    num += (kappas[j] - mk) * (q[j] - mq);
    den += (kappas[j] - mk) * (kappas[j] - mk);
  }
  const double slope = num / den;
  const double formula = std::log(2.0 / eps);
  EXPECT_GE(slope, formula / 2.0);
  EXPECT_LE(slope, formula * 2.0);
}

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

#include <functional>
#include <random>

#include "oracles.hpp"
#include "zenodae/dae.hpp"

using namespace zenodae;

namespace {

ComplexMatrix row(std::initializer_list<Complex> v) {
  ComplexMatrix m(1, static_cast<Index>(v.size()));
  Index j = 0;
  for (Complex x : v) m(0, j++) = x;
  return m;
}

ComplexVector vec(std::initializer_list<Complex> v) {
  ComplexVector x(static_cast<Index>(v.size()));
  Index j = 0;
  for (Complex e : v) x(j++) = e;
  return x;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvariant;
}

}  // namespace

TEST(Validate, Examples) {
  ConstrainedDAE d{ComplexMatrix::Identity(2, 2), row({1, 0}), vec({0, 1})};
  EXPECT_TRUE(validate(d).ok());

  d.x0 = vec({1, 0});
  const ValidationReport bad = validate(d);
  EXPECT_FALSE(bad.consistent);
  EXPECT_NE(bad.summary().find("FAIL: inconsistent initial data"), std::string::npos);

  ComplexMatrix c(2, 2);
  c << 1, 0, 2, 0;
  d = ConstrainedDAE{ComplexMatrix::Identity(2, 2), c, vec({0, 1})};
  const ValidationReport rank = validate(d);
  EXPECT_FALSE(rank.full_row_rank);
  EXPECT_NE(rank.summary().find("FAIL: rank-deficient"), std::string::npos);
}

TEST(MakeDae, ProjectsNearlyConsistentDataAndRejectsTheRest) {
  const ConstrainedDAE d = make_dae(ComplexMatrix::Identity(2, 2), row({1, 0}), vec({1e-8, 1}));
  EXPECT_EQ(d.x0(0), Complex(0.0));
  EXPECT_EQ(kind_of([] { make_dae(ComplexMatrix::Identity(2, 2), row({1, 0}), vec({1e-3, 1})); }),
            ErrorKind::kConsistency);
  EXPECT_EQ(kind_of([] { make_dae(ComplexMatrix::Identity(2, 2), row({1, 0, 0}), vec({0, 1})); }), ErrorKind::kShape);
}

TEST(SemiExplicit, UnchangedForAdjointMultiplier) {
  const ConstrainedDAE base = random_dae(5, 2, 3);
  const ConstrainedDAE d = from_semi_explicit(base.L, base.C.adjoint(), base.C, base.x0);
  EXPECT_EQ(d.L, base.L);
  EXPECT_EQ(d.C, base.C);
}

TEST(SemiExplicit, TrajectoryMatchesDirectElimination) {
  std::mt19937_64 rng(11);
  const ConstrainedDAE base = random_dae(6, 2, 4);
  for (const ComplexMatrix& t : {ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2)), oracle::random_matrix(2, 2, rng)}) {
    const ComplexMatrix G = base.C.adjoint() * t;
    const ConstrainedDAE d = from_semi_explicit(base.L, G, base.C, base.x0);
    // mu = -(C G)^{-1} C L x eliminates the multiplier of x' = L x + G mu directly.
    const ComplexMatrix elim = ComplexMatrix::Identity(6, 6) - G * (base.C * G).inverse() * base.C;
    for (double time : {0.3, 1.0}) {
      const ComplexVector expect = oracle::expm((time * elim * base.L).eval()) * base.x0;
      EXPECT_LE((reference_solve(schur_reduce(d), time) - expect).norm(), 1e-10);
    }
  }
}

TEST(SemiExplicit, Errors) {
  const ConstrainedDAE base = random_dae(4, 1, 5);
  ComplexMatrix G = ComplexMatrix::Zero(4, 1);
  G(0, 0) = 1.0;
  G = oracle::projector(base.C) * G;  // orthogonal to Range(C^dagger)
  EXPECT_EQ(kind_of([&] { from_semi_explicit(base.L, G, base.C, base.x0); }), ErrorKind::kStructure);

  // Range matches but C G vanishes: only possible with a zero column.
  ComplexMatrix c(2, 3);
  c << 1, 0, 0, 0, 1, 0;
  ComplexMatrix g = c.adjoint();
  g.col(1).setZero();
  EXPECT_EQ(kind_of([&] { from_semi_explicit(ComplexMatrix::Identity(3, 3), g, c, vec({0, 0, 1})); }),
            ErrorKind::kIndex);
}

TEST(Index1, DecoupledBlocks) {
  std::mt19937_64 rng(12);
  const ComplexMatrix A11 = oracle::random_matrix(3, 3, rng), A12 = oracle::random_matrix(3, 2, rng);
  ComplexVector x0 = ComplexVector::Zero(5);
  x0.head(3) = oracle::random_vector(3, rng);
  const ConstrainedDAE d =
      from_index1(A11, A12, ComplexMatrix::Zero(2, 3), ComplexMatrix::Identity(2, 2), x0);
  EXPECT_LE(d.L.bottomRows(2).norm(), 1e-15);
  EXPECT_EQ(d.L.topLeftCorner(3, 3), A11);
  const ComplexVector x = reference_solve(schur_reduce(d), 0.7);
  EXPECT_LE((x.head(3) - oracle::expm((0.7 * A11).eval()) * x0.head(3)).norm(), 1e-12);
  EXPECT_LE(x.tail(2).norm(), 1e-12);
}

TEST(Index1, ScalarBlocks) {
  ComplexMatrix a11(1, 1), a12(1, 1), a21(1, 1), a22(1, 1);
  a11 << 0;
  a12 << 1;
  a21 << 1;
  a22 << 1;
  const ConstrainedDAE d = from_index1(a11, a12, a21, a22, vec({1, -1}));
  ComplexMatrix L(2, 2);
  L << 0, 1, 0, -1;
  EXPECT_LE((d.L - L).norm(), 1e-15);
  EXPECT_LE((d.C - row({1, 1})).norm(), 1e-15);
  EXPECT_LE((d.C * d.L).norm(), 1e-15);
  EXPECT_LE(recover_multiplier(d, d.x0).norm(), 1e-15);
}

TEST(Index1, RandomKeepsCLZeroAndSingularA22Fails) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix A11 = oracle::random_matrix(3, 3, rng), A12 = oracle::random_matrix(3, 2, rng);
    const ComplexMatrix A21 = oracle::random_matrix(2, 3, rng), A22 = oracle::random_matrix(2, 2, rng);
    ComplexVector x0(5);
    x0.head(3) = oracle::random_vector(3, rng);
    x0.tail(2) = -A22.inverse() * A21 * x0.head(3);
    const ConstrainedDAE d = from_index1(A11, A12, A21, A22, x0);
    EXPECT_LE((d.C * d.L).norm(), 1e-10 * std::max(1.0, d.C.norm() * d.L.norm()));
  }
  EXPECT_EQ(kind_of([] {
              from_index1(ComplexMatrix::Identity(1, 1), ComplexMatrix::Identity(1, 1), ComplexMatrix::Identity(1, 1),
                          ComplexMatrix::Zero(1, 1), vec({0, 0}));
            }),
            ErrorKind::kIndex);
}

TEST(SchurReduce, EdgeCasesAndFormula) {
  std::mt19937_64 rng(14);
  const ComplexMatrix L = oracle::random_matrix(4, 4, rng);
  const ReducedSystem free = schur_reduce(ConstrainedDAE{L, ComplexMatrix(0, 4), oracle::random_vector(4, rng)});
  EXPECT_EQ(free.projector, ComplexMatrix::Identity(4, 4));
  EXPECT_LE((free.generator - L).norm(), 1e-15);

  const ConstrainedDAE d = random_dae(6, 2, 15);
  const ReducedSystem red = schur_reduce(d);
  const ComplexMatrix pi = oracle::projector(d.C);
  EXPECT_LE((red.generator - pi * d.L * pi).norm(), 1e-10);

  const ReducedSystem id = schur_reduce(ConstrainedDAE{ComplexMatrix::Identity(6, 6), d.C, d.x0});
  EXPECT_LE((id.generator - pi).norm(), 1e-10);
}

TEST(ReferenceSolve, Basics) {
  const ConstrainedDAE d = random_dae(4, 1, 16);
  const ReducedSystem red = schur_reduce(d);
  EXPECT_EQ(reference_solve(red, 0.0), d.x0);
  EXPECT_THROW(reference_solve(red, -1.0), Error);

  const ComplexVector x0 = vec({1, 2, 3});
  const ReducedSystem decay = schur_reduce(ConstrainedDAE{-ComplexMatrix::Identity(3, 3), ComplexMatrix(0, 3), x0});
  EXPECT_LE((reference_solve(decay, 0.4) - std::exp(-0.4) * x0).norm(), 1e-14);

  // e^{Pi L Pi t} x0 = e^{Pi L t} x0 on ker(C).
  const ComplexMatrix pi = oracle::projector(d.C);
  EXPECT_LE((reference_solve(red, 0.5) - oracle::expm((0.5 * pi * d.L).eval()) * d.x0).norm(), 1e-10);
}

TEST(ReferenceSolve, ConstraintAndSemigroup) {
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const ConstrainedDAE d = random_dae(7, 3, seed);
    const ReducedSystem red = schur_reduce(d);
    for (double t : {0.1, 0.5, 1.0, 2.0}) EXPECT_LE((d.C * reference_solve(red, t)).norm(), 1e-8);
    ReducedSystem restart = red;
    restart.x0 = reference_solve(red, 0.4);
    EXPECT_LE((reference_solve(restart, 0.7) - reference_solve(red, 1.1)).norm(), 1e-9);
  }
}

TEST(Multiplier, Cases) {
  const ConstrainedDAE d = random_dae(6, 2, 31);
  const ComplexVector x = reference_solve(schur_reduce(d), 0.3);
  const ComplexVector lambda = recover_multiplier(d, x);
  EXPECT_LE((d.C * (d.L * x + d.C.adjoint() * lambda)).norm(), 1e-10);

  const ConstrainedDAE zero{ComplexMatrix::Zero(6, 6), d.C, d.x0};
  EXPECT_LE(recover_multiplier(zero, d.x0).norm(), 1e-15);

  ComplexVector off = d.x0;
  off += d.C.adjoint().col(0);
  EXPECT_EQ(kind_of([&] { recover_multiplier(d, off); }), ErrorKind::kConsistency);
  EXPECT_EQ(recover_multiplier(ConstrainedDAE{d.L, ComplexMatrix(0, 6), d.x0}, d.x0).size(), 0);
}

TEST(RandomDae, DeterministicAndValid) {
  const ConstrainedDAE a = random_dae(5, 2, 99), b = random_dae(5, 2, 99);
  EXPECT_EQ(a.L, b.L);
  EXPECT_EQ(a.x0, b.x0);
  EXPECT_TRUE(validate(a).ok());
  EXPECT_NEAR(a.x0.norm(), 1.0, 1e-14);
}

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

#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "zenodae/matcore.hpp"

namespace zenodae {

/// Constrained autonomous linear DAE
///
///     x' = L x + C^dagger lambda,   C x = 0,   x(0) = x0 in ker(C).
///
/// A plain aggregate: `make_dae` is the checked constructor, `validate` the diagnostic.
struct ConstrainedDAE {
  ComplexMatrix L;
  ComplexMatrix C;
  ComplexVector x0;

  Index n() const { return L.rows(); }
  Index m() const { return C.rows(); }
};

/// Schur-reduced form x' = (Pi L Pi) x on ker(C).
struct ReducedSystem {
  ComplexMatrix generator;
  ComplexMatrix projector;
  ComplexVector x0;
};

struct ValidationReport {
  double sigma_min = std::numeric_limits<double>::infinity();
  double constraint_residual = 0.0;
  bool shapes_ok = true;
  bool full_row_rank = true;
  bool consistent = true;

  bool ok() const { return shapes_ok && full_row_rank && consistent; }
  std::string summary() const;
};

ValidationReport validate(const ConstrainedDAE& dae);

/// Checked constructor. Initial data with ||C x0|| <= settings().projection_tol is replaced by
/// Pi x0; anything further from ker(C) is rejected with a consistency error.
ConstrainedDAE make_dae(ComplexMatrix L, ComplexMatrix C, ComplexVector x0);

/// x' = L x + G mu, C x = 0 with Range(G) = Range(C^dagger) and C G invertible. Writing
/// G = C^dagger T the multiplier change lambda = T mu leaves (L, C) unchanged.
ConstrainedDAE from_semi_explicit(const ComplexMatrix& L, const ComplexMatrix& G, const ComplexMatrix& C,
                                  const ComplexVector& x0);

/// Index-1 block system [I 0; 0 0] x' = [A11 A12; A21 A22] x rewritten with
/// C = [A21 A22] and the second block row of L obtained by differentiating the constraint.
ConstrainedDAE from_index1(const ComplexMatrix& A11, const ComplexMatrix& A12, const ComplexMatrix& A21,
                           const ComplexMatrix& A22, const ComplexVector& x0);

/// Seeded test instance: Gaussian L scaled by 1/sqrt(n), Gaussian C, unit x0 in ker(C).
ConstrainedDAE random_dae(Index n, Index m, std::uint64_t seed);

ReducedSystem schur_reduce(const ConstrainedDAE& dae);

/// e^{t Pi L Pi} x0.
ComplexVector reference_solve(const ReducedSystem& red, double t);

/// lambda = -(C C^dagger)^{-1} C L x for x in ker(C).
ComplexVector recover_multiplier(const ConstrainedDAE& dae, const ComplexVector& x);

}  // namespace zenodae

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

#include <string>
#include <vector>

#include "zenodae/dae.hpp"
#include "zenodae/matcore.hpp"

namespace zenodae {

/// L = -iH + K with H = i(L - L^dagger)/2 and K = (L + L^dagger)/2, both Hermitian.
struct HermitianSplit {
  ComplexMatrix H;
  ComplexMatrix K;
};

HermitianSplit hermitian_split(const ComplexMatrix& L);

/// How the lifting state |r> is built on the ancilla grid p_j = j/M.
enum class LiftingRule {
  // Solves (theta F r)_j = r_j on rows 0..M-1, the discrete relation that makes the low
  // moments <l|(theta F)^k|r> exactly one.
  kDiscreteRecurrence,
  // r_j ∝ p_j^{3/2} sqrt(w_j). Only approximately moment matching (errors ~ 1/(16 j*^2)).
  kClosedForm,
};

struct AncillaOptions {
  double theta = 0.5;
  LiftingRule lifting = LiftingRule::kDiscreteRecurrence;
};

/// Truncated moment-matching ancilla on M+1 grid points.
struct MomentAncilla {
  Index M = 0;
  double delta = 0.0;
  double theta = 0.5;
  ComplexMatrix F;     // tridiagonal, F^dagger = -F
  RealVector weights;  // trapezoidal
  ComplexVector r;     // lifting state, unit norm
  ComplexVector l;     // recovery functional coefficients, <l|r> = 1
  Index jstar = 0;
  Index nominal_order = 0;  // M - jstar - 1
  Index exact_order = -1;   // largest k with |<l|(theta F)^j|r> - 1| <= moment_tol for all j <= k
  RealVector moment_errors;
  std::string warning;

  Index dim() const { return M + 1; }
  ComplexMatrix generator() const { return theta * F; }
  bool order_deficient() const { return exact_order < nominal_order; }
};

Index default_jstar(Index M);

MomentAncilla build_ancilla(Index M, Index jstar, const AncillaOptions& options = {});
inline MomentAncilla build_ancilla(Index M) { return build_ancilla(M, default_jstar(M)); }

/// <l|(theta F)^k|r> for k = 0..kmax, accumulated in extended precision.
ComplexVector ancilla_moments(const MomentAncilla& anc, Index kmax);

/// Ancilla ⊗ system dilation of a constrained DAE, kept in factored form.
///
/// States are ancilla-major: entry (a * n + i) holds ancilla level a, system component i. The
/// dense operators Hhat = I⊗H + i(theta F)⊗K, D = I⊗C and P = I⊗Pi are assembled on request.
struct DilatedSystem {
  ComplexMatrix H;
  ComplexMatrix K;
  ComplexMatrix ancilla_generator;  // theta F
  ComplexMatrix C;
  ComplexMatrix Pi;
  ComplexVector psi0;

  Index ancilla_dim() const { return ancilla_generator.rows(); }
  Index system_dim() const { return H.rows(); }
  Index dim() const { return ancilla_dim() * system_dim(); }

  ComplexMatrix hhat() const;
  ComplexMatrix lifted_constraint() const;
  ComplexMatrix lifted_projector() const;

  /// P Hhat P psi using the Kronecker structure.
  ComplexVector apply_compressed(const ComplexVector& psi) const;
  /// D psi using the Kronecker structure.
  ComplexVector apply_constraint(const ComplexVector& psi) const;
  /// Upper bound on ||P Hhat P||_2.
  double compressed_norm_bound() const;

  DilatedSystem with_initial_state(const MomentAncilla& anc, const ComplexVector& x0) const;
};

DilatedSystem build_dilated(const ConstrainedDAE& dae, const MomentAncilla& anc);

/// Psi(t) = exp(-i t P Hhat P) psi0. Dense below settings().dense_evolve_dim, structured above.
ComplexVector evolve_dilated(const DilatedSystem& sys, double t);
ComplexVector evolve_dilated_dense(const DilatedSystem& sys, double t);
ComplexVector evolve_dilated_structured(const DilatedSystem& sys, double t);

/// (<l| ⊗ I) psi.
ComplexVector recover(const DilatedSystem& sys, const MomentAncilla& anc, const ComplexVector& psi);

/// ||l|| ||psi|| / ||x||: how much the unnormalized recovery functional magnifies the state.
double amplification(const MomentAncilla& anc, const ComplexVector& psi, const ComplexVector& x);

struct DilationErrorRow {
  double t = 0.0;
  double error = 0.0;
  double amplification = 0.0;
  double constraint_residual = 0.0;  // |D Psi(t)|
};

std::vector<DilationErrorRow> dilation_error_curve(const ConstrainedDAE& dae, const MomentAncilla& anc,
                                                   const std::vector<double>& times);

/// Evolves over [0, t] in `steps` equal pieces, re-lifting |r> ⊗ x after each piece.
ComplexVector ancilla_refresh_evolve(const ConstrainedDAE& dae, const MomentAncilla& anc, double t, Index steps);

}  // namespace zenodae

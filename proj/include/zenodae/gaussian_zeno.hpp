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

#include "zenodae/matcore.hpp"
#include "zenodae/stokes_mac.hpp"

namespace zenodae {

/// Discretized normalized Gaussian |g> on a symmetric uniform grid, with F|q> = q|q>.
struct GaussianAncilla {
  Index Q = 0;
  double qmax = 0.0;
  RealVector nodes;
  RealVector weights;  // trapezoidal
  ComplexVector g;
  Index m_max = 0;  // largest m with every even moment up to 2m within gauss_tol

  Index dim() const { return Q; }
  /// diag(nodes).
  ComplexMatrix Fq() const;
};

/// Q >= 16 even, qmax >= 6.
GaussianAncilla gaussian_ancilla(Index Q = 256, double qmax = 12.0);

/// <g|F^k|g>. Odd k gives exactly 0.
double gaussian_moment(const GaussianAncilla& anc, Index k);

/// <g|e^{-iuF}|g>, which approximates e^{-u^2}.
Complex gaussian_characteristic(const GaussianAncilla& anc, double u);

/// (<g| ⊗ I) e^{-i sqrt(t) F⊗B} (|g> ⊗ I) for Hermitian B, an approximation of e^{-t B^2}.
ComplexMatrix heat_via_dilation(const ComplexMatrix& B, const GaussianAncilla& anc, double t);

/// Gauss-Hermite rule for e^{-tB^2} ≈ sum_m c_m e^{-i k_m B}.
struct LchsQuadrature {
  double t = 0.0;
  Index Mq = 0;
  RealVector k;
  RealVector c;
  double kmax = 0.0;
};

LchsQuadrature lchs_nodes(double t, Index Mq);

/// sum_m c_m e^{-i k_m B} v for Hermitian B.
ComplexVector apply_lchs(const ComplexMatrix& B, const LchsQuadrature& quad, const ComplexVector& v);

/// 1 / ||e^{-t Sh} u|| with u the normalized projection of u0.
double chi_factor(const StokesOperators& ops, const ComplexVector& u0, double t);

/// (P e^{-i k D / r} P)^r with D the unprojected Dirac operator and P = diag(PiH, I).
ComplexMatrix zeno_dirac_product(const StokesOperators& ops, double k, Index r);

}  // namespace zenodae

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
#include "zenodae/moment_dilation.hpp"

namespace zenodae {

/// (P e^{-i t Hhat / N} P)^N psi0, the repeated-projection reading of the compressed dynamics.
ComplexVector zeno_product(const DilatedSystem& sys, double t, Index N);

/// Parameters of the even gap filter used to build the kernel projector of a constraint whose
/// singular values lie in {0} ∪ [gamma, alpha].
struct PolyProjectorSpec {
  double alpha = 1.0;
  double gamma = 1.0;
  double eps = 1e-6;
  Index degree = 1;  // polynomial degree in x = sigma / alpha

  /// Chebyshev degree of the filter in x^2.
  Index chebyshev_degree() const { return degree / 2; }
};

/// q = ceil((alpha / gamma) ln(2 / eps)) + 1.
Index poly_projector_degree(double alpha, double gamma, double eps);

/// Validated spec with the degree from `poly_projector_degree`.
PolyProjectorSpec make_poly_projector_spec(double alpha, double gamma, double eps);

/// p(x) = T_k(s(x^2)) / T_k(s(0)) with s mapping [(gamma/alpha)^2, 1] onto [-1, 1]; p(0) = 1.
double filter_value(const PolyProjectorSpec& spec, double x);

/// max |p(x)| over `samples` uniform points of [gamma/alpha, 1].
double filter_sup_on_gap(const PolyProjectorSpec& spec, Index samples = 10000);

/// sum_j p(sigma_j / alpha) |v_j><v_j| over the right singular vectors of c.
ComplexMatrix poly_projector_apply(const ComplexMatrix& c, const PolyProjectorSpec& spec);

/// Smallest even degree in x for which the filter stays below eps on [1/kappa, 1].
Index minimal_filter_degree(double kappa, double eps);

}  // namespace zenodae

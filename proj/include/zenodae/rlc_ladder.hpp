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
#include <vector>

#include "zenodae/dae.hpp"
#include "zenodae/moment_dilation.hpp"

namespace zenodae {

/// Homogeneous N-section RLC ladder in modified nodal analysis.
struct RlcParams {
  Index N = 4;
  double R = 0.2;
  double Lind = 1.0;
  double Ccap = 1.0;
  double Gcond = 0.05;
  std::uint64_t seed = 42;
};

/// Upper bidiagonal K_N with -1 on the diagonal and 1 above it.
ComplexMatrix rlc_incidence(Index N);

/// State (v0, v_1..v_N, i_1..i_N, j_s); constraints v0 = 0 and i_1 - j_s = 0. Node equations are
/// scaled by 1/Ccap and branch equations by 1/Lind. x0 is a seeded unit vector in ker(D_N).
ConstrainedDAE build_rlc(const RlcParams& params);

struct RlcCheckRow {
  double t = 0.0;
  double error = 0.0;
  double constraint_residual = 0.0;
};

/// Moment-dilation pipeline on the ladder against the reduced exponential.
std::vector<RlcCheckRow> rlc_dilation_check(const RlcParams& params, Index M, Index jstar,
                                            const std::vector<double>& times);

}  // namespace zenodae

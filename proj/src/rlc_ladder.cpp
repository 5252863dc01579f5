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

#include "zenodae/rlc_ladder.hpp"

#include <random>
#include <sstream>

namespace zenodae {

ComplexMatrix rlc_incidence(Index N) {
  ComplexMatrix k = ComplexMatrix::Zero(N, N);
  for (Index j = 0; j < N; ++j) {
    k(j, j) = -1.0;
    if (j + 1 < N) k(j, j + 1) = 1.0;
  }
  return k;
}

ConstrainedDAE build_rlc(const RlcParams& p) {
  if (p.N < 1) throw Error(ErrorKind::kParameter, "ladder needs N >= 1");
  if (!(p.R > 0.0 && p.Lind > 0.0 && p.Ccap > 0.0 && p.Gcond > 0.0)) {
    std::ostringstream os;
    os << "ladder parameters must be positive (R=" << p.R << " L=" << p.Lind << " C=" << p.Ccap << " G=" << p.Gcond
       << ")";
    throw Error(ErrorKind::kParameter, os.str());
  }
  const Index N = p.N;
  const Index n = 2 * N + 2;
  const Index v = 1;
  const Index cur = N + 1;
  const Index js = 2 * N + 1;
  const ComplexMatrix k = rlc_incidence(N);

  ComplexMatrix L = ComplexMatrix::Zero(n, n);
  L.block(v, v, N, N) = ComplexMatrix::Identity(N, N) * (-p.Gcond / p.Ccap);
  L.block(v, cur, N, N) = -k / p.Ccap;
  L(cur, 0) = 1.0 / p.Lind;
  L.block(cur, v, N, N) = k.transpose() / p.Lind;
  L.block(cur, cur, N, N) = ComplexMatrix::Identity(N, N) * (-p.R / p.Lind);

  ComplexMatrix C = ComplexMatrix::Zero(2, n);
  C(0, 0) = 1.0;
  C(1, cur) = 1.0;
  C(1, js) = -1.0;

  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> normal;
  ComplexVector x(n);
  for (Index j = 0; j < n; ++j) x(j) = normal(rng);
  x = null_projector(C) * x;
  x /= x.norm();
  return make_dae(std::move(L), std::move(C), std::move(x));
}

std::vector<RlcCheckRow> rlc_dilation_check(const RlcParams& params, Index M, Index jstar,
                                            const std::vector<double>& times) {
  const ConstrainedDAE dae = build_rlc(params);
  const MomentAncilla anc = build_ancilla(M, jstar);
  std::vector<RlcCheckRow> rows;
  for (const DilationErrorRow& r : dilation_error_curve(dae, anc, times)) {
    rows.push_back(RlcCheckRow{r.t, r.error, r.constraint_residual});
  }
  return rows;
}

}  // namespace zenodae

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

#include "zenodae/matcore.hpp"

namespace zenodae {

/// Inputs of the asymptotic cost formulas. Every hidden constant is 1 and every log is natural.
/// Nonpositive alphaH / alphaD select the mesh defaults cH / h^2 and cD / h.
struct CostInputs {
  double t = 1.0;
  double eps = 1e-6;
  double h = 1.0 / 16.0;
  int d = 2;
  double alphaH = 0.0;
  double alphaD = 0.0;
  double gamma = 1.0;
  double TH = 1.0;
  double TG = 1.0;
  double TD = 1.0;
  double chi = 1.0;
  double cH = 8.0;
  double cD = 4.0;

  double alpha_h() const { return alphaH > 0.0 ? alphaH : cH / (h * h); }
  double alpha_d() const { return alphaD > 0.0 ? alphaD : cD / h; }
};

void validate(const CostInputs& in);

struct DirectCost {
  double queries = 0.0;
  double gates = 0.0;
  Index p_degree = 0;
};

/// Q_sim = aT + ln(1/eps) / ln(e + ln(1/eps) / aT) with aT = alphaH t;
/// p = ceil((alphaD / gamma) ln(aT / eps)); queries = Q_sim (1 + p); gates = Q_sim (TH + p TD).
DirectCost direct_cost(const CostInputs& in);

struct GaussianZenoCost {
  double gates = 0.0;  // sqrt(t) / h (TG + TD / h)
  double prep = 0.0;   // chi sqrt(t) / h^2
};

GaussianZenoCost gaussian_zeno_cost(const CostInputs& in);

/// t h^{-d-1}.
double classical_cost(const CostInputs& in);

struct CrossoverRow {
  CostInputs in;
  DirectCost direct;
  GaussianZenoCost gz;
  double classical = 0.0;
  bool quantum_cheaper = false;  // gz.prep < classical
};

/// Every (h, t) pair of the two grids, h outer, with the remaining fields taken from `base`.
std::vector<CrossoverRow> crossover_report(const CostInputs& base, const std::vector<double>& hs,
                                           const std::vector<double>& ts);

/// Comment line documenting a crossover table.
std::string crossover_preamble();

}  // namespace zenodae

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

#include "zenodae/cost_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace zenodae {

void validate(const CostInputs& in) {
  std::ostringstream os;
  if (!(in.t > 0.0)) os << "t must be positive; ";
  if (!(in.eps > 0.0 && in.eps < 1.0)) os << "eps must lie in (0, 1); ";
  if (!(in.h > 0.0)) os << "h must be positive; ";
  if (in.d != 2 && in.d != 3) os << "d must be 2 or 3; ";
  if (!(in.gamma > 0.0)) os << "gamma must be positive; ";
  if (!(in.TH > 0.0 && in.TG > 0.0 && in.TD > 0.0)) os << "gate costs must be positive; ";
  if (!(in.chi >= 1.0)) os << "chi must be >= 1; ";
  if (!(in.cH > 0.0 && in.cD > 0.0)) os << "norm constants must be positive; ";
  if (!os.str().empty()) throw Error(ErrorKind::kParameter, os.str());
}

DirectCost direct_cost(const CostInputs& in) {
  validate(in);
  const double at = in.alpha_h() * in.t;
  const double log_eps = std::log(1.0 / in.eps);
  const double qsim = at + log_eps / std::log(std::numbers::e + log_eps / at);
  const double p = std::ceil(in.alpha_d() / in.gamma * std::log(at / in.eps));
  DirectCost out;
  out.p_degree = p > 0.0 ? static_cast<Index>(p) : 0;
  const double pd = static_cast<double>(out.p_degree);
  out.queries = qsim * (1.0 + pd);
  out.gates = qsim * (in.TH + pd * in.TD);
  return out;
}

GaussianZenoCost gaussian_zeno_cost(const CostInputs& in) {
  validate(in);
  const double st = std::sqrt(in.t);
  GaussianZenoCost out;
  out.gates = st / in.h * (in.TG + in.TD / in.h);
  out.prep = in.chi * st / (in.h * in.h);
  return out;
}

double classical_cost(const CostInputs& in) {
  validate(in);
  return in.t * std::pow(in.h, -static_cast<double>(in.d) - 1.0);
}

std::vector<CrossoverRow> crossover_report(const CostInputs& base, const std::vector<double>& hs,
                                           const std::vector<double>& ts) {
  if (hs.empty() || ts.empty()) throw Error(ErrorKind::kParameter, "crossover grids must be nonempty");
  std::vector<CrossoverRow> rows;
  rows.reserve(hs.size() * ts.size());
  for (double h : hs)
    for (double t : ts) {
      CrossoverRow row;
      row.in = base;
      row.in.h = h;
      row.in.t = t;
      row.direct = direct_cost(row.in);
      row.gz = gaussian_zeno_cost(row.in);
      row.classical = classical_cost(row.in);
      row.quantum_cheaper = row.gz.prep < row.classical;
      rows.push_back(row);
    }
  return rows;
}

std::string crossover_preamble() {
  return "# heuristic comparison (constants 1, natural logs), not an end-to-end separation; "
         "verdict=quantum when chi*sqrt(t)/h^2 < t*h^(-d-1)\n";
}

}  // namespace zenodae

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

#include "zenodae/zeno.hpp"

#include <cmath>
#include <sstream>

namespace zenodae {

namespace {

void check_spec(double alpha, double gamma, double eps) {
  if (!(gamma > 0.0) || !(gamma <= alpha) || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << "need 0 < gamma <= alpha, got gamma=" << gamma << " alpha=" << alpha;
    throw Error(ErrorKind::kParameter, os.str());
  }
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::kParameter, "eps must lie in (0, 1)");
}

// T_k(s) / T_k(s0) for s0 > 1 without overflow.
double chebyshev_ratio(Index k, double s, double s0) {
  const double kd = static_cast<double>(k);
  const double a0 = std::acosh(s0);
  if (std::abs(s) <= 1.0) {
    const double x = kd * a0;
    return std::cos(kd * std::acos(s)) * 2.0 * std::exp(-x) / (1.0 + std::exp(-2.0 * x));
  }
  const double a = std::acosh(std::abs(s));
  const double sign = (s < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
  return sign * std::exp(kd * (a - a0)) * (1.0 + std::exp(-2.0 * kd * a)) / (1.0 + std::exp(-2.0 * kd * a0));
}

}  // namespace

ComplexVector zeno_product(const DilatedSystem& sys, double t, Index N) {
  if (N < 1) throw Error(ErrorKind::kParameter, "Zeno product needs N >= 1");
  if (!(t >= 0.0)) throw Error(ErrorKind::kParameter, "time must be nonnegative");
  const Complex i(0.0, 1.0);
  const ComplexMatrix p = sys.lifted_projector();
  const ComplexMatrix step = p * matexp(((-i * t / static_cast<double>(N)) * sys.hhat()).eval()) * p;
  ComplexVector psi = sys.psi0;
  for (Index k = 0; k < N; ++k) psi = step * psi;
  return psi;
}

Index poly_projector_degree(double alpha, double gamma, double eps) {
  check_spec(alpha, gamma, eps);
  return static_cast<Index>(std::ceil(alpha / gamma * std::log(2.0 / eps))) + 1;
}

PolyProjectorSpec make_poly_projector_spec(double alpha, double gamma, double eps) {
  return PolyProjectorSpec{alpha, gamma, eps, poly_projector_degree(alpha, gamma, eps)};
}

double filter_value(const PolyProjectorSpec& spec, double x) {
  const double y = x * x;
  if (y == 0.0) return 1.0;
  const Index k = spec.chebyshev_degree();
  const double g2 = (spec.gamma / spec.alpha) * (spec.gamma / spec.alpha);
  if (g2 >= 1.0) return std::pow(1.0 - y, static_cast<double>(k));
  const double s = (1.0 + g2 - 2.0 * y) / (1.0 - g2);
  const double s0 = (1.0 + g2) / (1.0 - g2);
  return chebyshev_ratio(k, s, s0);
}

double filter_sup_on_gap(const PolyProjectorSpec& spec, Index samples) {
  const double lo = spec.gamma / spec.alpha;
  double sup = 0.0;
  for (Index j = 0; j < samples; ++j) {
    const double x = samples == 1 ? lo : lo + (1.0 - lo) * static_cast<double>(j) / static_cast<double>(samples - 1);
    sup = std::max(sup, std::abs(filter_value(spec, x)));
  }
  return sup;
}

ComplexMatrix poly_projector_apply(const ComplexMatrix& c, const PolyProjectorSpec& spec) {
  check_spec(spec.alpha, spec.gamma, spec.eps);
  require_finite(c, "constraint");
  const Index n = c.cols();
  require_dense_capacity(n, n, "polynomial projector");
  if (c.rows() == 0) return ComplexMatrix::Identity(n, n);

  Eigen::BDCSVD<ComplexMatrix> svd(c, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();
  RealVector weights = RealVector::Ones(n);
  const double zero_tol = settings().rank_tol * std::max(1.0, spec.alpha);
  for (Index j = 0; j < sigma.size(); ++j) {
    const double s = sigma(j);
    if (s <= zero_tol) continue;
    if (s < spec.gamma * (1.0 - 1e-9) || s > spec.alpha * (1.0 + 1e-9)) {
      std::ostringstream os;
      os << "singular value " << s << " lies outside {0} U [" << spec.gamma << ", " << spec.alpha << "]";
      throw Error(ErrorKind::kGap, os.str());
    }
    weights(j) = filter_value(spec, s / spec.alpha);
  }
  const ComplexMatrix& v = svd.matrixV();
  return v * weights.cast<Complex>().asDiagonal() * v.adjoint();
}

Index minimal_filter_degree(double kappa, double eps) {
  check_spec(kappa, 1.0, eps);
  if (kappa == 1.0) return 2;
  const double g2 = 1.0 / (kappa * kappa);
  const double a0 = std::acosh((1.0 + g2) / (1.0 - g2));
  for (Index k = 1;; ++k) {
    const double x = static_cast<double>(k) * a0;
    if (2.0 * std::exp(-x) / (1.0 + std::exp(-2.0 * x)) <= eps) return 2 * k;
  }
}

}  // namespace zenodae

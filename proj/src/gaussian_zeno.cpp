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

#include "zenodae/gaussian_zeno.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

namespace zenodae {

namespace {

void require_hermitian(const ComplexMatrix& b, const char* what) {
  require_square(b, what);
  const double scale = std::max(1.0, b.norm());
  if (hermitian_defect(b) > 1e-12 * scale) {
    std::ostringstream os;
    os << what << " is not Hermitian (defect " << hermitian_defect(b) << ")";
    throw Error(ErrorKind::kStructure, os.str());
  }
}

// (2m)! / m!
double even_moment_exact(Index m) {
  double v = 1.0;
  for (Index j = m + 1; j <= 2 * m; ++j) v *= static_cast<double>(j);
  return v;
}

}  // namespace

ComplexMatrix GaussianAncilla::Fq() const { return nodes.cast<Complex>().asDiagonal(); }

GaussianAncilla gaussian_ancilla(Index Q, double qmax) {
  if (Q < 16 || Q % 2 != 0) {
    std::ostringstream os;
    os << "Gaussian ancilla needs an even Q >= 16, got " << Q;
    throw Error(ErrorKind::kParameter, os.str());
  }
  if (!(qmax >= 6.0) || !std::isfinite(qmax)) throw Error(ErrorKind::kParameter, "Gaussian ancilla needs qmax >= 6");

  GaussianAncilla anc;
  anc.Q = Q;
  anc.qmax = qmax;
  anc.nodes.resize(Q);
  anc.weights.resize(Q);
  anc.g.resize(Q);
  const double dq = 2.0 * qmax / static_cast<double>(Q - 1);
  const double norm = std::pow(4.0 * std::numbers::pi, -0.25);
  // Fill the negative half and mirror so that the grid is exactly symmetric.
  for (Index j = 0; j < Q / 2; ++j) {
    const double q = -qmax + static_cast<double>(j) * dq;
    const double w = (j == 0) ? 0.5 * dq : dq;
    const double gj = norm * std::exp(-q * q / 8.0) * std::sqrt(w);
    anc.nodes(j) = q;
    anc.nodes(Q - 1 - j) = -q;
    anc.weights(j) = anc.weights(Q - 1 - j) = w;
    anc.g(j) = anc.g(Q - 1 - j) = gj;
  }
  anc.g /= anc.g.norm();

  const double tol = settings().gauss_tol;
  anc.m_max = -1;
  for (Index m = 0; m <= 40; ++m) {
    const double exact = even_moment_exact(m);
    if (std::abs(gaussian_moment(anc, 2 * m) - exact) > tol) break;
    anc.m_max = m;
  }
  return anc;
}

double gaussian_moment(const GaussianAncilla& anc, Index k) {
  if (k < 0) throw Error(ErrorKind::kParameter, "moment order must be nonnegative");
  if (k % 2 == 1) return 0.0;
  // Pairwise over mirrored nodes, smallest terms first.
  double sum = 0.0;
  for (Index j = 0; j < anc.Q / 2; ++j) {
    const double w = std::norm(anc.g(j));
    sum += 2.0 * w * std::pow(anc.nodes(j), static_cast<double>(k));
  }
  return sum;
}

Complex gaussian_characteristic(const GaussianAncilla& anc, double u) {
  double sum = 0.0;
  for (Index j = 0; j < anc.Q / 2; ++j) sum += 2.0 * std::norm(anc.g(j)) * std::cos(u * anc.nodes(j));
  return Complex(sum, 0.0);
}

ComplexMatrix heat_via_dilation(const ComplexMatrix& B, const GaussianAncilla& anc, double t) {
  require_hermitian(B, "heat generator");
  require_finite(B, "heat generator");
  if (!(t >= 0.0)) throw Error(ErrorKind::kParameter, "time must be nonnegative");
  require_dense_capacity(B.rows(), B.cols(), "Gaussian dilation block");
  const Index n = B.rows();
  if (t == 0.0) return ComplexMatrix::Identity(n, n);

  // F is diagonal, so e^{-i sqrt(t) F⊗B} is block diagonal with blocks e^{-i sqrt(t) q_j B}.
  // Mirrored nodes give adjoint blocks.
  const Complex i(0.0, 1.0);
  const double st = std::sqrt(t);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < anc.Q / 2; ++j) {
    const ComplexMatrix e = matexp(((-i * (st * anc.nodes(j))) * B).eval());
    out += std::norm(anc.g(j)) * (e + e.adjoint());
  }
  return out;
}

LchsQuadrature lchs_nodes(double t, Index Mq) {
  if (Mq < 1) throw Error(ErrorKind::kParameter, "quadrature needs at least one node");
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::kParameter, "time must be nonnegative");

  // Golub-Welsch for the weight e^{-s^2}: zero diagonal, off-diagonal sqrt(j / 2).
  RealVector sub = RealVector::Zero(std::max<Index>(Mq - 1, 0));
  for (Index j = 1; j < Mq; ++j) sub(j - 1) = std::sqrt(static_cast<double>(j) / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(RealVector::Zero(Mq), sub, Eigen::ComputeEigenvectors);

  LchsQuadrature quad;
  quad.t = t;
  quad.Mq = Mq;
  quad.k.resize(Mq);
  quad.c.resize(Mq);
  const double scale = 2.0 * std::sqrt(t);
  for (Index m = 0; m < Mq; ++m) {
    // Symmetrize against eigensolver roundoff.
    const Index mirror = Mq - 1 - m;
    const double s = 0.5 * (es.eigenvalues()(m) - es.eigenvalues()(mirror));
    const double v = es.eigenvectors()(0, m);
    const double vm = es.eigenvectors()(0, mirror);
    quad.k(m) = scale * s;
    quad.c(m) = 0.5 * (v * v + vm * vm);
  }
  quad.c /= quad.c.sum();
  quad.kmax = quad.k.cwiseAbs().maxCoeff();
  return quad;
}

ComplexVector apply_lchs(const ComplexMatrix& B, const LchsQuadrature& quad, const ComplexVector& v) {
  require_hermitian(B, "LCHS generator");
  if (v.size() != B.rows()) throw Error(ErrorKind::kShape, "LCHS vector has the wrong dimension");
  const Complex i(0.0, 1.0);
  ComplexVector out = ComplexVector::Zero(v.size());
  for (Index m = 0; m < quad.Mq; ++m) {
    if (quad.k(m) == 0.0) {
      out += quad.c(m) * v;
      continue;
    }
    out += quad.c(m) * (matexp(((-i * quad.k(m)) * B).eval()) * v);
  }
  return out;
}

double chi_factor(const StokesOperators& ops, const ComplexVector& u0, double t) {
  if (u0.size() != ops.velocity_dim()) throw Error(ErrorKind::kShape, "initial velocity has the wrong dimension");
  if (!(t >= 0.0)) throw Error(ErrorKind::kParameter, "time must be nonnegative");
  ComplexVector u = ops.PiH * u0;
  const double norm = u.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::kParameter, "initial velocity has no divergence-free part");
  u /= norm;
  if (t == 0.0) return 1.0;
  const double decayed = (matexp((-t * ops.Sh).eval()) * u).norm();
  return std::max(1.0, 1.0 / decayed);
}

ComplexMatrix zeno_dirac_product(const StokesOperators& ops, double k, Index r) {
  if (r < 1) throw Error(ErrorKind::kParameter, "Dirac product needs r >= 1");
  const Complex i(0.0, 1.0);
  const ComplexMatrix p = ops.lifted_projector();
  ComplexMatrix base = p * matexp(((-i * k / static_cast<double>(r)) * ops.dirac()).eval()) * p;
  ComplexMatrix acc = p;
  for (Index e = r; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    if (e > 1) base = base * base;
  }
  return acc;
}

}  // namespace zenodae

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

#include "zenodae/moment_dilation.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace zenodae {

namespace {

using LongComplex = std::complex<long double>;

double superdiagonal(Index j) { return j == 0 ? 1.0 / (4.0 * std::sqrt(2.0)) : (2.0 * j + 1.0) / 4.0; }

Eigen::Map<const ComplexMatrix> as_blocks(const ComplexVector& psi, Index n, Index a) {
  return Eigen::Map<const ComplexMatrix>(psi.data(), n, a);
}

}  // namespace

HermitianSplit hermitian_split(const ComplexMatrix& L) {
  require_square(L, "generator");
  const Complex i(0.0, 1.0);
  return HermitianSplit{i * (L - L.adjoint()) / 2.0, (L + L.adjoint()) / 2.0};
}

Index default_jstar(Index M) { return static_cast<Index>(std::lround(static_cast<double>(M) / 2.0)); }

MomentAncilla build_ancilla(Index M, Index jstar, const AncillaOptions& options) {
  if (M < 4) throw Error(ErrorKind::kParameter, "ancilla grid needs M >= 4");
  if (jstar <= 0 || jstar >= M) {
    std::ostringstream os;
    os << "jstar = " << jstar << " must satisfy 0 < jstar < M = " << M;
    throw Error(ErrorKind::kParameter, os.str());
  }
  if (!(options.theta > 0.0)) throw Error(ErrorKind::kParameter, "theta must be positive");

  MomentAncilla anc;
  anc.M = M;
  anc.delta = 1.0 / static_cast<double>(M);
  anc.theta = options.theta;
  anc.jstar = jstar;
  anc.nominal_order = M - jstar - 1;

  const Index n = M + 1;
  anc.weights = RealVector::Constant(n, anc.delta);
  anc.weights(0) = anc.weights(M) = anc.delta / 2.0;

  anc.F = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < M; ++j) {
    anc.F(j, j + 1) = superdiagonal(j);
    anc.F(j + 1, j) = -superdiagonal(j);
  }

  std::vector<long double> r(n, 0.0L);
  if (options.lifting == LiftingRule::kDiscreteRecurrence) {
    const long double theta = options.theta;
    r[1] = 1.0L;
    r[0] = theta * static_cast<long double>(superdiagonal(0)) * r[1];
    for (Index j = 1; j < M; ++j) {
      const long double up = superdiagonal(j);
      const long double down = superdiagonal(j - 1);
      r[j + 1] = (r[j] / theta + down * r[j - 1]) / up;
    }
  } else {
    for (Index j = 0; j <= M; ++j) {
      const long double p = static_cast<long double>(j) * anc.delta;
      r[j] = std::pow(p, 1.5L) * std::sqrt(static_cast<long double>(anc.weights(j)));
    }
  }
  long double norm = 0.0L;
  for (long double v : r) norm += v * v;
  norm = std::sqrt(norm);
  anc.r.resize(n);
  for (Index j = 0; j < n; ++j) anc.r(j) = static_cast<double>(r[j] / norm);

  anc.l = ComplexVector::Zero(n);
  anc.l(jstar) = 1.0 / anc.r(jstar);

  const ComplexVector moments = ancilla_moments(anc, M + 1);
  anc.moment_errors = (moments.array() - Complex(1.0)).abs();
  anc.exact_order = -1;
  while (anc.exact_order + 1 < anc.moment_errors.size() &&
         anc.moment_errors(anc.exact_order + 1) <= settings().moment_tol)
    ++anc.exact_order;
  if (anc.order_deficient()) {
    std::ostringstream os;
    os << "measured exact moment order " << anc.exact_order << " is below the nominal " << anc.nominal_order
       << " (M=" << M << ", jstar=" << jstar << ", moment_tol=" << settings().moment_tol << ")";
    anc.warning = os.str();
  }
  return anc;
}

ComplexVector ancilla_moments(const MomentAncilla& anc, Index kmax) {
  const Index n = anc.dim();
  DenseMatrix<LongComplex> gen = anc.F.cast<LongComplex>() * static_cast<long double>(anc.theta);
  DenseVector<LongComplex> v = anc.r.cast<LongComplex>();
  const DenseVector<LongComplex> l = anc.l.cast<LongComplex>();
  ComplexVector out(kmax + 1);
  for (Index k = 0; k <= kmax; ++k) {
    LongComplex acc = 0.0L;
    for (Index j = 0; j < n; ++j) acc += l(j) * v(j);
    out(k) = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    v = (gen * v).eval();
  }
  return out;
}

ComplexMatrix DilatedSystem::hhat() const {
  const Complex i(0.0, 1.0);
  const ComplexMatrix id = ComplexMatrix::Identity(ancilla_dim(), ancilla_dim());
  return kron(id, H) + i * kron(ancilla_generator, K);
}

ComplexMatrix DilatedSystem::lifted_constraint() const {
  return kron(ComplexMatrix::Identity(ancilla_dim(), ancilla_dim()), C);
}

ComplexMatrix DilatedSystem::lifted_projector() const {
  return kron(ComplexMatrix::Identity(ancilla_dim(), ancilla_dim()), Pi);
}

ComplexVector DilatedSystem::apply_compressed(const ComplexVector& psi) const {
  if (psi.size() != dim()) throw Error(ErrorKind::kShape, "dilated state has the wrong dimension");
  const Complex i(0.0, 1.0);
  const ComplexMatrix y = Pi * as_blocks(psi, system_dim(), ancilla_dim());
  const ComplexMatrix z = Pi * (H * y + i * (K * y) * ancilla_generator.transpose());
  return Eigen::Map<const ComplexVector>(z.data(), z.size());
}

ComplexVector DilatedSystem::apply_constraint(const ComplexVector& psi) const {
  if (psi.size() != dim()) throw Error(ErrorKind::kShape, "dilated state has the wrong dimension");
  const ComplexMatrix z = C * as_blocks(psi, system_dim(), ancilla_dim());
  return Eigen::Map<const ComplexVector>(z.data(), z.size());
}

double DilatedSystem::compressed_norm_bound() const {
  return spectral_norm(H) + spectral_norm(ancilla_generator) * spectral_norm(K);
}

DilatedSystem DilatedSystem::with_initial_state(const MomentAncilla& anc, const ComplexVector& x0) const {
  if (x0.size() != system_dim()) throw Error(ErrorKind::kShape, "initial state has the wrong dimension");
  DilatedSystem out = *this;
  const ComplexMatrix lifted = x0 * anc.r.transpose();
  out.psi0 = Eigen::Map<const ComplexVector>(lifted.data(), lifted.size());
  return out;
}

DilatedSystem build_dilated(const ConstrainedDAE& dae, const MomentAncilla& anc) {
  const ValidationReport report = validate(dae);
  if (!report.shapes_ok) throw Error(ErrorKind::kShape, "DAE shapes do not conform");
  if (!report.full_row_rank) throw Error(ErrorKind::kRank, report.summary());
  if (report.constraint_residual > settings().consistency_tol * std::max(1.0, dae.C.norm() * dae.x0.norm()))
    throw Error(ErrorKind::kConsistency, report.summary());
  if (anc.dim() * dae.n() > settings().max_state_dim) {
    std::ostringstream os;
    os << "dilated dimension " << anc.dim() * dae.n() << " exceeds the state cap " << settings().max_state_dim;
    throw Error(ErrorKind::kCapacity, os.str());
  }

  DilatedSystem sys;
  HermitianSplit split = hermitian_split(dae.L);
  sys.H = std::move(split.H);
  sys.K = std::move(split.K);
  sys.ancilla_generator = anc.generator();
  sys.C = dae.C;
  sys.Pi = null_projector(dae.C);

  const double skew_defect = (sys.ancilla_generator + sys.ancilla_generator.adjoint()).norm();
  if (skew_defect > 1e-14 * std::max(1.0, sys.ancilla_generator.norm()))
    throw Error(ErrorKind::kStructure, "ancilla operator is not skew-Hermitian");
  return sys.with_initial_state(anc, dae.x0);
}

ComplexVector evolve_dilated_dense(const DilatedSystem& sys, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::kParameter, "time must be nonnegative");
  const Complex i(0.0, 1.0);
  const ComplexMatrix p = sys.lifted_projector();
  const ComplexMatrix gen = (-i * t) * (p * sys.hhat() * p);
  return matexp(gen) * sys.psi0;
}

ComplexVector evolve_dilated_structured(const DilatedSystem& sys, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::kParameter, "time must be nonnegative");
  if (t == 0.0) return sys.psi0;
  const Complex scale(0.0, -t);
  return expm_action([&](const ComplexVector& x) -> ComplexVector { return scale * sys.apply_compressed(x); },
                     sys.psi0, t * sys.compressed_norm_bound());
}

ComplexVector evolve_dilated(const DilatedSystem& sys, double t) {
  if (sys.dim() <= settings().dense_evolve_dim) return evolve_dilated_dense(sys, t);
  return evolve_dilated_structured(sys, t);
}

ComplexVector recover(const DilatedSystem& sys, const MomentAncilla& anc, const ComplexVector& psi) {
  if (anc.dim() != sys.ancilla_dim() || psi.size() != sys.dim()) {
    std::ostringstream os;
    os << "cannot recover a state of dimension " << psi.size() << " with a " << anc.dim() << "-level ancilla and "
       << sys.system_dim() << " system components";
    throw Error(ErrorKind::kShape, os.str());
  }
  return as_blocks(psi, sys.system_dim(), sys.ancilla_dim()) * anc.l;
}

double amplification(const MomentAncilla& anc, const ComplexVector& psi, const ComplexVector& x) {
  const double xn = x.norm();
  if (xn == 0.0) return 0.0;
  return anc.l.norm() * psi.norm() / xn;
}

std::vector<DilationErrorRow> dilation_error_curve(const ConstrainedDAE& dae, const MomentAncilla& anc,
                                                   const std::vector<double>& times) {
  const ReducedSystem red = schur_reduce(dae);
  const DilatedSystem sys = build_dilated(dae, anc);
  std::vector<DilationErrorRow> rows;
  rows.reserve(times.size());
  for (double t : times) {
    const ComplexVector psi = evolve_dilated(sys, t);
    const ComplexVector x = recover(sys, anc, psi);
    DilationErrorRow row;
    row.t = t;
    row.error = (x - reference_solve(red, t)).norm();
    row.amplification = amplification(anc, psi, x);
    row.constraint_residual = sys.apply_constraint(psi).norm();
    rows.push_back(row);
  }
  return rows;
}

ComplexVector ancilla_refresh_evolve(const ConstrainedDAE& dae, const MomentAncilla& anc, double t, Index steps) {
  if (steps < 1) throw Error(ErrorKind::kParameter, "refresh needs at least one step");
  if (!(t >= 0.0)) throw Error(ErrorKind::kParameter, "time must be nonnegative");
  DilatedSystem sys = build_dilated(dae, anc);
  const double dt = t / static_cast<double>(steps);
  ComplexVector x = dae.x0;
  for (Index s = 0; s < steps; ++s) {
    if (s > 0) sys = sys.with_initial_state(anc, x);
    x = recover(sys, anc, evolve_dilated(sys, dt));
    const double drift = (sys.C * x).norm();
    if (drift > settings().projection_tol * std::max(1.0, x.norm())) {
      std::ostringstream os;
      os << "recovered state left ker(C) by " << drift << " during refresh step " << s;
      throw Error(ErrorKind::kConsistency, os.str());
    }
    x = sys.Pi * x;
  }
  return x;
}

}  // namespace zenodae

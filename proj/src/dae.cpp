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

#include "zenodae/dae.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace zenodae {

namespace {

double smallest_singular_value(const ComplexMatrix& c) {
  if (c.rows() == 0) return std::numeric_limits<double>::infinity();
  if (c.rows() > c.cols()) return 0.0;
  const RealVector s = singular_values(c);
  return s(s.size() - 1);
}

void require_shapes(const ComplexMatrix& L, const ComplexMatrix& C, const ComplexVector& x0) {
  std::ostringstream os;
  if (L.rows() != L.cols())
    os << "generator must be square, got " << L.rows() << "x" << L.cols();
  else if (C.cols() != L.rows())
    os << "constraint has " << C.cols() << " columns, state dimension is " << L.rows();
  else if (x0.size() != L.rows())
    os << "initial state has dimension " << x0.size() << ", expected " << L.rows();
  else
    return;
  throw Error(ErrorKind::kShape, os.str());
}

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << "sigma_min(C)=" << sigma_min << " |C x0|=" << constraint_residual;
  if (!shapes_ok) os << " FAIL: shape mismatch";
  if (!full_row_rank) os << " FAIL: rank-deficient constraint";
  if (!consistent) os << " FAIL: inconsistent initial data";
  if (ok()) os << " PASS";
  return os.str();
}

ValidationReport validate(const ConstrainedDAE& dae) {
  ValidationReport report;
  report.shapes_ok = dae.L.rows() == dae.L.cols() && dae.C.cols() == dae.L.rows() && dae.x0.size() == dae.L.rows();
  if (!report.shapes_ok) {
    report.full_row_rank = false;
    report.consistent = false;
    return report;
  }
  report.sigma_min = smallest_singular_value(dae.C);
  report.full_row_rank = report.sigma_min > settings().rank_tol;
  report.constraint_residual = dae.m() ? (dae.C * dae.x0).norm() : 0.0;
  report.consistent = report.constraint_residual <= settings().consistency_tol;
  return report;
}

ConstrainedDAE make_dae(ComplexMatrix L, ComplexMatrix C, ComplexVector x0) {
  require_shapes(L, C, x0);
  require_finite(L, "generator");
  require_finite(C, "constraint");
  require_finite(x0, "initial state");
  const ComplexMatrix pi = null_projector(C);
  const double residual = C.rows() ? (C * x0).norm() : 0.0;
  if (residual > settings().projection_tol) {
    std::ostringstream os;
    os << "initial state is inconsistent: |C x0| = " << residual << " > " << settings().projection_tol;
    throw Error(ErrorKind::kConsistency, os.str());
  }
  if (residual > 0.0) x0 = pi * x0;
  return ConstrainedDAE{std::move(L), std::move(C), std::move(x0)};
}

ConstrainedDAE from_semi_explicit(const ComplexMatrix& L, const ComplexMatrix& G, const ComplexMatrix& C,
                                  const ComplexVector& x0) {
  if (G.rows() != L.rows() || G.cols() != C.rows()) {
    std::ostringstream os;
    os << "multiplier map must be " << L.rows() << "x" << C.rows() << ", got " << G.rows() << "x" << G.cols();
    throw Error(ErrorKind::kShape, os.str());
  }
  const ComplexMatrix pi = null_projector(C);
  const double off_range = (pi * G).norm();
  if (off_range > settings().rank_tol * std::max(1.0, G.norm())) {
    std::ostringstream os;
    os << "Range(G) differs from Range(C^dagger): |(I - C^+ C) G| = " << off_range;
    throw Error(ErrorKind::kStructure, os.str());
  }
  const ComplexMatrix cg = C * G;
  if (!(smallest_singular_value(cg) > settings().rank_tol))
    throw Error(ErrorKind::kIndex, "C G is singular; the multiplier cannot be eliminated");
  return make_dae(L, C, x0);
}

ConstrainedDAE from_index1(const ComplexMatrix& A11, const ComplexMatrix& A12, const ComplexMatrix& A21,
                           const ComplexMatrix& A22, const ComplexVector& x0) {
  const Index n1 = A11.rows();
  const Index n2 = A22.rows();
  if (A11.cols() != n1 || A22.cols() != n2 || A12.rows() != n1 || A12.cols() != n2 || A21.rows() != n2 ||
      A21.cols() != n1 || x0.size() != n1 + n2)
    throw Error(ErrorKind::kShape, "index-1 blocks do not conform");
  const double smin = smallest_singular_value(A22);
  if (!(smin > settings().rank_tol)) {
    std::ostringstream os;
    os << "A22 is singular (sigma_min = " << smin << "); not index 1 in this presentation";
    throw Error(ErrorKind::kIndex, os.str());
  }
  const auto lu = A22.partialPivLu();
  const ComplexMatrix elim = lu.solve(A21);

  ComplexMatrix L(n1 + n2, n1 + n2);
  L << A11, A12, -elim * A11, -elim * A12;
  ComplexMatrix C(n2, n1 + n2);
  C << A21, A22;

  const double cl = (C * L).norm();
  if (cl > 1e-10 * std::max(1.0, C.norm() * L.norm())) {
    std::ostringstream os;
    os << "index-1 rewrite lost C L = 0 (|C L| = " << cl << ")";
    throw Error(ErrorKind::kInvariant, os.str());
  }
  return make_dae(std::move(L), std::move(C), x0);
}

ReducedSystem schur_reduce(const ConstrainedDAE& dae) {
  require_shapes(dae.L, dae.C, dae.x0);
  ComplexMatrix pi = null_projector(dae.C);
  ComplexMatrix gen = pi * dae.L * pi;
  return ReducedSystem{std::move(gen), std::move(pi), dae.x0};
}

ComplexVector reference_solve(const ReducedSystem& red, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::kParameter, "time must be nonnegative");
  if (t == 0.0) return red.x0;
  return matexp((t * red.generator).eval()) * red.x0;
}

ComplexVector recover_multiplier(const ConstrainedDAE& dae, const ComplexVector& x) {
  if (x.size() != dae.n()) throw Error(ErrorKind::kShape, "state dimension mismatch");
  if (dae.m() == 0) return ComplexVector(0);
  const double residual = (dae.C * x).norm();
  if (residual > settings().consistency_tol * std::max(1.0, dae.C.norm() * x.norm())) {
    std::ostringstream os;
    os << "state is not in ker(C): |C x| = " << residual;
    throw Error(ErrorKind::kConsistency, os.str());
  }
  const ComplexMatrix gram = dae.C * dae.C.adjoint();
  return -gram.ldlt().solve(dae.C * (dae.L * x));
}

ConstrainedDAE random_dae(Index n, Index m, std::uint64_t seed) {
  if (n < 1 || m < 0 || m >= n) throw Error(ErrorKind::kParameter, "random DAE needs 0 <= m < n");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto draw = [&](Index rows, Index cols) {
    ComplexMatrix a(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) {
        const double re = normal(rng);
        a(i, j) = Complex(re, normal(rng));
      }
    return a;
  };
  ComplexMatrix L = draw(n, n) / std::sqrt(2.0 * static_cast<double>(n));
  ComplexMatrix C = draw(m, n);
  ComplexVector x = null_projector(C) * draw(n, 1).col(0);
  x /= x.norm();
  return make_dae(std::move(L), std::move(C), std::move(x));
}

}  // namespace zenodae

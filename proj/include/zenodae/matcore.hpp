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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace zenodae {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = DenseMatrix<Complex>;
using ComplexVector = DenseVector<Complex>;
using RealVector = DenseVector<double>;

enum class ErrorKind {
  kCapacity,
  kShape,
  kRank,
  kParameter,
  kStructure,
  kIndex,
  kConsistency,
  kGap,
  kParse,
  kIo,
  kInvariant,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Process-wide tolerances and caps. Set once at startup; read everywhere.
struct Settings {
  double rank_tol = 1e-10;
  double consistency_tol = 1e-10;
  // Initial data with |Cx0| up to this value is projected onto ker(C).
  double projection_tol = 1e-6;
  double exp_tol = 1e-12;
  double moment_tol = 1e-8;
  double gauss_tol = 1e-10;
  Index max_dense_dim = 4096;
  // Above this dimension dilated evolutions use the structured exponential action.
  Index dense_evolve_dim = 1024;
  // Longest state vector any structured routine will allocate.
  Index max_state_dim = Index(1) << 22;
};

Settings& settings();

/// `header` line, then one `row col re im` line (1-based) per nonzero entry.
void dump_triplets(std::ostream& os, const std::string& header, const DenseMatrix<Complex>& m);

inline void require_dense_capacity(Index rows, Index cols, const char* what) {
  const Index cap = settings().max_dense_dim;
  if (rows > cap || cols > cap) {
    std::ostringstream os;
    os << what << " would be " << rows << "x" << cols << ", dense cap is " << cap;
    throw Error(ErrorKind::kCapacity, os.str());
  }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorKind::kParameter, std::string(what) + " has non-finite entries");
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::kShape, os.str());
  }
}

/// Kronecker product a ⊗ b; the row index of the result is (ia * b.rows() + ib).
template <typename DA, typename DB>
DenseMatrix<typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar, typename DB::Scalar>::ReturnType>
kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar, typename DB::Scalar>::ReturnType;
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  require_dense_capacity(rows, cols, "Kronecker product");
  DenseMatrix<Scalar> out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Scalar(a(i, j)) * b.template cast<Scalar>();
  return out;
}

namespace detail {

template <typename Scalar>
DenseMatrix<Scalar> pade_exp(const DenseMatrix<Scalar>& a) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  // Degree thresholds on the 1-norm (Higham 2005, double precision).
  constexpr std::array<Real, 5> kTheta{1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                       2.097847961257068e0, 5.371920351148152e0};
  constexpr std::array<int, 5> kDegree{3, 5, 7, 9, 13};
  static constexpr Real b3[] = {120, 60, 12, 1};
  static constexpr Real b5[] = {30240, 15120, 3360, 420, 30, 1};
  static constexpr Real b7[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
  static constexpr Real b9[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                                2162160.,     110880.,     3960.,       90.,        1.};
  static constexpr Real b13[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                                 1187353796428800.,  129060195264000.,   10559470521600.,
                                 670442572800.,      33522128640.,       1323241920.,
                                 40840800.,          960960.,            16380.,
                                 182.,               1.};

  const Index n = a.rows();
  const DenseMatrix<Scalar> id = DenseMatrix<Scalar>::Identity(n, n);
  const Real norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

  auto solve = [&](const DenseMatrix<Scalar>& u, const DenseMatrix<Scalar>& v) -> DenseMatrix<Scalar> {
    return (v - u).partialPivLu().solve(v + u);
  };

  for (std::size_t k = 0; k + 1 < kDegree.size(); ++k) {
    if (norm1 > kTheta[k]) continue;
    const Real* b = kDegree[k] == 3 ? b3 : kDegree[k] == 5 ? b5 : kDegree[k] == 7 ? b7 : b9;
    const int m = kDegree[k];
    const DenseMatrix<Scalar> a2 = a * a;
    DenseMatrix<Scalar> power = id;
    DenseMatrix<Scalar> odd = b[1] * id;
    DenseMatrix<Scalar> even = b[0] * id;
    for (int j = 2; j <= m; j += 2) {
      power = power * a2;
      even += b[j] * power;
      odd += b[j + 1] * power;
    }
    return solve(a * odd, even);
  }

  int squarings = 0;
  if (norm1 > kTheta[4]) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta[4]))));
  const DenseMatrix<Scalar> s = a / std::ldexp(Real(1), squarings);
  const DenseMatrix<Scalar> a2 = s * s;
  const DenseMatrix<Scalar> a4 = a2 * a2;
  const DenseMatrix<Scalar> a6 = a4 * a2;
  const DenseMatrix<Scalar> u =
      s * (a6 * (b13[13] * a6 + b13[11] * a4 + b13[9] * a2) + b13[7] * a6 + b13[5] * a4 + b13[3] * a2 + b13[1] * id);
  const DenseMatrix<Scalar> v =
      a6 * (b13[12] * a6 + b13[10] * a4 + b13[8] * a2) + b13[6] * a6 + b13[4] * a4 + b13[2] * a2 + b13[0] * id;
  DenseMatrix<Scalar> r = solve(u, v);
  for (int i = 0; i < squarings; ++i) r = (r * r).eval();
  return r;
}

}  // namespace detail

/// Matrix exponential by scaling and squaring with a diagonal Padé approximant.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> matexp(const Eigen::MatrixBase<Derived>& a) {
  require_square(a, "matexp argument");
  require_finite(a, "matexp argument");
  require_dense_capacity(a.rows(), a.cols(), "matexp argument");
  if (a.rows() == 0) return DenseMatrix<typename Derived::Scalar>(0, 0);
  return detail::pade_exp<typename Derived::Scalar>(a.eval());
}

/// exp(A) v for an operator given only through its action `apply(x) = A x`.
///
/// `norm_bound` must bound ||A||_2. The interval is split into s = ceil(norm_bound) substeps and
/// each substep uses a Taylor series truncated once the terms fall below `tol` relative to the
/// partial sum. Intended for generators whose exponential is (close to) unitary, where the
/// substep series does not suffer cancellation.
template <typename Apply>
ComplexVector expm_action(Apply&& apply, const ComplexVector& v, double norm_bound, double tol = 1e-16) {
  if (!(norm_bound >= 0.0) || !std::isfinite(norm_bound))
    throw Error(ErrorKind::kParameter, "expm_action needs a finite nonnegative norm bound");
  const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound)));
  const double scale = 1.0 / steps;
  ComplexVector x = v;
  for (int s = 0; s < steps; ++s) {
    ComplexVector term = x;
    ComplexVector sum = x;
    for (int k = 1; k <= 80; ++k) {
      term = apply(term) * (scale / k);
      sum += term;
      if (term.norm() <= tol * std::max(sum.norm(), 1e-300)) break;
    }
    x = std::move(sum);
  }
  return x;
}

/// Singular values of m in decreasing order.
template <typename Derived>
RealVector singular_values(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() == 0 || m.cols() == 0) return RealVector(0);
  return Eigen::BDCSVD<DenseMatrix<typename Derived::Scalar>>(m.eval()).singularValues();
}

template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  const RealVector s = singular_values(m);
  return s.size() ? s(0) : 0.0;
}

/// ||m - m^dagger||_F.
template <typename Derived>
double hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
  return m.rows() == m.cols() && hermitian_defect(m) <= tol;
}

/// Orthogonal projector onto ker(c), built from the right singular vectors of c.
///
/// Requires full row rank: every singular value must exceed `settings().rank_tol`. An empty
/// constraint (zero rows) gives the identity.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> null_projector(const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::Scalar;
  require_finite(c, "constraint");
  const Index n = c.cols();
  require_dense_capacity(n, n, "kernel projector");
  if (c.rows() == 0) return DenseMatrix<Scalar>::Identity(n, n);
  if (c.rows() > n) {
    std::ostringstream os;
    os << "constraint with " << c.rows() << " rows on " << n << " unknowns cannot have full row rank";
    throw Error(ErrorKind::kRank, os.str());
  }
  Eigen::BDCSVD<DenseMatrix<Scalar>> svd(c.eval(), Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > settings().rank_tol)) {
    std::ostringstream os;
    os << "constraint is rank deficient: smallest singular value " << smin << " <= rank_tol "
       << settings().rank_tol;
    throw Error(ErrorKind::kRank, os.str());
  }
  const auto v = svd.matrixV().leftCols(c.rows());
  return DenseMatrix<Scalar>::Identity(n, n) - v * v.adjoint();
}

/// I - c^dagger (c c^dagger)^{-1} c, the normal-equation form of the kernel projector.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> null_projector_normal_form(const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::Scalar;
  const Index n = c.cols();
  if (c.rows() == 0) return DenseMatrix<Scalar>::Identity(n, n);
  const DenseMatrix<Scalar> gram = c * c.adjoint();
  return DenseMatrix<Scalar>::Identity(n, n) - c.adjoint() * gram.ldlt().solve(c.eval());
}

}  // namespace zenodae

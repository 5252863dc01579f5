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

#include "zenodae/stokes_mac.hpp"

#include <Eigen/SparseCore>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

namespace zenodae {

namespace {

struct Entry {
  Index col;
  double value;
};

// Wall-tangential differences reach a mirror ghost at distance h/2; the sqrt(2) weight makes
// -G^T G reproduce the usual -5/h^2 ghost-cell diagonal there.
const double kWallWeight = std::sqrt(2.0);

ComplexMatrix gradient(const StaggeredGrid& g) {
  const Index n = g.n;
  const double inv_h = 1.0 / g.h;
  std::vector<std::vector<Entry>> rows;
  rows.reserve(4 * n * n);

  // u1, x-differences across each cell.
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      std::vector<Entry> row;
      if (i + 1 <= n - 1) row.push_back({g.u1_index(i + 1, j), inv_h});
      if (i >= 1) row.push_back({g.u1_index(i, j), -inv_h});
      rows.push_back(std::move(row));
    }
  // u1, y-differences across horizontal edges j = 0..n (walls at j = 0 and j = n).
  for (Index j = 0; j <= n; ++j)
    for (Index i = 1; i < n; ++i) {
      std::vector<Entry> row;
      if (j <= n - 1) row.push_back({g.u1_index(i, j), (j == 0 ? kWallWeight : 1.0) * inv_h});
      if (j >= 1) row.push_back({g.u1_index(i, j - 1), -(j == n ? kWallWeight : 1.0) * inv_h});
      rows.push_back(std::move(row));
    }
  // u2, y-differences across each cell.
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      std::vector<Entry> row;
      if (j + 1 <= n - 1) row.push_back({g.u2_index(i, j + 1), inv_h});
      if (j >= 1) row.push_back({g.u2_index(i, j), -inv_h});
      rows.push_back(std::move(row));
    }
  // u2, x-differences across vertical edges i = 0..n.
  for (Index i = 0; i <= n; ++i)
    for (Index j = 1; j < n; ++j) {
      std::vector<Entry> row;
      if (i <= n - 1) row.push_back({g.u2_index(i, j), (i == 0 ? kWallWeight : 1.0) * inv_h});
      if (i >= 1) row.push_back({g.u2_index(i - 1, j), -(i == n ? kWallWeight : 1.0) * inv_h});
      rows.push_back(std::move(row));
    }

  require_dense_capacity(static_cast<Index>(rows.size()), g.velocity_dim(), "MAC gradient");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Index>(rows.size()), g.velocity_dim());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const Entry& e : rows[r]) out(static_cast<Index>(r), e.col) += e.value;
  return out;
}

ComplexMatrix divergence(const StaggeredGrid& g) {
  const Index n = g.n;
  const double inv_h = 1.0 / g.h;
  ComplexMatrix out = ComplexMatrix::Zero(g.np, g.velocity_dim());
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const Index row = g.pressure_index(i, j);
      if (row < 0) continue;
      if (i + 1 <= n - 1) out(row, g.u1_index(i + 1, j)) += inv_h;
      if (i >= 1) out(row, g.u1_index(i, j)) -= inv_h;
      if (j + 1 <= n - 1) out(row, g.u2_index(i, j + 1)) += inv_h;
      if (j >= 1) out(row, g.u2_index(i, j)) -= inv_h;
    }
  return out;
}

}  // namespace

StaggeredGrid::VelocityDof StaggeredGrid::velocity_dof(Index k) const {
  if (k < 0 || k >= velocity_dim()) throw Error(ErrorKind::kShape, "velocity index out of range");
  if (k < nu1) return VelocityDof{1, k % (n - 1) + 1, k / (n - 1)};
  const Index r = k - nu1;
  return VelocityDof{2, r % n, r / n + 1};
}

std::pair<Index, Index> StaggeredGrid::pressure_cell(Index k) const {
  if (k < 0 || k >= np) throw Error(ErrorKind::kShape, "pressure index out of range");
  const Index c = k + 1;
  return {c % n, c / n};
}

StaggeredGrid make_grid(Index n) {
  if (n < 2 || n > 64) {
    std::ostringstream os;
    os << "grid needs 2 <= n <= 64, got " << n;
    throw Error(ErrorKind::kParameter, os.str());
  }
  StaggeredGrid g;
  g.n = n;
  g.h = 1.0 / static_cast<double>(n);
  g.nu1 = (n - 1) * n;
  g.nu2 = n * (n - 1);
  g.np = n * n - 1;
  return g;
}

ComplexMatrix StokesOperators::dirac() const {
  const Index nv = velocity_dim();
  const Index ng = gradient_dim();
  ComplexMatrix out = ComplexMatrix::Zero(nv + ng, nv + ng);
  out.topRightCorner(nv, ng) = Gh.adjoint();
  out.bottomLeftCorner(ng, nv) = Gh;
  return out;
}

ComplexMatrix StokesOperators::lifted_projector() const {
  const Index nv = velocity_dim();
  const Index ng = gradient_dim();
  ComplexMatrix out = ComplexMatrix::Zero(nv + ng, nv + ng);
  out.topLeftCorner(nv, nv) = PiH;
  out.bottomRightCorner(ng, ng).setIdentity();
  return out;
}

StokesOperators build_difference_operators(Index n) {
  StokesOperators ops;
  ops.grid = make_grid(n);
  ops.Gh = gradient(ops.grid);
  ops.Dh = divergence(ops.grid);
  const Eigen::SparseMatrix<Complex> g = ops.Gh.sparseView();
  ops.Lap = -ComplexMatrix(g.adjoint() * g);
  return ops;
}

StokesOperators build_operators(Index n) {
  const StaggeredGrid grid = make_grid(n);
  require_dense_capacity(grid.velocity_dim() + 4 * n * n - 2, grid.velocity_dim() + 4 * n * n - 2,
                         "Stokes Dirac operator");
  StokesOperators ops = build_difference_operators(n);
  ops.PiH = null_projector(ops.Dh);
  const Eigen::SparseMatrix<Complex> g = ops.Gh.sparseView();
  const ComplexMatrix a = g * ops.PiH;
  ops.Sh = a.adjoint() * a;
  const Index nv = ops.velocity_dim();
  const Index ng = ops.gradient_dim();
  ops.Bh = ComplexMatrix::Zero(nv + ng, nv + ng);
  ops.Bh.topRightCorner(nv, ng) = a.adjoint();
  ops.Bh.bottomLeftCorner(ng, nv) = a;
  return ops;
}

ConstrainedDAE assemble_stokes_dae(const StokesOperators& ops, const ComplexVector& u0) {
  if (u0.size() != ops.velocity_dim()) {
    std::ostringstream os;
    os << "initial velocity has " << u0.size() << " entries, grid has " << ops.velocity_dim();
    throw Error(ErrorKind::kShape, os.str());
  }
  const ComplexMatrix pi = ops.PiH.size() ? ops.PiH : null_projector(ops.Dh);
  return make_dae(ops.Lap, ops.Dh, pi * u0);
}

ComplexVector taylor_green_init(const StaggeredGrid& grid) {
  using std::numbers::pi;
  ComplexVector u(grid.velocity_dim());
  const double h = grid.h;
  for (Index k = 0; k < grid.velocity_dim(); ++k) {
    const auto dof = grid.velocity_dof(k);
    if (dof.component == 1) {
      const double x = static_cast<double>(dof.i) * h;
      const double y = (static_cast<double>(dof.j) + 0.5) * h;
      const double s = std::sin(pi * x);
      u(k) = -pi * s * s * std::sin(2.0 * pi * y);
    } else {
      const double x = (static_cast<double>(dof.i) + 0.5) * h;
      const double y = static_cast<double>(dof.j) * h;
      const double s = std::sin(pi * y);
      u(k) = pi * s * s * std::sin(2.0 * pi * x);
    }
  }
  return u;
}

ComplexVector reduced_evolve(const StokesOperators& ops, const ComplexVector& u0, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::kParameter, "time must be nonnegative");
  if (u0.size() != ops.velocity_dim()) throw Error(ErrorKind::kShape, "initial velocity has the wrong dimension");
  const ComplexVector projected = ops.PiH * u0;
  if (t == 0.0) return projected;
  return matexp((-t * ops.Sh).eval()) * projected;
}

void dump_operator(std::ostream& os, const std::string& name, const ComplexMatrix& m, const StaggeredGrid& grid) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%% operator=%s n=%lld h=%.17g rows=%lld cols=%lld", name.c_str(),
                static_cast<long long>(grid.n), grid.h, static_cast<long long>(m.rows()),
                static_cast<long long>(m.cols()));
  dump_triplets(os, buf, m);
}

}  // namespace zenodae

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

#include <iosfwd>
#include <string>

#include "zenodae/dae.hpp"
#include "zenodae/matcore.hpp"

namespace zenodae {

/// MAC grid on [0,1]^2 with n cells per side.
///
/// u1 lives at (i h, (j + 1/2) h) for i = 1..n-1, j = 0..n-1 and u2 at ((i + 1/2) h, j h) for
/// i = 0..n-1, j = 1..n-1; wall-normal velocities are zero and not stored. Velocity DOFs are the
/// u1 block followed by the u2 block, each row-major (j outer). Pressure lives at cell centres,
/// row-major, with cell (0,0) removed.
struct StaggeredGrid {
  Index n = 0;
  double h = 0.0;
  Index nu1 = 0;
  Index nu2 = 0;
  Index np = 0;

  struct VelocityDof {
    int component = 0;  // 1 or 2
    Index i = 0;
    Index j = 0;
  };

  Index velocity_dim() const { return nu1 + nu2; }
  Index u1_index(Index i, Index j) const { return j * (n - 1) + (i - 1); }
  Index u2_index(Index i, Index j) const { return nu1 + (j - 1) * n + i; }
  /// -1 for the removed cell (0,0).
  Index pressure_index(Index i, Index j) const { return j * n + i - 1; }

  VelocityDof velocity_dof(Index k) const;
  std::pair<Index, Index> pressure_cell(Index k) const;
};

StaggeredGrid make_grid(Index n);

struct StokesOperators {
  StaggeredGrid grid;
  ComplexMatrix Gh;   // componentwise gradient, velocity -> edge differences
  ComplexMatrix Dh;   // divergence, velocity -> pressure cells (one removed)
  ComplexMatrix Lap;  // -Gh^dagger Gh
  ComplexMatrix PiH;  // projector onto ker(Dh)
  ComplexMatrix Sh;   // -PiH Lap PiH, assembled as (Gh PiH)^dagger (Gh PiH)
  ComplexMatrix Bh;   // [[0, PiH Gh^dagger], [Gh PiH, 0]]

  Index velocity_dim() const { return grid.velocity_dim(); }
  Index gradient_dim() const { return Gh.rows(); }
  /// Unprojected first-order operator [[0, Gh^dagger], [Gh, 0]].
  ComplexMatrix dirac() const;
  /// diag(PiH, I) on velocity ⊕ gradient space.
  ComplexMatrix lifted_projector() const;
};

/// Gh, Dh and Lap only. Cheaper and allowed on larger grids than `build_operators`.
StokesOperators build_difference_operators(Index n);

/// All operators including the Leray projector, the reduced generator and the Dirac form.
StokesOperators build_operators(Index n);

/// x' = Lap x + Dh^dagger p, Dh x = 0 with x0 = PiH u0.
ConstrainedDAE assemble_stokes_dae(const StokesOperators& ops, const ComplexVector& u0);

/// u0 = (-pi sin^2(pi x) sin(2 pi y), pi sin^2(pi y) sin(2 pi x)) sampled at the velocity DOFs.
ComplexVector taylor_green_init(const StaggeredGrid& grid);

/// exp(-t Sh) PiH u0.
ComplexVector reduced_evolve(const StokesOperators& ops, const ComplexVector& u0, double t);

/// Writes `% operator=<name> n=<n> h=<h> rows=<r> cols=<c>` followed by one
/// `row col re im` line (1-based) per nonzero entry.
void dump_operator(std::ostream& os, const std::string& name, const ComplexMatrix& m, const StaggeredGrid& grid);

}  // namespace zenodae

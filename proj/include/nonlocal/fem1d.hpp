// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "nonlocal/grid.hpp"
#include "nonlocal/linear_solvers.hpp"

namespace nonlocal {

/// Placement of the nodal K weights in the off-diagonal advection entries.
///
/// `conservative` is the exact Galerkin integral of -tau * int(phi_j K_h phi_i')
/// (test phi_i, trial phi_j): A_{i,i+1} gets (tau/6)(K_i + 2K_{i+1}) and
/// A_{i,i-1} gets -(tau/6)(2K_{i-1} + K_i). Every column then sums to h, so
/// h*sum(u) is preserved exactly.
///
/// `row_weighted` puts the double weight on the row node instead,
/// (tau/6)(2K_i + K_{i+1}) and -(tau/6)(2K_i + K_{i-1}). It is consistent to
/// second order but its column sums are h + (tau/6)(K_{j-1} - K_{j+1}), so mass
/// drifts. Kept for comparison only.
enum class FemAdvectionWeights { conservative, row_weighted };

struct FemParams1D {
    double D = 1.0;
    double tau = 0.01;
    FemAdvectionWeights weights = FemAdvectionWeights::conservative;
};

/// P1 mass matrix (h/6)[1 4 1] with periodic wrap.
CyclicTridiagonalSystem fem_mass_1d(std::size_t n, double h);
/// P1 stiffness matrix (1/h)[-1 2 -1].
CyclicTridiagonalSystem fem_stiffness_1d(std::size_t n, double h);
/// Advection part T_{ij} = int phi_j K_h phi_i' with K_h the P1 interpolant of K.
CyclicTridiagonalSystem fem_advection_1d(std::span<const double> K,
                                         FemAdvectionWeights weights = FemAdvectionWeights::conservative);

/// Semi-implicit system matrix M + D tau S - tau T(K).
CyclicTridiagonalSystem fem_assemble(std::span<const double> K, const PeriodicGrid1D& grid, const FemParams1D& p);

/// Simpson right-hand side B_i = (h/6)(u_{i-1} + 4u_i + u_{i+1}), i.e. M u.
std::vector<double> fem_rhs(const Field1D& u);

/// Solves fem_assemble(K) u^{n+1} = fem_rhs(u^n).
Field1D fem_step(const Field1D& u, std::span<const double> K, const FemParams1D& p);

/// Advection fully explicit: (M + D tau S) u^{n+1} = M u^n + tau T(K) u^n.
Field1D fem_step_explicit(const Field1D& u, std::span<const double> K, const FemParams1D& p);

}  // namespace nonlocal

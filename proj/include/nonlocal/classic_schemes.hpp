// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "nonlocal/grid.hpp"
#include "nonlocal/linear_solvers.hpp"

namespace nonlocal {

/// beta = D tau / h^2 and gamma = tau / (2h).
struct SchemeCoefficients {
    double beta;
    double gamma;

    static SchemeCoefficients make(double D, double tau, double h);
};

/// Finite-difference matrix: diffusion implicit, centred transport with the
/// velocity K lagged at time n.
CyclicTridiagonalSystem fd_system(std::span<const double> K, const SchemeCoefficients& c);

/// Finite-volume matrix with interface values K_{i+1/2} = (K_i + K_{i+1})/2 and
/// u_{i+1/2} = (u_i + u_{i+1})/2.
CyclicTridiagonalSystem fv_system(std::span<const double> K, const SchemeCoefficients& c);

Field1D fd_step(const Field1D& u, std::span<const double> K, const SchemeCoefficients& c);
Field1D fv_step(const Field1D& u, std::span<const double> K, const SchemeCoefficients& c);

}  // namespace nonlocal

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>

namespace nonlocal {

/// Single-population model and discretization parameters (defaults: the 1D reference run).
struct ModelParams {
    double D = 1.0;      ///< diffusion coefficient
    double alpha = 10.0; ///< interaction strength
    double r = 1.0;      ///< sensing radius
    double L = 10.0;     ///< domain half-length
    std::size_t N = 1000;
    double tau = 0.01;
    double t_end = 10.0;
    std::uint64_t seed = 0;

    /// Throws ConfigError unless D >= 0, r in (0, L], tau > 0, N >= 4 and r >= h.
    void validate() const;
};

/// Two-population parameters: shared D, self adhesion Su/Sv, cross adhesion C.
struct TwoPopParams {
    double D = 1.0;
    double Su = 25.0;
    double Sv = 7.5;
    double C = 0.0;
    double r = 1.0;
    double L = 10.0;
    std::size_t N = 1000;
    double tau = 0.01;
    double t_end = 10.0;
    std::uint64_t seed = 0;

    /// ModelParams::validate plus Su, Sv, C >= 0.
    void validate() const;

    /// The shared discretization fields with alpha unset (0).
    ModelParams base() const { return {D, 0.0, r, L, N, tau, t_end, seed}; }
};

}  // namespace nonlocal

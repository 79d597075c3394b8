// SPDX-License-Identifier: Apache-2.0
#include "nonlocal/fem1d.hpp"

#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

std::size_t prev_of(std::size_t i, std::size_t n) { return i == 0 ? n - 1 : i - 1; }
std::size_t next_of(std::size_t i, std::size_t n) { return i + 1 == n ? 0 : i + 1; }

}  // namespace

CyclicTridiagonalSystem fem_mass_1d(std::size_t n, double h) {
    CyclicTridiagonalSystem m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.diag[i] = 2.0 * h / 3.0;
        m.lower[i] = h / 6.0;
        m.upper[i] = h / 6.0;
    }
    return m;
}

CyclicTridiagonalSystem fem_stiffness_1d(std::size_t n, double h) {
    CyclicTridiagonalSystem s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.diag[i] = 2.0 / h;
        s.lower[i] = -1.0 / h;
        s.upper[i] = -1.0 / h;
    }
    return s;
}

CyclicTridiagonalSystem fem_advection_1d(std::span<const double> K, FemAdvectionWeights weights) {
    const std::size_t n = K.size();
    CyclicTridiagonalSystem t(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double kp = K[prev_of(i, n)];
        const double kn = K[next_of(i, n)];
        // int phi_i K_h phi_i' over both elements; phi_i' = +1/h left, -1/h right.
        t.diag[i] = (kp - kn) / 6.0;
        if (weights == FemAdvectionWeights::conservative) {
            t.upper[i] = -(K[i] + 2.0 * kn) / 6.0;
            t.lower[i] = (2.0 * kp + K[i]) / 6.0;
        } else {
            t.upper[i] = -(2.0 * K[i] + kn) / 6.0;
            t.lower[i] = (2.0 * K[i] + kp) / 6.0;
        }
    }
    return t;
}

CyclicTridiagonalSystem fem_assemble(std::span<const double> K, const PeriodicGrid1D& grid, const FemParams1D& p) {
    if (K.size() != grid.size()) throw ConfigError("fem_assemble: K does not match the grid");
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const auto t = fem_advection_1d(K, p.weights);
    CyclicTridiagonalSystem a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.diag[i] = 2.0 * h / 3.0 + 2.0 * p.D * p.tau / h - p.tau * t.diag[i];
        a.upper[i] = h / 6.0 - p.D * p.tau / h - p.tau * t.upper[i];
        a.lower[i] = h / 6.0 - p.D * p.tau / h - p.tau * t.lower[i];
    }
    return a;
}

std::vector<double> fem_rhs(const Field1D& u) {
    const std::size_t n = u.size();
    const double h = u.grid.spacing();
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = h / 6.0 * (u[prev_of(i, n)] + 4.0 * u[i] + u[next_of(i, n)]);
    return b;
}

Field1D fem_step(const Field1D& u, std::span<const double> K, const FemParams1D& p) {
    return Field1D(u.grid, solve_cyclic_tridiagonal(fem_assemble(K, u.grid, p), fem_rhs(u)));
}

Field1D fem_step_explicit(const Field1D& u, std::span<const double> K, const FemParams1D& p) {
    if (K.size() != u.size()) throw ConfigError("fem_step_explicit: K does not match the grid");
    const std::size_t n = u.size();
    const double h = u.grid.spacing();
    auto rhs = fem_rhs(u);
    const auto tu = fem_advection_1d(K, p.weights).multiply(u.values);
    for (std::size_t i = 0; i < n; ++i) rhs[i] += p.tau * tu[i];

    CyclicTridiagonalSystem a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.diag[i] = 2.0 * h / 3.0 + 2.0 * p.D * p.tau / h;
        a.upper[i] = h / 6.0 - p.D * p.tau / h;
        a.lower[i] = a.upper[i];
    }
    return Field1D(u.grid, solve_cyclic_tridiagonal(a, rhs));
}

}  // namespace nonlocal

// SPDX-License-Identifier: Apache-2.0
#include "nonlocal/classic_schemes.hpp"

#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

void check_sizes(const Field1D& u, std::span<const double> K) {
    if (K.size() != u.size()) throw ConfigError("K and u must live on the same grid");
}

}  // namespace

SchemeCoefficients SchemeCoefficients::make(double D, double tau, double h) {
    if (!(tau > 0.0) || !(h > 0.0)) throw ConfigError("time step and mesh step must be positive");
    return {D * tau / (h * h), tau / (2.0 * h)};
}

CyclicTridiagonalSystem fd_system(std::span<const double> K, const SchemeCoefficients& c) {
    const std::size_t n = K.size();
    CyclicTridiagonalSystem sys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = i == 0 ? n - 1 : i - 1;
        const std::size_t next = i + 1 == n ? 0 : i + 1;
        sys.diag[i] = 1.0 + 2.0 * c.beta;
        sys.upper[i] = -c.beta + c.gamma * K[next];
        sys.lower[i] = -c.beta - c.gamma * K[prev];
    }
    return sys;
}

CyclicTridiagonalSystem fv_system(std::span<const double> K, const SchemeCoefficients& c) {
    const std::size_t n = K.size();
    CyclicTridiagonalSystem sys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = i == 0 ? n - 1 : i - 1;
        const std::size_t next = i + 1 == n ? 0 : i + 1;
        sys.diag[i] = 1.0 + 2.0 * c.beta + c.gamma * (K[next] - K[prev]) / 2.0;
        sys.upper[i] = -c.beta + c.gamma * (K[next] + K[i]) / 2.0;
        sys.lower[i] = -c.beta - c.gamma * (K[i] + K[prev]) / 2.0;
    }
    return sys;
}

Field1D fd_step(const Field1D& u, std::span<const double> K, const SchemeCoefficients& c) {
    check_sizes(u, K);
    return Field1D(u.grid, solve_cyclic_tridiagonal(fd_system(K, c), u.values));
}

Field1D fv_step(const Field1D& u, std::span<const double> K, const SchemeCoefficients& c) {
    check_sizes(u, K);
    return Field1D(u.grid, solve_cyclic_tridiagonal(fv_system(K, c), u.values));
}

}  // namespace nonlocal

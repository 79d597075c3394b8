// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "nonlocal/errors.hpp"
#include "nonlocal/fem1d.hpp"
#include "nonlocal/kernel.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {
oracle::Dense dense_of(const CyclicTridiagonalSystem& s) {
    const std::size_t n = s.size();
    auto a = oracle::zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] += s.diag[i];
        a[i][(i + 1) % n] += s.upper[i];
        a[i][(i + n - 1) % n] += s.lower[i];
    }
    return a;
}

double max_entry_diff(const oracle::Dense& a, const oracle::Dense& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
    return d;
}
}  // namespace

TEST_CASE("assembly with K = 0") {
    const PeriodicGrid1D g(10.0, 1000);
    const auto a = fem_assemble(std::vector<double>(1000, 0.0), g, FemParams1D{1.0, 0.01});
    for (std::size_t i = 0; i < 1000; i += 97) {
        CHECK(a.diag[i] == doctest::Approx(1.0133333333333).epsilon(1e-12));
        CHECK(a.upper[i] == doctest::Approx(-0.4966666666667).epsilon(1e-12));
        CHECK(a.lower[i] == doctest::Approx(-0.4966666666667).epsilon(1e-12));
    }
}

TEST_CASE("assembly with constant K") {
    const PeriodicGrid1D g(10.0, 1000);
    const double K = 2.0, tau = 0.01;
    const auto a = fem_assemble(std::vector<double>(1000, K), g, FemParams1D{1.0, tau});
    CHECK(a.diag[3] == doctest::Approx(1.0133333333333).epsilon(1e-12));
    CHECK(a.upper[3] == doctest::Approx(-0.4966666666667 + tau * K / 2.0).epsilon(1e-12));
    CHECK(a.lower[3] == doctest::Approx(-0.4966666666667 - tau * K / 2.0).epsilon(1e-12));
}

TEST_CASE("assembly matches element quadrature") {
    std::mt19937_64 rng(12);
    for (std::size_t n : {6u, 31u}) {
        const PeriodicGrid1D g(1.5, n);
        for (int rep = 0; rep < 4; ++rep) {
            const auto K = oracle::random_vector(n, -4.0, 4.0, rng);
            const auto a = dense_of(fem_assemble(K, g, FemParams1D{0.8, 0.05}));
            CHECK(max_entry_diff(a, oracle::fem1d_matrix(K, g.spacing(), 0.8, 0.05)) < 1e-14);
        }
    }
    const PeriodicGrid1D g(1.0, 8);
    CHECK(max_entry_diff(dense_of(fem_mass_1d(8, g.spacing())), oracle::fem1d_mass(8, g.spacing())) < 1e-15);
}

TEST_CASE("row-weighted coefficients follow the literal formulas") {
    std::mt19937_64 rng(13);
    const std::size_t n = 9;
    const PeriodicGrid1D g(1.0, n);
    const double h = g.spacing(), tau = 0.02, D = 1.0;
    const auto K = oracle::random_vector(n, -2.0, 2.0, rng);
    const auto a = fem_assemble(K, g, FemParams1D{D, tau, FemAdvectionWeights::row_weighted});
    for (std::size_t i = 0; i < n; ++i) {
        const double kp = K[(i + 1) % n], km = K[(i + n - 1) % n];
        CHECK(a.diag[i] == doctest::Approx(2 * h / 3 + 2 * D * tau / h + tau / 6 * (kp - km)).epsilon(1e-13));
        CHECK(a.upper[i] == doctest::Approx(h / 6 - D * tau / h + tau / 6 * (2 * K[i] + kp)).epsilon(1e-13));
        CHECK(a.lower[i] == doctest::Approx(h / 6 - D * tau / h - tau / 6 * (2 * K[i] + km)).epsilon(1e-13));
    }
}

TEST_CASE("right-hand side is M u") {
    const PeriodicGrid1D g(1.0, 4);  // h = 0.5
    const Field1D u(g, {1.0, 2.0, 3.0, 4.0});
    const auto b = fem_rhs(u);
    CHECK(b[0] == doctest::Approx(0.5 / 6 * (4.0 + 4.0 + 2.0)));
    CHECK(b[1] == doctest::Approx(0.5 / 6 * (1.0 + 8.0 + 3.0)));
    for (double v : fem_rhs(Field1D(g, 1.0))) CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("steps: mass, constants, explicit variant") {
    std::mt19937_64 rng(14);
    const std::size_t n = 200;
    const PeriodicGrid1D g(10.0, n);
    const Field1D u(g, oracle::random_vector(n, 0.5, 1.5, rng));
    const auto K = k_fft_1d(u, 10.0, 1.0);
    const FemParams1D p{1.0, 0.01};

    CHECK(total_mass(fem_step(u, K, p)) == doctest::Approx(total_mass(u)).epsilon(1e-13));
    CHECK(total_mass(fem_step_explicit(u, K, p)) == doctest::Approx(total_mass(u)).epsilon(1e-13));

    const std::vector<double> zero(n, 0.0);
    CHECK(oracle::max_rel_diff(fem_step(u, zero, p).values, fem_step_explicit(u, zero, p).values) < 1e-14);
    for (double v : fem_step(Field1D(g, 0.4), zero, p).values) CHECK(v == doctest::Approx(0.4).epsilon(1e-14));

    // The semi-implicit step solves the oracle system.
    const auto next = fem_step(u, K, p);
    const auto a = oracle::fem1d_matrix(K, g.spacing(), p.D, p.tau);
    const auto rhs = oracle::multiply(oracle::fem1d_mass(n, g.spacing()), u.values);
    CHECK(oracle::max_rel_diff(next.values, oracle::solve(a, rhs)) < 1e-12);

    CHECK_THROWS_AS(fem_step(u, std::vector<double>(n - 1, 0.0), p), ConfigError);
}

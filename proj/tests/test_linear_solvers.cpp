// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "nonlocal/errors.hpp"
#include "nonlocal/fem1d.hpp"
#include "nonlocal/linear_solvers.hpp"
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

CyclicTridiagonalSystem random_dominant(std::size_t n, std::mt19937_64& rng) {
    CyclicTridiagonalSystem s(n);
    s.lower = oracle::random_vector(n, -1.0, 1.0, rng);
    s.upper = oracle::random_vector(n, -1.0, 1.0, rng);
    s.diag = oracle::random_vector(n, 2.5, 4.0, rng);
    return s;
}
}  // namespace

TEST_CASE("cyclic tridiagonal: small examples") {
    CyclicTridiagonalSystem s(4);
    s.diag.assign(4, 3.0);
    s.lower.assign(4, -1.0);
    s.upper.assign(4, -1.0);
    const auto x = solve_cyclic_tridiagonal(s, std::vector<double>(4, 1.0));
    for (double v : x) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    CyclicTridiagonalSystem id(5);
    id.diag.assign(5, 1.0);
    const std::vector<double> b{1, -2, 3, -4, 5};
    CHECK(oracle::max_rel_diff(solve_cyclic_tridiagonal(id, b), b) < 1e-15);

    CHECK(s.norm_inf() == 5.0);
    CHECK_THROWS_AS(solve_cyclic_tridiagonal(CyclicTridiagonalSystem(2), std::vector<double>(2, 1.0)), ConfigError);
}

TEST_CASE("cyclic tridiagonal matches dense elimination") {
    std::mt19937_64 rng(1);
    for (std::size_t n : {3u, 8u, 37u, 200u}) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto s = random_dominant(n, rng);
            const auto b = oracle::random_vector(n, -1.0, 1.0, rng);
            const auto x = solve_cyclic_tridiagonal(s, b);
            CHECK(oracle::max_rel_diff(x, oracle::solve(dense_of(s), b)) < 1e-12);
            CHECK(oracle::max_rel_diff(s.multiply(x), b) < 1e-13);
        }
    }
}

TEST_CASE("plain tridiagonal agrees with the cyclic solver without corners") {
    std::mt19937_64 rng(2);
    auto s = random_dominant(12, rng);
    s.lower[0] = 0.0;
    s.upper[11] = 0.0;
    const auto b = oracle::random_vector(12, -1.0, 1.0, rng);
    CHECK(oracle::max_rel_diff(solve_tridiagonal(s.lower, s.diag, s.upper, b), solve_cyclic_tridiagonal(s, b)) <
          1e-13);
}

TEST_CASE("zero pivot reports its row") {
    const std::vector<double> lower{0.0, 1.0, 1.0}, diag{1.0, 1.0, 1.0}, upper{1.0, 1.0, 0.0};
    try {
        solve_tridiagonal(lower, diag, upper, std::vector<double>{1.0, 1.0, 1.0});
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.index() == 1);
    }
}

TEST_CASE("sparse solve: identity, I + cA, FEM system") {
    SparseSystem id(6);
    for (std::size_t i = 0; i < 6; ++i) id.add(i, i, 1.0);
    const std::vector<double> b{1, 2, 3, 4, 5, 6};
    CHECK(oracle::max_rel_diff(solve_sparse(id, b), b) < 1e-15);

    // Duplicates are summed.
    SparseSystem dup(2);
    dup.add(0, 0, 1.0);
    dup.add(0, 0, 1.0);
    dup.add(1, 1, 4.0);
    dup.add(0, 1, 0.5);
    const auto csr = dup.to_csr();
    CHECK(csr.val.size() == 3);
    CHECK(csr.multiply(std::vector<double>{1.0, 2.0}) == std::vector<double>{3.0, 8.0});

    std::mt19937_64 rng(4);
    for (auto method : {SparseMethod::direct, SparseMethod::iterative}) {
        const std::size_t n = 100;
        std::vector<double> K = oracle::random_vector(n, -5.0, 5.0, rng);
        const PeriodicGrid1D g(1.0, n);
        const auto tri = fem_assemble(K, g, FemParams1D{1.0, 0.01});
        SparseSystem sp(n);
        for (std::size_t i = 0; i < n; ++i) {
            sp.add(i, i, tri.diag[i]);
            sp.add(i, (i + 1) % n, tri.upper[i]);
            sp.add(i, (i + n - 1) % n, tri.lower[i]);
        }
        const auto rhs = oracle::random_vector(n, 0.0, 1.0, rng);
        SparseSolveOptions opts;
        opts.method = method;
        CHECK(oracle::max_rel_diff(solve_sparse(sp, rhs, opts), oracle::solve(dense_of(tri), rhs)) < 1e-8);

        SparseSystem ica(n);
        const auto c = oracle::random_vector(n * 3, -0.2, 0.2, rng);
        auto dense = oracle::zeros(n);
        for (std::size_t i = 0; i < n; ++i) {
            ica.add(i, i, 1.0);
            dense[i][i] += 1.0;
            for (std::size_t k = 0; k < 3; ++k) {
                const std::size_t j = (i * 7 + k * 13) % n;
                ica.add(i, j, c[3 * i + k]);
                dense[i][j] += c[3 * i + k];
            }
        }
        CHECK(oracle::max_rel_diff(solve_sparse(ica, rhs, opts), oracle::solve(dense, rhs)) < 1e-8);
    }
}

TEST_CASE("sparse solve fails loudly on a singular system") {
    SparseSystem s(3);
    s.add(0, 0, 1.0);
    s.add(1, 1, 1.0);
    SparseSolveOptions opts;
    opts.method = SparseMethod::direct;
    CHECK_THROWS_AS(solve_sparse(s, std::vector<double>{1.0, 1.0, 1.0}, opts), SolverError);
}

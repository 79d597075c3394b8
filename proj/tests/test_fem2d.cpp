// SPDX-License-Identifier: Apache-2.0
#include <random>
#include <set>

#include "doctest.h"
#include "nonlocal/errors.hpp"
#include "nonlocal/fem1d.hpp"
#include "nonlocal/fem2d.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {
oracle::Dense dense_of(const CsrMatrix& a) {
    auto d = oracle::zeros(a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) d[i][static_cast<std::size_t>(a.col[k])] += a.val[k];
    return d;
}

std::vector<double> transpose(std::span<const double> u, std::size_t n) {
    std::vector<double> t(n * n);
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix) t[ix * n + iy] = u[iy * n + ix];
    return t;
}
}  // namespace

TEST_CASE("mesh combinatorics") {
    const PeriodicGrid2D g(1.0, 2);
    for (auto split : {DiagonalSplit::uniform, DiagonalSplit::alternating}) {
        const auto mesh = build_mesh(g, split);
        CHECK(mesh.elements.size() == 8);
        double area = 0.0;
        for (std::size_t e = 0; e < 8; ++e) {
            area += mesh.element_area(e);
            CHECK(mesh.element_area(e) == doctest::Approx(0.5));
            const std::set<std::size_t> distinct(mesh.elements[e].nodes.begin(), mesh.elements[e].nodes.end());
            CHECK(distinct.size() == 3);
            // Gradients of the three basis functions sum to zero.
            const auto gr = mesh.gradients(e);
            CHECK(std::abs(gr[0][0] + gr[1][0] + gr[2][0]) < 1e-14);
            CHECK(std::abs(gr[0][1] + gr[1][1] + gr[2][1]) < 1e-14);
        }
        CHECK(area == doctest::Approx(4.0));
    }
    // Top-right cell of a 3x3 grid wraps to column 0 and row 0.
    const PeriodicGrid2D g3(1.0, 3);
    const auto mesh = build_mesh(g3);
    const std::size_t c = 2 * 3 + 2;
    CHECK(mesh.elements[2 * c].nodes[1] == g3.node(0, 2));
    CHECK(mesh.elements[2 * c].nodes[2] == g3.node(0, 0));
    CHECK(g3.node(3, 2) == g3.node(0, 2));
    CHECK_THROWS_AS(build_mesh(PeriodicGrid2D(1.0, 1)), ConfigError);
    CHECK_THROWS_AS(Fem2DStepper(PeriodicGrid2D(1.0, 3), FemParams2D{}), ConfigError);
}

TEST_CASE("operators match the dense element oracle") {
    std::mt19937_64 rng(21);
    for (std::size_t n : {4u, 6u}) {
        const PeriodicGrid2D g(1.0, n);
        const FemOperators2D ops(build_mesh(g));
        for (int rep = 0; rep < 3; ++rep) {
            const VectorField2D K{oracle::random_vector(n * n, -3.0, 3.0, rng),
                                  oracle::random_vector(n * n, -3.0, 3.0, rng)};
            const auto a = dense_of(ops.system(K, 0.9, 0.1));
            const auto o = oracle::fem2d_matrix(K.x, K.y, n, 1.0, 0.9, 0.1);
            double d = 0.0;
            for (std::size_t i = 0; i < n * n; ++i)
                for (std::size_t j = 0; j < n * n; ++j) d = std::max(d, std::abs(a[i][j] - o[i][j]));
            CHECK(d < 1e-14);
        }
        // Mass rows sum to the nodal area h^2 on the uniform split.
        const auto m = dense_of(ops.mass());
        for (const auto& row : m) {
            double s = 0.0;
            for (double v : row) s += v;
            CHECK(s == doctest::Approx(g.spacing() * g.spacing()).epsilon(1e-14));
        }
    }
}

TEST_CASE("steps preserve constants and mass") {
    std::mt19937_64 rng(22);
    const std::size_t n = 16;
    const PeriodicGrid2D g(2.5, n);
    for (auto split : {DiagonalSplit::uniform, DiagonalSplit::alternating}) {
        const Fem2DStepper stepper(g, FemParams2D{1.0, 0.1}, split);
        const VectorField2D zero{std::vector<double>(n * n, 0.0), std::vector<double>(n * n, 0.0)};
        for (double v : stepper.step(Field2D(g, 0.2), zero).values) CHECK(v == doctest::Approx(0.2).epsilon(1e-12));

        const Field2D u(g, oracle::random_vector(n * n, 0.1, 0.3, rng));
        const NonlocalOperator2D op(g, 1.0, KernelMethod::fft, KernelWeight::unit);
        const auto next = stepper.step(u, op.compute(u, 10.0));
        const auto& M = stepper.operators().mass();
        const auto mu = M.multiply(u.values), mn = M.multiply(next.values);
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < n * n; ++i) {
            a += mu[i];
            b += mn[i];
        }
        CHECK(b == doctest::Approx(a).epsilon(1e-11));
        if (split == DiagonalSplit::uniform) CHECK(total_mass(next) == doctest::Approx(total_mass(u)).epsilon(1e-11));
    }
}

TEST_CASE("uniform split commutes with swapping x and y") {
    std::mt19937_64 rng(23);
    const std::size_t n = 16;
    const PeriodicGrid2D g(2.5, n);
    const Field2D u(g, oracle::random_vector(n * n, 0.1, 0.3, rng));
    const FemParams2D p{1.0, 0.1};
    const auto a = fem2d_step(u, 10.0, 1.0, p);
    const auto b = fem2d_step(Field2D(g, transpose(u.values, n)), 10.0, 1.0, p);
    CHECK(oracle::max_rel_diff(transpose(a.values, n), b.values) < 1e-10);
}

TEST_CASE("y-independent data reduces to the 1D element step") {
    const std::size_t n = 32;
    const PeriodicGrid2D g(2.0, n);
    const PeriodicGrid1D g1(2.0, n);
    Field2D u(g);
    Field1D u1(g1);
    for (std::size_t ix = 0; ix < n; ++ix) {
        u1[ix] = 1.0 + 0.5 * std::sin(0.4 * double(ix)) + 0.3 * std::cos(1.7 * double(ix));
        for (std::size_t iy = 0; iy < n; ++iy) u[iy * n + ix] = u1[ix];
    }
    const NonlocalOperator2D op(g, 1.0, KernelMethod::fft, KernelWeight::unit);
    const auto K = op.compute(u, 5.0);
    for (double v : K.y) CHECK(std::abs(v) < 1e-12);
    const std::vector<double> kx(K.x.begin(), K.x.begin() + static_cast<std::ptrdiff_t>(n));

    const Fem2DStepper stepper(g, FemParams2D{1.0, 0.05});
    const auto next = stepper.step(u, K);
    const auto next1 = fem_step(u1, kx, FemParams1D{1.0, 0.05});
    for (std::size_t iy = 0; iy < n; iy += 7)
        for (std::size_t ix = 0; ix < n; ++ix) CHECK(std::abs(next[iy * n + ix] - next1[ix]) < 1e-11);
}

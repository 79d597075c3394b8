// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "nonlocal/errors.hpp"
#include "nonlocal/twopop.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {
std::pair<Field1D, Field1D> run_1d(const TwoPopParams& p, double t_end, std::uint64_t seed) {
    const PeriodicGrid1D g(p.L, p.N);
    auto u = perturbed_constant_ic(g, 0.2, 0.01, seed);
    auto v = perturbed_constant_ic(g, 0.2, 0.01, seed + 1);
    const NonlocalOperator1D op(g, p.r, KernelMethod::fft);
    const auto steps = static_cast<std::size_t>(std::llround(t_end / p.tau));
    for (std::size_t s = 0; s < steps; ++s) std::tie(u, v) = twopop_step(u, v, op, p);
    return {u, v};
}
}  // namespace

TEST_CASE("predicted regimes") {
    CHECK(predicted_regime(25, 7.5, 0) == RegimeLabel::complete_sorting);
    CHECK(predicted_regime(25, 25, 5) == RegimeLabel::partial_engulfment);
    CHECK(predicted_regime(200, 25, 50) == RegimeLabel::engulfment_u_by_v);
    CHECK(predicted_regime(25, 15, 30) == RegimeLabel::mixing);
    CHECK(to_string(RegimeLabel::mixing) == "mixing");
}

TEST_CASE("constant state is steady; species swap symmetry") {
    const TwoPopParams p{1.0, 25.0, 7.5, 3.0, 1.0, 10.0, 200, 0.01};
    const PeriodicGrid1D g(p.L, p.N);
    const NonlocalOperator1D op(g, p.r, KernelMethod::fft);
    const auto [u, v] = twopop_step(Field1D(g, 0.2), Field1D(g, 0.3), op, p);
    for (std::size_t i = 0; i < p.N; ++i) {
        CHECK(u[i] == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(v[i] == doctest::Approx(0.3).epsilon(1e-12));
    }

    std::mt19937_64 rng(31);
    const Field1D a(g, oracle::random_vector(p.N, 0.1, 0.3, rng)), b(g, oracle::random_vector(p.N, 0.1, 0.3, rng));
    TwoPopParams q = p;
    std::swap(q.Su, q.Sv);
    const auto [a1, b1] = twopop_step(a, b, op, p);
    const auto [b2, a2] = twopop_step(b, a, op, q);
    CHECK(a1.values == a2.values);
    CHECK(b1.values == b2.values);
    CHECK(total_mass(a1) == doctest::Approx(total_mass(a)).epsilon(1e-13));
    CHECK(total_mass(b1) == doctest::Approx(total_mass(b)).epsilon(1e-13));
}

TEST_CASE("2D step conserves each species") {
    std::mt19937_64 rng(32);
    const std::size_t n = 16;
    const PeriodicGrid2D g(2.5, n);
    const TwoPopParams p{1.0, 25.0, 7.5, 5.0, 1.0, 2.5, n, 0.01};
    const NonlocalOperator2D op(g, 1.0, KernelMethod::fft, KernelWeight::ball);
    const Fem2DStepper stepper(g, FemParams2D{p.D, p.tau});
    const Field2D u(g, oracle::random_vector(n * n, 0.05, 0.15, rng)), v(g, oracle::random_vector(n * n, 0.05, 0.15, rng));
    const auto [u1, v1] = twopop_step(u, v, op, stepper, p);
    CHECK(total_mass(u1) == doctest::Approx(total_mass(u)).epsilon(1e-11));
    CHECK(total_mass(v1) == doctest::Approx(total_mass(v)).epsilon(1e-11));
}

TEST_CASE("classifier on constructed profiles") {
    const std::size_t n = 100;
    std::vector<double> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = v[i] = 1.0 + 0.5 * std::sin(0.1 * double(i));
    CHECK(classify_regime(u, v) == RegimeLabel::mixing);

    for (std::size_t i = 0; i < n; ++i) {
        u[i] = i < 50 ? 1.0 : 0.0;
        v[i] = i < 50 ? 0.0 : 1.0;
    }
    CHECK(classify_regime(u, v) == RegimeLabel::complete_sorting);

    // u a narrow block inside v's wide block.
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = (i >= 40 && i < 60) ? 1.0 : 0.0;
        v[i] = (i >= 20 && i < 80) ? 1.0 : 0.0;
    }
    CHECK(classify_regime(u, v) == RegimeLabel::engulfment_u_by_v);
    CHECK(classify_regime(v, u) == RegimeLabel::indeterminate);

    const auto m = sorting_metrics(u, v);
    CHECK(m.u_mass_in_v_aggregate == doctest::Approx(1.0));
    CHECK(m.v_mass_in_u_aggregate == doctest::Approx(1.0 / 3.0));
    CHECK(sorting_metrics(std::vector<double>(4, 1.0), std::vector<double>(4, 2.0)).deviation_similarity == 1.0);
    CHECK_THROWS_AS(sorting_metrics(u, std::vector<double>(3, 1.0)), DiagnosticError);
}

TEST_CASE("1D reference runs: sorting separates, strong cross adhesion mixes") {
    TwoPopParams p;
    p.C = 0.0;
    const auto [u, v] = run_1d(p, 200.0, 1);
    CHECK(cosine_similarity(u.values, v.values) < 0.3);

    TwoPopParams q;
    q.Su = 25.0;
    q.Sv = 15.0;
    q.C = 30.0;
    const auto [a, b] = run_1d(q, 50.0, 1);
    CHECK(cosine_similarity(a.values, b.values) > 0.9);
    CHECK(classify_regime(a.values, b.values) == RegimeLabel::mixing);
}

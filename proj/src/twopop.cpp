// SPDX-License-Identifier: Apache-2.0
#include "nonlocal/twopop.hpp"

#include <cmath>
#include <numeric>

#include "nonlocal/errors.hpp"

namespace nonlocal {

std::string_view to_string(RegimeLabel label) {
    switch (label) {
        case RegimeLabel::complete_sorting: return "complete_sorting";
        case RegimeLabel::partial_engulfment: return "partial_engulfment";
        case RegimeLabel::engulfment_u_by_v: return "engulfment_u_by_v";
        case RegimeLabel::mixing: return "mixing";
        case RegimeLabel::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

RegimeLabel predicted_regime(double Su, double Sv, double C) {
    if (C == 0.0) return RegimeLabel::complete_sorting;
    if (C >= 0.5 * (Su + Sv)) return RegimeLabel::mixing;
    if (Sv < C && C < Su) return RegimeLabel::engulfment_u_by_v;
    if (C < Su && C < Sv) return RegimeLabel::partial_engulfment;
    return RegimeLabel::indeterminate;
}

std::pair<Field1D, Field1D> twopop_step(const Field1D& u, const Field1D& v, const NonlocalOperator1D& op,
                                        const TwoPopParams& p) {
    if (!(u.grid == v.grid)) throw ConfigError("u and v must share a grid");
    const auto [Ku, Kv] = op.compute(u, v, p.Su, p.Sv, p.C);
    const FemParams1D fp{p.D, p.tau, FemAdvectionWeights::conservative};
    return {fem_step(u, Ku, fp), fem_step(v, Kv, fp)};
}

std::pair<Field2D, Field2D> twopop_step(const Field2D& u, const Field2D& v, const NonlocalOperator2D& op,
                                        const Fem2DStepper& stepper, const TwoPopParams& p) {
    if (!(u.grid == v.grid)) throw ConfigError("u and v must share a grid");
    const auto [Ku, Kv] = op.compute(u, v, p.Su, p.Sv, p.C);
    return {stepper.step(u, Ku), stepper.step(v, Kv)};
}

SortingMetrics sorting_metrics(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size() || u.empty()) throw DiagnosticError("sorting_metrics: fields must have equal, nonzero length");
    SortingMetrics m;
    m.similarity = cosine_similarity(u, v);

    const double n = static_cast<double>(u.size());
    const double mu = std::accumulate(u.begin(), u.end(), 0.0) / n;
    const double mv = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double uv = 0.0, uu = 0.0, vv = 0.0;
    double u_in_v = 0.0, v_in_u = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double du = u[i] - mu, dv = v[i] - mv;
        uv += du * dv;
        uu += du * du;
        vv += dv * dv;
        if (dv > 0.0) u_in_v += u[i];
        if (du > 0.0) v_in_u += v[i];
    }
    // Flat profiles carry no spatial structure; treat them as coincident.
    m.deviation_similarity = (uu > 0.0 && vv > 0.0) ? uv / std::sqrt(uu * vv) : 1.0;
    m.u_mass_in_v_aggregate = mu > 0.0 ? u_in_v / (mu * n) : 0.0;
    m.v_mass_in_u_aggregate = mv > 0.0 ? v_in_u / (mv * n) : 0.0;
    return m;
}

RegimeLabel classify_regime(std::span<const double> u, std::span<const double> v, const RegimeThresholds& t) {
    const auto m = sorting_metrics(u, v);
    if (m.similarity > t.mixed_similarity) return RegimeLabel::mixing;
    if (m.u_mass_in_v_aggregate >= t.nested_fraction && m.v_mass_in_u_aggregate < t.enclosing_fraction)
        return RegimeLabel::engulfment_u_by_v;
    if (m.v_mass_in_u_aggregate >= t.nested_fraction && m.u_mass_in_v_aggregate < t.enclosing_fraction)
        return RegimeLabel::indeterminate;
    if (m.similarity < t.disjoint_similarity || m.deviation_similarity < t.complementary_deviation)
        return RegimeLabel::complete_sorting;
    return RegimeLabel::partial_engulfment;
}

}  // namespace nonlocal

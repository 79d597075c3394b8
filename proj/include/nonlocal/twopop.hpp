// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <utility>

#include "nonlocal/fem1d.hpp"
#include "nonlocal/fem2d.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/params.hpp"

namespace nonlocal {

/// Steinberg outcome of a two-population adhesion run.
enum class RegimeLabel { complete_sorting, partial_engulfment, engulfment_u_by_v, mixing, indeterminate };

std::string_view to_string(RegimeLabel label);

/// Outcome expected from the adhesion strengths alone:
/// C = 0 -> complete sorting; C >= (Su+Sv)/2 -> mixing; Sv < C < Su -> u engulfed
/// by v; C < min(Su, Sv) -> partial engulfment. Anything else is indeterminate.
RegimeLabel predicted_regime(double Su, double Sv, double C);

/// One semi-implicit step of both species. K_u and K_v come from the time-n
/// densities of both species; each species is then advanced by its own
/// independent linear solve.
std::pair<Field1D, Field1D> twopop_step(const Field1D& u, const Field1D& v, const NonlocalOperator1D& op,
                                        const TwoPopParams& p);

std::pair<Field2D, Field2D> twopop_step(const Field2D& u, const Field2D& v, const NonlocalOperator2D& op,
                                        const Fem2DStepper& stepper, const TwoPopParams& p);

/// Statistics used by classify_regime. The aggregate of a species is the set of
/// nodes where it exceeds its own mean.
struct SortingMetrics {
    /// Cosine similarity of the two density profiles.
    double similarity = 0.0;
    /// Cosine similarity of the deviations from the respective means.
    double deviation_similarity = 0.0;
    /// Fraction of u's mass lying in v's aggregate, and the converse.
    double u_mass_in_v_aggregate = 0.0;
    double v_mass_in_u_aggregate = 0.0;
};

SortingMetrics sorting_metrics(std::span<const double> u, std::span<const double> v);

/// Thresholds of classify_regime, calibrated once on the four 1D and four 2D
/// reference parameter sets and then frozen.
struct RegimeThresholds {
    double mixed_similarity = 0.9;          ///< similarity above this: mixing
    double disjoint_similarity = 0.1;       ///< similarity below this: complete sorting
    double complementary_deviation = -0.6;  ///< deviation similarity below this: complete sorting
    double nested_fraction = 0.9;           ///< u mass inside v's aggregate for engulfment
    double enclosing_fraction = 0.75;       ///< v mass inside u's aggregate must stay below this
};

/// Classifies final fields, testing in order: mixing (similarity), engulfment of
/// u by v (u nested in v's aggregate while v extends beyond u's), complete
/// sorting (disjoint or complementary profiles), otherwise partial engulfment.
/// The mirrored nesting (v inside u) has no label and returns indeterminate.
RegimeLabel classify_regime(std::span<const double> u, std::span<const double> v, const RegimeThresholds& t = {});

}  // namespace nonlocal

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace nonlocal {

/// Grid-scale oscillation statistics of a periodic 1D profile.
struct OscillationReport {
    /// Strict sign changes of the periodic second difference, ignoring entries
    /// below 1e-6 of its maximum magnitude.
    std::size_t curvature_sign_changes = 0;
    /// Nodes that are strict local extrema while a direct neighbour is one too
    /// (a node-to-node zigzag), counting only jumps above 1e-6 of max|u|.
    std::size_t zigzag_nodes = 0;
    double min_value = 0.0;
    double max_value = 0.0;
    /// min(u) < -1e-3 max(u).
    bool negative_undershoot = false;
};

OscillationReport oscillation_report(std::span<const double> u);

/// A profile is oscillatory if it undershoots below -1e-3 max(u), or if its
/// curvature sign changes exceed 3x those of a smooth reference solution at the
/// same time. Without a reference, any zigzag node counts as oscillation.
bool is_oscillatory(const OscillationReport& report, std::optional<std::size_t> reference_sign_changes = std::nullopt);

/// Number of strict local maxima of a periodic 1D profile whose height exceeds
/// the profile mean.
std::size_t count_peaks_1d(std::span<const double> u);

/// Strict local maxima (8-neighbour, periodic) of an N x N field above its mean.
std::size_t count_peaks_2d(std::span<const double> u, std::size_t n);

/// |a - b|_2 / |a|_2 and |a - b|_inf / |a|_inf.
double relative_l2(std::span<const double> a, std::span<const double> b);
double relative_linf(std::span<const double> a, std::span<const double> b);

}  // namespace nonlocal

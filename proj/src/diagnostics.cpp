// SPDX-License-Identifier: Apache-2.0
#include "nonlocal/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nonlocal/errors.hpp"

namespace nonlocal {

OscillationReport oscillation_report(std::span<const double> u) {
    OscillationReport rep;
    const std::size_t n = u.size();
    if (n < 3) return rep;
    rep.min_value = *std::min_element(u.begin(), u.end());
    rep.max_value = *std::max_element(u.begin(), u.end());
    rep.negative_undershoot = rep.min_value < -1e-3 * rep.max_value;

    auto at = [&](std::ptrdiff_t i) { return u[static_cast<std::size_t>((i % static_cast<std::ptrdiff_t>(n) + static_cast<std::ptrdiff_t>(n)) % static_cast<std::ptrdiff_t>(n))]; };

    std::vector<double> d2(n);
    double d2max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        d2[i] = at(si + 1) - 2.0 * at(si) + at(si - 1);
        d2max = std::max(d2max, std::abs(d2[i]));
    }
    // Walk once around the circle, carrying the last significant sign.
    const double cut = 1e-6 * d2max;
    int first = 0, last = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(d2[i]) <= cut) continue;
        const int s = d2[i] > 0 ? 1 : -1;
        if (first == 0) first = s;
        else if (s != last) ++rep.curvature_sign_changes;
        last = s;
    }
    if (first != 0 && last != first) ++rep.curvature_sign_changes;

    const double jump = 1e-6 * std::max(std::abs(rep.max_value), std::abs(rep.min_value));
    std::vector<char> extremum(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        const double left = at(si) - at(si - 1);
        const double right = at(si + 1) - at(si);
        extremum[i] = std::abs(left) > jump && std::abs(right) > jump && left * right < 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!extremum[i]) continue;
        if (extremum[(i + n - 1) % n] || extremum[(i + 1) % n]) ++rep.zigzag_nodes;
    }
    return rep;
}

bool is_oscillatory(const OscillationReport& report, std::optional<std::size_t> reference_sign_changes) {
    if (report.negative_undershoot) return true;
    if (reference_sign_changes) return report.curvature_sign_changes > 3 * *reference_sign_changes;
    return report.zigzag_nodes > 0;
}

std::size_t count_peaks_1d(std::span<const double> u) {
    const std::size_t n = u.size();
    if (n < 3) return 0;
    const double mean = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(n);
    std::size_t peaks = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double l = u[(i + n - 1) % n], c = u[i], r = u[(i + 1) % n];
        if (c > mean && c > l && c >= r) ++peaks;
    }
    return peaks;
}

std::size_t count_peaks_2d(std::span<const double> u, std::size_t n) {
    if (u.size() != n * n) throw DiagnosticError("count_peaks_2d: field is not N x N");
    const double mean = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(u.size());
    std::size_t peaks = 0;
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double c = u[iy * n + ix];
            if (c <= mean) continue;
            bool is_max = true;
            for (int dy = -1; dy <= 1 && is_max; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const std::size_t jx = (ix + n + static_cast<std::size_t>(dx + 1) - 1) % n;  // ix + dx mod n
                    const std::size_t jy = (iy + n + static_cast<std::size_t>(dy + 1) - 1) % n;
                    const double nb = u[jy * n + jx];
                    // Ties broken towards the lexicographically first node.
                    const bool earlier = (dy < 0) || (dy == 0 && dx < 0);
                    if (nb > c || (nb == c && earlier)) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) ++peaks;
        }
    }
    return peaks;
}

double relative_l2(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DiagnosticError("relative_l2: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += a[i] * a[i];
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
    return std::sqrt(num / den);
}

double relative_linf(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DiagnosticError("relative_linf: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(a[i]));
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
    return num / den;
}

}  // namespace nonlocal

// SPDX-License-Identifier: Apache-2.0
#include "nonlocal/grid.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

std::size_t wrap_index(std::ptrdiff_t i, std::size_t n) noexcept {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    auto r = i % sn;
    if (r < 0) r += sn;
    return static_cast<std::size_t>(r);
}

void check_grid(double half_length, std::size_t cells) {
    if (!(half_length > 0.0) || !std::isfinite(half_length))
        throw ConfigError("grid half-length L must be positive and finite");
    if (cells == 0) throw ConfigError("grid cell count N must be positive");
}

double unit_draw(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

template <class Grid>
BasicField<Grid> perturbed(const Grid& grid, double base, double amplitude, std::uint64_t seed) {
    if (!(amplitude >= 0.0)) throw ConfigError("initial perturbation amplitude must be >= 0");
    BasicField<Grid> f(grid);
    std::mt19937_64 gen(seed);
    for (auto& v : f.values) v = base + amplitude * unit_draw(gen);
    return f;
}

}  // namespace

PeriodicGrid1D::PeriodicGrid1D(double half_length, std::size_t cells)
    : half_length_(half_length), cells_(cells), spacing_(2.0 * half_length / static_cast<double>(cells)) {
    check_grid(half_length, cells);
}

std::size_t PeriodicGrid1D::wrap(std::ptrdiff_t i) const noexcept { return wrap_index(i, cells_); }

std::size_t PeriodicGrid1D::cells_within(double radius) const noexcept {
    // r/h is often an integer that rounds to just below it (1/0.02), so allow
    // a relative slack before flooring.
    const double q = radius / spacing_;
    return static_cast<std::size_t>(std::floor(q * (1.0 + 1e-12)));
}

PeriodicGrid2D::PeriodicGrid2D(double half_length, std::size_t cells_per_axis)
    : half_length_(half_length),
      cells_(cells_per_axis),
      spacing_(2.0 * half_length / static_cast<double>(cells_per_axis)) {
    check_grid(half_length, cells_per_axis);
}

std::size_t PeriodicGrid2D::wrap(std::ptrdiff_t i) const noexcept { return wrap_index(i, cells_); }

template <class Grid>
BasicField<Grid>::BasicField(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw ConfigError("field length " + std::to_string(values.size()) + " does not match grid node count " +
                          std::to_string(grid.size()));
}

template struct BasicField<PeriodicGrid1D>;
template struct BasicField<PeriodicGrid2D>;

Field1D perturbed_constant_ic(const PeriodicGrid1D& grid, double base, double amplitude, std::uint64_t seed) {
    return perturbed(grid, base, amplitude, seed);
}

Field2D perturbed_constant_ic(const PeriodicGrid2D& grid, double base, double amplitude, std::uint64_t seed) {
    return perturbed(grid, base, amplitude, seed);
}

Field1D gaussian_sum_ic(const PeriodicGrid1D& grid) {
    Field1D f(grid);
    const double L = grid.half_length();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i);
        f[i] = std::exp(-x * x) + std::exp(-(x - L) * (x - L)) + std::exp(-(x + L) * (x + L)) +
               std::exp(-(x - L / 2) * (x - L / 2)) + std::exp(-(x + L / 2) * (x + L / 2));
    }
    return f;
}

double total_mass(const Field1D& field) {
    return field.grid.spacing() * std::accumulate(field.values.begin(), field.values.end(), 0.0);
}

double total_mass(const Field2D& field) {
    const double h = field.grid.spacing();
    return h * h * std::accumulate(field.values.begin(), field.values.end(), 0.0);
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw DiagnosticError("cosine_similarity: fields have different lengths");
    double uv = 0.0, uu = 0.0, vv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uv += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
    }
    if (uu == 0.0 || vv == 0.0) throw DiagnosticError("cosine_similarity: zero-norm field");
    return uv / (std::sqrt(uu) * std::sqrt(vv));
}

}  // namespace nonlocal

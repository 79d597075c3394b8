// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nonlocal {

/// Uniform periodic mesh over [-L, L). Node i sits at x_i = -L + i*h; x = +L is
/// identified with x = -L, so only N distinct nodes are stored.
class PeriodicGrid1D {
public:
    PeriodicGrid1D(double half_length, std::size_t cells);

    double half_length() const noexcept { return half_length_; }
    std::size_t size() const noexcept { return cells_; }
    double spacing() const noexcept { return spacing_; }

    double x(std::size_t i) const noexcept { return -half_length_ + static_cast<double>(i) * spacing_; }

    /// Index arithmetic modulo N for any signed offset.
    std::size_t wrap(std::ptrdiff_t i) const noexcept;

    /// Number of whole cells inside the sensing radius, floor(r/h).
    std::size_t cells_within(double radius) const noexcept;

    bool operator==(const PeriodicGrid1D&) const = default;

private:
    double half_length_;
    std::size_t cells_;
    double spacing_;
};

/// Uniform periodic mesh over [-L, L)^2. Node (ix, iy) has id iy*N + ix
/// (row-major with x fastest).
class PeriodicGrid2D {
public:
    PeriodicGrid2D(double half_length, std::size_t cells_per_axis);

    double half_length() const noexcept { return half_length_; }
    std::size_t cells_per_axis() const noexcept { return cells_; }
    std::size_t size() const noexcept { return cells_ * cells_; }
    double spacing() const noexcept { return spacing_; }

    double coord(std::size_t i) const noexcept { return -half_length_ + static_cast<double>(i) * spacing_; }
    std::size_t wrap(std::ptrdiff_t i) const noexcept;
    std::size_t node(std::ptrdiff_t ix, std::ptrdiff_t iy) const noexcept { return wrap(iy) * cells_ + wrap(ix); }

    bool operator==(const PeriodicGrid2D&) const = default;

private:
    double half_length_;
    std::size_t cells_;
    double spacing_;
};

/// Nodal values of a density on a periodic grid.
template <class Grid>
struct BasicField {
    Grid grid;
    std::vector<double> values;

    explicit BasicField(Grid g) : grid(g), values(g.size(), 0.0) {}
    BasicField(Grid g, std::vector<double> v);
    BasicField(Grid g, double constant) : grid(g), values(g.size(), constant) {}

    std::size_t size() const noexcept { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::span<const double> view() const noexcept { return values; }
};

using Field1D = BasicField<PeriodicGrid1D>;
using Field2D = BasicField<PeriodicGrid2D>;

extern template struct BasicField<PeriodicGrid1D>;
extern template struct BasicField<PeriodicGrid2D>;

/// Constant `base` plus i.i.d. uniform noise on [0, amplitude].
///
/// The generator is std::mt19937_64 seeded with `seed`; each draw is turned
/// into a double as (bits >> 11) * 2^-53, so the stream is identical on every
/// conforming platform (std::uniform_real_distribution is not used because its
/// algorithm is implementation-defined).
Field1D perturbed_constant_ic(const PeriodicGrid1D& grid, double base, double amplitude, std::uint64_t seed);
Field2D perturbed_constant_ic(const PeriodicGrid2D& grid, double base, double amplitude, std::uint64_t seed);

/// Five Gaussians centred at 0, +-L/2, +-L.
Field1D gaussian_sum_ic(const PeriodicGrid1D& grid);

/// Rectangle-rule integral: h*sum (1D) or h^2*sum (2D).
double total_mass(const Field1D& field);
double total_mass(const Field2D& field);

/// <u,v> / (|u| |v|) over nodal values. Throws DiagnosticError on a zero-norm input.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

}  // namespace nonlocal

// SPDX-License-Identifier: Apache-2.0
#include "nonlocal/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft_plan.hpp"
#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

constexpr std::size_t kDirectMaxCells = 128;

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double abs_sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

std::ptrdiff_t signed_lag(std::size_t k, std::size_t n) {
    return k <= n / 2 ? static_cast<std::ptrdiff_t>(k) : static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(n);
}

std::vector<std::complex<double>> to_complex(std::span<const double> v) {
    return {v.begin(), v.end()};
}

// Real part of the backward transform scaled by `factor`; checks that the
// discarded imaginary part is round-off.
std::vector<double> real_part_checked(const std::vector<std::complex<double>>& z, double factor, double scale) {
    std::vector<double> out(z.size());
    double residue = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = factor * z[i].real();
        residue = std::max(residue, std::abs(factor * z[i].imag()));
    }
    if (residue > 1e-10 * scale)
        throw InternalError("FFT convolution left an imaginary residue of " + std::to_string(residue) +
                            " (scale " + std::to_string(scale) + "); kernel lag layout is inconsistent");
    return out;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw ConfigError(std::string(what) + ": field length does not match grid");
}

}  // namespace

std::vector<double> apply_g(GFunction g, std::span<const double> u, std::span<const double> v) {
    std::vector<double> out(u.size());
    if (g == GFunction::identity) {
        std::copy(u.begin(), u.end(), out.begin());
        return out;
    }
    if (v.size() != u.size()) throw ConfigError("population-pressure g requires both densities on the same grid");
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double total = u[i] + v[i];
        if (total < 1.0) {
            const double own = g == GFunction::population_pressure_u ? u[i] : v[i];
            out[i] = own * (1.0 - total);
        }
    }
    return out;
}

double kernel_weight_value(KernelWeight w, double r) {
    return w == KernelWeight::unit ? 1.0 : 1.0 / (2.0 * std::numbers::pi * r * r);
}

SignKernel1D::SignKernel1D(const PeriodicGrid1D& grid, double r)
    : grid_(grid), r_(r), support_(grid.cells_within(r)), samples_(grid.size(), 0.0) {
    if (!(r > 0.0) || support_ == 0) throw ConfigError("sensing radius is below one mesh cell (floor(r/h) = 0)");
    if (2 * support_ >= grid.size()) throw ConfigError("sensing radius must be smaller than half the period");
    const std::size_t n = grid.size();
    for (std::size_t k = 1; k <= support_; ++k) {
        samples_[k] = 1.0;
        samples_[n - k] = -1.0;
    }
}

RadialKernel2D::RadialKernel2D(const PeriodicGrid2D& grid, double r, KernelWeight weight)
    : grid_(grid), r_(r), weight_(weight), kx_(grid.size(), 0.0), ky_(grid.size(), 0.0) {
    const std::size_t n = grid.cells_per_axis();
    const double h = grid.spacing();
    if (!(r > 0.0) || r < h * (1.0 - 1e-12)) throw ConfigError("sensing radius is below one mesh cell");
    if (2.0 * r >= static_cast<double>(n) * h * (1.0 - 1e-12))
        throw ConfigError("sensing radius must be smaller than half the period");
    const double omega = kernel_weight_value(weight, r);
    const double limit = r * (1.0 + 1e-12);
    for (std::size_t ky = 0; ky < n; ++ky) {
        for (std::size_t kx = 0; kx < n; ++kx) {
            const double y1 = static_cast<double>(signed_lag(kx, n)) * h;
            const double y2 = static_cast<double>(signed_lag(ky, n)) * h;
            const double rho = std::hypot(y1, y2);
            if (rho == 0.0 || rho > limit) continue;
            kx_[ky * n + kx] = omega * y1 / rho;
            ky_[ky * n + kx] = omega * y2 / rho;
        }
    }
}

std::vector<double> k_trapezoid_1d(const Field1D& u, double alpha, double r) {
    const auto& grid = u.grid;
    const std::size_t nr = grid.cells_within(r);
    if (nr == 0) throw ConfigError("sensing radius is below one mesh cell (floor(r/h) = 0)");
    const auto snr = static_cast<std::ptrdiff_t>(nr);
    std::vector<double> K(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        double acc = 0.5 * (u[grid.wrap(si + snr)] - u[grid.wrap(si - snr)]);
        for (std::ptrdiff_t k = 1; k < snr; ++k) acc += u[grid.wrap(si + k)] - u[grid.wrap(si - k)];
        K[i] = alpha * grid.spacing() * acc;
    }
    return K;
}

std::vector<double> k_direct_1d(const SignKernel1D& kernel, std::span<const double> u, double alpha) {
    const auto& grid = kernel.grid();
    require_same_size(u.size(), grid.size(), "k_direct_1d");
    const auto w = kernel.samples();
    const std::size_t n = grid.size();
    std::vector<double> K(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (w[k] == 0.0) continue;
            acc += u[grid.wrap(static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(k))] * w[k];
        }
        K[j] = -alpha * grid.spacing() * acc;
    }
    return K;
}

std::pair<std::vector<double>, std::vector<double>> k_direct_2d(const RadialKernel2D& kernel,
                                                                std::span<const double> g, double alpha) {
    const auto& grid = kernel.grid();
    require_same_size(g.size(), grid.size(), "k_direct_2d");
    const std::size_t n = grid.cells_per_axis();
    const double scale = -alpha * grid.spacing() * grid.spacing();
    const auto wx = kernel.component_x();
    const auto wy = kernel.component_y();

    // Compact list of the kernel support.
    struct Tap {
        std::ptrdiff_t dx, dy;
        double kx, ky;
    };
    std::vector<Tap> taps;
    for (std::size_t ky = 0; ky < n; ++ky)
        for (std::size_t kx = 0; kx < n; ++kx) {
            const std::size_t id = ky * n + kx;
            if (wx[id] != 0.0 || wy[id] != 0.0)
                taps.push_back({static_cast<std::ptrdiff_t>(kx), static_cast<std::ptrdiff_t>(ky), wx[id], wy[id]});
        }

    std::vector<double> Kx(grid.size(), 0.0), Ky(grid.size(), 0.0);
    for (std::size_t jy = 0; jy < n; ++jy) {
        for (std::size_t jx = 0; jx < n; ++jx) {
            double ax = 0.0, ay = 0.0;
            for (const auto& t : taps) {
                const double gv = g[grid.node(static_cast<std::ptrdiff_t>(jx) - t.dx, static_cast<std::ptrdiff_t>(jy) - t.dy)];
                ax += gv * t.kx;
                ay += gv * t.ky;
            }
            Kx[jy * n + jx] = scale * ax;
            Ky[jy * n + jx] = scale * ay;
        }
    }
    return {std::move(Kx), std::move(Ky)};
}

// ---------------------------------------------------------------------------

FftConvolution1D::FftConvolution1D(const SignKernel1D& kernel)
    : kernel_(kernel), plan_(std::make_unique<detail::FftPlan>(std::vector<int>{static_cast<int>(kernel.grid().size())})) {
    auto w = to_complex(kernel_.samples());
    spectrum_.resize(w.size());
    plan_->forward(w, spectrum_);
}

FftConvolution1D::~FftConvolution1D() = default;
FftConvolution1D::FftConvolution1D(FftConvolution1D&&) noexcept = default;
FftConvolution1D& FftConvolution1D::operator=(FftConvolution1D&&) noexcept = default;

std::vector<double> FftConvolution1D::apply(std::span<const double> g, double alpha) const {
    const std::size_t n = spectrum_.size();
    require_same_size(g.size(), n, "FftConvolution1D");
    auto buf = to_complex(g);
    plan_->forward(buf, buf);
    for (std::size_t m = 0; m < n; ++m) buf[m] *= spectrum_[m];
    plan_->backward(buf, buf);
    const double factor = -alpha * kernel_.grid().spacing() / static_cast<double>(n);
    const double scale = std::max(std::abs(alpha) * kernel_.grid().spacing() * abs_sum(kernel_.samples()), 1.0) *
                         std::max(max_abs(g), 1e-300);
    return real_part_checked(buf, factor, scale);
}

FftConvolution2D::FftConvolution2D(const RadialKernel2D& kernel)
    : kernel_(kernel) {
    const int n = static_cast<int>(kernel.grid().cells_per_axis());
    plan_ = std::make_unique<detail::FftPlan>(std::vector<int>{n, n});
    auto wx = to_complex(kernel_.component_x());
    auto wy = to_complex(kernel_.component_y());
    spectrum_x_.resize(wx.size());
    spectrum_y_.resize(wy.size());
    plan_->forward(wx, spectrum_x_);
    plan_->forward(wy, spectrum_y_);
}

FftConvolution2D::~FftConvolution2D() = default;
FftConvolution2D::FftConvolution2D(FftConvolution2D&&) noexcept = default;
FftConvolution2D& FftConvolution2D::operator=(FftConvolution2D&&) noexcept = default;

std::pair<std::vector<double>, std::vector<double>> FftConvolution2D::apply(std::span<const double> g,
                                                                            double alpha) const {
    const std::size_t total = spectrum_x_.size();
    require_same_size(g.size(), total, "FftConvolution2D");
    auto ghat = to_complex(g);
    plan_->forward(ghat, ghat);
    std::vector<std::complex<double>> bx(total), by(total);
    for (std::size_t m = 0; m < total; ++m) {
        bx[m] = ghat[m] * spectrum_x_[m];
        by[m] = ghat[m] * spectrum_y_[m];
    }
    plan_->backward(bx, bx);
    plan_->backward(by, by);
    const double h = kernel_.grid().spacing();
    const double factor = -alpha * h * h / static_cast<double>(total);
    const double mass = std::max(abs_sum(kernel_.component_x()), abs_sum(kernel_.component_y()));
    const double scale = std::max(std::abs(alpha) * h * h * mass, 1.0) * std::max(max_abs(g), 1e-300);
    return {real_part_checked(bx, factor, scale), real_part_checked(by, factor, scale)};
}

std::vector<double> k_fft_1d(const Field1D& u, double alpha, double r) {
    return FftConvolution1D(SignKernel1D(u.grid, r)).apply(u.values, alpha);
}

std::pair<std::vector<double>, std::vector<double>> k_fft_2d(const Field2D& u, double alpha, double r,
                                                             KernelWeight weight) {
    return FftConvolution2D(RadialKernel2D(u.grid, r, weight)).apply(u.values, alpha);
}

// ---------------------------------------------------------------------------

NonlocalOperator1D::NonlocalOperator1D(const PeriodicGrid1D& grid, double r, KernelMethod method)
    : grid_(grid), r_(r), method_(method), kernel_(grid, r) {
    if (method == KernelMethod::fft) fft_ = std::make_unique<FftConvolution1D>(kernel_);
    if (method == KernelMethod::direct && grid.size() > kDirectMaxCells)
        throw ConfigError("kernel_method = direct is limited to N <= 128");
}

std::vector<double> NonlocalOperator1D::convolve(std::span<const double> g, double alpha) const {
    switch (method_) {
        case KernelMethod::fft:
            return fft_->apply(g, alpha);
        case KernelMethod::direct:
            return k_direct_1d(kernel_, g, alpha);
        case KernelMethod::trapezoid:
            return k_trapezoid_1d(Field1D(grid_, std::vector<double>(g.begin(), g.end())), alpha, r_);
    }
    throw ConfigError("unknown kernel method");
}

std::vector<double> NonlocalOperator1D::compute(const Field1D& u, double alpha) const {
    require_same_size(u.size(), grid_.size(), "NonlocalOperator1D");
    return convolve(u.values, alpha);
}

std::pair<std::vector<double>, std::vector<double>> NonlocalOperator1D::compute(const Field1D& u, const Field1D& v,
                                                                                double Su, double Sv,
                                                                                double C) const {
    if (method_ == KernelMethod::trapezoid)
        throw ConfigError("kernel_method = trapezoid is only available for the single-population model (g = u)");
    require_same_size(u.size(), grid_.size(), "NonlocalOperator1D");
    require_same_size(v.size(), grid_.size(), "NonlocalOperator1D");
    const auto gu = apply_g(GFunction::population_pressure_u, u.values, v.values);
    const auto gv = apply_g(GFunction::population_pressure_v, u.values, v.values);
    // Conv is linear, so each species needs a single convolution.
    std::vector<double> src_u(gu.size()), src_v(gu.size());
    for (std::size_t i = 0; i < gu.size(); ++i) {
        src_u[i] = Su * gu[i] + C * gv[i];
        src_v[i] = Sv * gv[i] + C * gu[i];
    }
    return {convolve(src_u, 1.0), convolve(src_v, 1.0)};
}

NonlocalOperator2D::NonlocalOperator2D(const PeriodicGrid2D& grid, double r, KernelMethod method, KernelWeight weight)
    : grid_(grid), method_(method), kernel_(grid, r, weight) {
    if (method == KernelMethod::trapezoid)
        throw ConfigError("kernel_method = trapezoid is only available in 1D");
    if (method == KernelMethod::direct && grid.cells_per_axis() > kDirectMaxCells)
        throw ConfigError("kernel_method = direct is limited to N <= 128");
    if (method == KernelMethod::fft) fft_ = std::make_unique<FftConvolution2D>(kernel_);
}

VectorField2D NonlocalOperator2D::convolve(std::span<const double> g, double alpha) const {
    auto [kx, ky] = method_ == KernelMethod::fft ? fft_->apply(g, alpha) : k_direct_2d(kernel_, g, alpha);
    return {std::move(kx), std::move(ky)};
}

VectorField2D NonlocalOperator2D::compute(const Field2D& u, double alpha) const {
    require_same_size(u.size(), grid_.size(), "NonlocalOperator2D");
    return convolve(u.values, alpha);
}

std::pair<VectorField2D, VectorField2D> NonlocalOperator2D::compute(const Field2D& u, const Field2D& v, double Su,
                                                                    double Sv, double C) const {
    require_same_size(u.size(), grid_.size(), "NonlocalOperator2D");
    require_same_size(v.size(), grid_.size(), "NonlocalOperator2D");
    const auto gu = apply_g(GFunction::population_pressure_u, u.values, v.values);
    const auto gv = apply_g(GFunction::population_pressure_v, u.values, v.values);
    std::vector<double> src_u(gu.size()), src_v(gu.size());
    for (std::size_t i = 0; i < gu.size(); ++i) {
        src_u[i] = Su * gu[i] + C * gv[i];
        src_v[i] = Sv * gv[i] + C * gu[i];
    }
    return {convolve(src_u, 1.0), convolve(src_v, 1.0)};
}

}  // namespace nonlocal

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "nonlocal/grid.hpp"

namespace nonlocal {

/// Density dependence of the adhesion flux.
enum class GFunction {
    identity,              ///< g = u
    population_pressure_u, ///< g = u(1-u-v) if u+v < 1, else 0
    population_pressure_v, ///< g = v(1-u-v) if u+v < 1, else 0
};

/// Pointwise g. The population-pressure variants require `v` (same length as `u`).
std::vector<double> apply_g(GFunction g, std::span<const double> u, std::span<const double> v = {});

enum class KernelMethod { fft, trapezoid, direct };

/// Radial weight of the 2D kernel: omega = 1 or omega = 1/(2|B_r|).
enum class KernelWeight { unit, ball };

/// omega(|y|) for the chosen weight and radius.
double kernel_weight_value(KernelWeight w, double r);

/// sgn(y) restricted to [-r, r], sampled in lag order: samples[k] is the value at
/// y = k*h for k <= N/2 and y = (k-N)*h above. Nodes with |y| <= r carry full weight.
class SignKernel1D {
public:
    SignKernel1D(const PeriodicGrid1D& grid, double r);

    const PeriodicGrid1D& grid() const noexcept { return grid_; }
    double radius() const noexcept { return r_; }
    std::size_t support_cells() const noexcept { return support_; }
    std::span<const double> samples() const noexcept { return samples_; }

private:
    PeriodicGrid1D grid_;
    double r_;
    std::size_t support_;
    std::vector<double> samples_;
};

/// Components of omega(|y|) y/|y| on the ball |y| <= r, sampled in lag order on
/// both axes (lag (kx, ky) at index ky*N + kx). The value at y = 0 is 0.
class RadialKernel2D {
public:
    RadialKernel2D(const PeriodicGrid2D& grid, double r, KernelWeight weight);

    const PeriodicGrid2D& grid() const noexcept { return grid_; }
    double radius() const noexcept { return r_; }
    KernelWeight weight() const noexcept { return weight_; }
    std::span<const double> component_x() const noexcept { return kx_; }
    std::span<const double> component_y() const noexcept { return ky_; }

private:
    PeriodicGrid2D grid_;
    double r_;
    KernelWeight weight_;
    std::vector<double> kx_;
    std::vector<double> ky_;
};

/// Trapezoid-rule K for g = identity:
/// K_i = alpha h [ (u_{i+Nr} - u_{i-Nr})/2 + sum_{k=1}^{Nr-1} (u_{i+k} - u_{i-k}) ].
std::vector<double> k_trapezoid_1d(const Field1D& u, double alpha, double r);

/// K_j = -alpha h sum_k u_{j-k} w_k by brute-force circular summation. Intended
/// for verification on small grids.
std::vector<double> k_direct_1d(const SignKernel1D& kernel, std::span<const double> u, double alpha);

/// Both components of K by brute-force double sum over the kernel support.
std::pair<std::vector<double>, std::vector<double>> k_direct_2d(const RadialKernel2D& kernel,
                                                                std::span<const double> g, double alpha);

namespace detail {
class FftPlan;
}

/// FFT circular convolution with the 1D sign kernel. Holds the kernel spectrum;
/// every call uses its own work buffers, so one instance may be shared across
/// threads.
class FftConvolution1D {
public:
    explicit FftConvolution1D(const SignKernel1D& kernel);
    ~FftConvolution1D();
    FftConvolution1D(FftConvolution1D&&) noexcept;
    FftConvolution1D& operator=(FftConvolution1D&&) noexcept;

    /// K = -alpha h IDFT(DFT(g) . DFT(w)). Throws InternalError if the imaginary
    /// residue exceeds 1e-10 of the output scale.
    std::vector<double> apply(std::span<const double> g, double alpha) const;

    const SignKernel1D& kernel() const noexcept { return kernel_; }

private:
    SignKernel1D kernel_;
    std::vector<std::complex<double>> spectrum_;
    std::unique_ptr<detail::FftPlan> plan_;
};

/// 2D analogue: returns both components, each scaled by alpha h^2.
class FftConvolution2D {
public:
    explicit FftConvolution2D(const RadialKernel2D& kernel);
    ~FftConvolution2D();
    FftConvolution2D(FftConvolution2D&&) noexcept;
    FftConvolution2D& operator=(FftConvolution2D&&) noexcept;

    std::pair<std::vector<double>, std::vector<double>> apply(std::span<const double> g, double alpha) const;

    const RadialKernel2D& kernel() const noexcept { return kernel_; }

private:
    RadialKernel2D kernel_;
    std::vector<std::complex<double>> spectrum_x_;
    std::vector<std::complex<double>> spectrum_y_;
    std::unique_ptr<detail::FftPlan> plan_;
};

/// Single-population K with a fixed backend in 1D.
std::vector<double> k_fft_1d(const Field1D& u, double alpha, double r);
/// Single-population K (g = identity) in 2D, FFT backend.
std::pair<std::vector<double>, std::vector<double>> k_fft_2d(const Field2D& u, double alpha, double r,
                                                             KernelWeight weight = KernelWeight::ball);

/// 2D vector field stored as two nodal component arrays.
struct VectorField2D {
    std::vector<double> x;
    std::vector<double> y;
};

/// Evaluates K fields for one grid and radius with a chosen backend. Construct
/// once per simulation; evaluation is const.
class NonlocalOperator1D {
public:
    NonlocalOperator1D(const PeriodicGrid1D& grid, double r, KernelMethod method);

    /// alpha * Conv(g); trapezoid is only valid when g is the density itself.
    std::vector<double> convolve(std::span<const double> g, double alpha) const;

    /// Single population, g = identity.
    std::vector<double> compute(const Field1D& u, double alpha) const;

    /// Two populations with population-pressure g:
    /// K_u = Su Conv(g_uu) + C Conv(g_uv), K_v = Sv Conv(g_vv) + C Conv(g_vu).
    std::pair<std::vector<double>, std::vector<double>> compute(const Field1D& u, const Field1D& v, double Su,
                                                                double Sv, double C) const;

    KernelMethod method() const noexcept { return method_; }
    const PeriodicGrid1D& grid() const noexcept { return grid_; }

private:
    PeriodicGrid1D grid_;
    double r_;
    KernelMethod method_;
    SignKernel1D kernel_;
    std::unique_ptr<FftConvolution1D> fft_;
};

class NonlocalOperator2D {
public:
    /// method must be fft or direct (no trapezoid rule in 2D).
    NonlocalOperator2D(const PeriodicGrid2D& grid, double r, KernelMethod method, KernelWeight weight);

    VectorField2D convolve(std::span<const double> g, double alpha) const;
    VectorField2D compute(const Field2D& u, double alpha) const;
    std::pair<VectorField2D, VectorField2D> compute(const Field2D& u, const Field2D& v, double Su, double Sv,
                                                    double C) const;

    KernelMethod method() const noexcept { return method_; }
    const PeriodicGrid2D& grid() const noexcept { return grid_; }

private:
    PeriodicGrid2D grid_;
    KernelMethod method_;
    RadialKernel2D kernel_;
    std::unique_ptr<FftConvolution2D> fft_;
};

}  // namespace nonlocal

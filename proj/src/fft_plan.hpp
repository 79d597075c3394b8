// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <vector>

namespace nonlocal::detail {

/// Forward/backward complex DFT plans for a fixed 1D or 2D shape.
///
/// Plans are created with FFTW_ESTIMATE (no timing-based algorithm choice, so
/// results are reproducible bit-for-bit) and FFTW_UNALIGNED so they can run on
/// caller-owned std::vector buffers. Planning is serialized through a global
/// mutex; execution is thread-safe.
class FftPlan {
public:
    /// dims = {N} or {N, N} (row-major, last index fastest).
    explicit FftPlan(std::vector<int> dims);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    std::size_t size() const noexcept { return size_; }

    /// Unnormalized forward transform, in -> out (may alias).
    void forward(std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) const;
    /// Unnormalized backward transform (no 1/N factor).
    void backward(std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) const;

private:
    std::size_t size_ = 1;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

}  // namespace nonlocal::detail

// SPDX-License-Identifier: Apache-2.0
#include "fft_plan.hpp"

#include <mutex>

#include "nonlocal/errors.hpp"

namespace nonlocal::detail {
namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(std::vector<std::complex<double>>& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

}  // namespace

FftPlan::FftPlan(std::vector<int> dims) {
    for (int d : dims) size_ *= static_cast<std::size_t>(d);
    // Planning with FFTW_ESTIMATE does not touch the arrays' contents.
    std::vector<std::complex<double>> scratch(size_);
    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int rank = static_cast<int>(dims.size());
    forward_ = fftw_plan_dft(rank, dims.data(), as_fftw(scratch), as_fftw(scratch), FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft(rank, dims.data(), as_fftw(scratch), as_fftw(scratch), FFTW_BACKWARD, flags);
    if (!forward_ || !backward_) throw InternalError("FFTW failed to create a plan");
}

FftPlan::~FftPlan() {
    std::lock_guard lock(planner_mutex());
    if (forward_) fftw_destroy_plan(forward_);
    if (backward_) fftw_destroy_plan(backward_);
}

void FftPlan::forward(std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) const {
    fftw_execute_dft(forward_, as_fftw(in), as_fftw(out));
}

void FftPlan::backward(std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) const {
    fftw_execute_dft(backward_, as_fftw(in), as_fftw(out));
}

}  // namespace nonlocal::detail

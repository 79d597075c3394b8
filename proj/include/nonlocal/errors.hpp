// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nonlocal {

/// Invalid parameters or an unsupported model/scheme combination.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A linear solve failed: zero pivot, singular system, or Krylov stagnation.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::ptrdiff_t index = -1, double residual = -1.0)
        : std::runtime_error(what), index_(index), residual_(residual) {}

    /// Failing pivot row, or -1 when not applicable.
    std::ptrdiff_t index() const noexcept { return index_; }
    /// Achieved relative residual, or -1 when not applicable.
    double residual() const noexcept { return residual_; }

private:
    std::ptrdiff_t index_;
    double residual_;
};

/// A diagnostic could not be evaluated (e.g. similarity of a zero field).
class DiagnosticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal consistency check failed (e.g. FFT imaginary residue too large).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace nonlocal

// SPDX-License-Identifier: Apache-2.0
#include "nonlocal/linear_solvers.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <string>

#include "nonlocal/errors.hpp"

namespace nonlocal {
namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Thomas sweep with the diagonal given separately so callers can patch it.
void thomas(std::span<const double> lower, std::span<const double> diag, std::span<const double> upper,
            std::span<const double> rhs, std::span<double> x, std::vector<double>& work) {
    const std::size_t n = diag.size();
    work.resize(n);
    double pivot = diag[0];
    if (pivot == 0.0) throw SolverError("zero pivot in tridiagonal solve at row 0", 0);
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        work[i] = upper[i - 1] / pivot;
        pivot = diag[i] - lower[i] * work[i];
        if (pivot == 0.0 || !std::isfinite(pivot))
            throw SolverError("zero pivot in tridiagonal solve at row " + std::to_string(i),
                              static_cast<std::ptrdiff_t>(i));
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= work[i + 1] * x[i + 1];
}

std::vector<double> cyclic_sherman_morrison(const CyclicTridiagonalSystem& sys, std::span<const double> rhs) {
    const std::size_t n = sys.size();
    const double corner_low = sys.lower[0];      // A(0, N-1)
    const double corner_high = sys.upper[n - 1]; // A(N-1, 0)

    std::vector<double> x(n), work;
    if (corner_low == 0.0 && corner_high == 0.0) {
        thomas(sys.lower, sys.diag, sys.upper, rhs, x, work);
        return x;
    }

    // A = T + w z^T with w = (gamma, 0, ..., corner_high), z = (1, 0, ..., corner_low/gamma).
    const double gamma = sys.diag[0] != 0.0 ? -sys.diag[0] : -1.0;
    std::vector<double> d(sys.diag);
    d[0] -= gamma;
    d[n - 1] -= corner_high * corner_low / gamma;

    thomas(sys.lower, d, sys.upper, rhs, x, work);
    std::vector<double> w(n, 0.0), z(n);
    w[0] = gamma;
    w[n - 1] = corner_high;
    thomas(sys.lower, d, sys.upper, w, z, work);

    const double denom = 1.0 + z[0] + corner_low / gamma * z[n - 1];
    if (denom == 0.0 || !std::isfinite(denom))
        throw SolverError("cyclic tridiagonal system is singular (Sherman-Morrison denominator vanished)", 0);
    const double factor = (x[0] + corner_low / gamma * x[n - 1]) / denom;
    for (std::size_t i = 0; i < n; ++i) x[i] -= factor * z[i];
    return x;
}

}  // namespace

std::vector<double> CyclicTridiagonalSystem::multiply(std::span<const double> x) const {
    const std::size_t n = size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = i == 0 ? n - 1 : i - 1;
        const std::size_t next = i + 1 == n ? 0 : i + 1;
        y[i] = lower[i] * x[prev] + diag[i] * x[i] + upper[i] * x[next];
    }
    return y;
}

double CyclicTridiagonalSystem::norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        m = std::max(m, std::abs(lower[i]) + std::abs(diag[i]) + std::abs(upper[i]));
    return m;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n)
        throw ConfigError("solve_tridiagonal: inconsistent sizes");
    if (n == 0) return {};
    std::vector<double> x(n), work;
    thomas(lower, diag, upper, rhs, x, work);
    return x;
}

std::vector<double> solve_cyclic_tridiagonal(const CyclicTridiagonalSystem& sys, std::span<const double> rhs) {
    const std::size_t n = sys.size();
    if (n < 3) throw ConfigError("solve_cyclic_tridiagonal requires N >= 3");
    if (sys.lower.size() != n || sys.upper.size() != n || rhs.size() != n)
        throw ConfigError("solve_cyclic_tridiagonal: inconsistent sizes");

    auto x = cyclic_sherman_morrison(sys, rhs);
    const double anorm = sys.norm_inf();
    auto residual_ok = [&](std::span<const double> r) {
        return max_abs(r) <= 1e-10 * (anorm * max_abs(x) + max_abs(rhs));
    };

    auto ax = sys.multiply(x);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ax[i];
    if (residual_ok(r)) return x;

    const auto dx = cyclic_sherman_morrison(sys, r);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    ax = sys.multiply(x);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ax[i];
    if (!residual_ok(r) || !std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); }))
        throw SolverError("cyclic tridiagonal solve did not reach the residual bound (ill-conditioned system)", -1,
                          max_abs(r) / std::max(anorm * max_abs(x) + max_abs(rhs), 1e-300));
    return x;
}

// ---------------------------------------------------------------------------

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) acc += val[static_cast<std::size_t>(p)] * x[static_cast<std::size_t>(col[static_cast<std::size_t>(p)])];
        y[i] = acc;
    }
    return y;
}

void SparseSystem::add(std::size_t row, std::size_t col, double value) {
    if (row >= n_ || col >= n_) throw ConfigError("SparseSystem::add: index out of range");
    entries_.push_back({row, col, value});
}

CsrMatrix SparseSystem::to_csr() const {
    auto sorted = entries_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    CsrMatrix m;
    m.n = n_;
    m.row_ptr.assign(n_ + 1, 0);
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (k > 0 && sorted[k].row == sorted[k - 1].row && sorted[k].col == sorted[k - 1].col) {
            m.val.back() += sorted[k].value;
            continue;
        }
        m.col.push_back(static_cast<int>(sorted[k].col));
        m.val.push_back(sorted[k].value);
        ++m.row_ptr[sorted[k].row + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
    return m;
}

std::vector<double> solve_sparse(const CsrMatrix& A, std::span<const double> rhs, SparseSolveOptions opts,
                                 std::span<const double> guess) {
    using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
    const auto n = static_cast<Eigen::Index>(A.n);
    if (rhs.size() != A.n) throw ConfigError("solve_sparse: rhs length does not match matrix dimension");
    if (!guess.empty() && guess.size() != A.n) throw ConfigError("solve_sparse: initial guess has wrong length");

    const double bnorm = norm2(rhs);
    if (bnorm == 0.0) return std::vector<double>(A.n, 0.0);

    Eigen::Map<const SpMat> view(n, n, static_cast<Eigen::Index>(A.val.size()), A.row_ptr.data(), A.col.data(),
                                 A.val.data());
    const SpMat mat = view;
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
    Eigen::VectorXd x0 = guess.empty() ? Eigen::VectorXd::Zero(n) : Eigen::Map<const Eigen::VectorXd>(guess.data(), n).eval();

    auto relative_residual = [&](const Eigen::VectorXd& x) { return (b - mat * x).norm() / bnorm; };

    const bool direct = opts.method == SparseMethod::direct ||
                        (opts.method == SparseMethod::automatic && A.n <= opts.direct_limit);
    if (direct) {
        const Eigen::SparseMatrix<double, Eigen::ColMajor, int> cm = mat;
        Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor, int>> lu;
        lu.compute(cm);
        if (lu.info() != Eigen::Success) throw SolverError("sparse LU factorization failed: " + lu.lastErrorMessage());
        const Eigen::VectorXd x = lu.solve(b);
        const double achieved = relative_residual(x);
        if (!(achieved <= opts.tol) || !x.allFinite())
            throw SolverError("sparse LU residual " + std::to_string(achieved) + " above tolerance", -1, achieved);
        return {x.data(), x.data() + n};
    }

    Eigen::VectorXd x;
    double achieved = 0.0;
    {
        Eigen::BiCGSTAB<SpMat, Eigen::DiagonalPreconditioner<double>> solver;
        solver.setTolerance(opts.tol * 0.5);
        solver.setMaxIterations(opts.max_iterations);
        solver.compute(mat);
        x = solver.solveWithGuess(b, x0);
        achieved = relative_residual(x);
    }
    if (!(achieved <= opts.tol) || !x.allFinite()) {
        Eigen::BiCGSTAB<SpMat, Eigen::IncompleteLUT<double>> solver;
        solver.setTolerance(opts.tol * 0.5);
        solver.setMaxIterations(opts.max_iterations);
        solver.compute(mat);
        if (solver.info() != Eigen::Success) throw SolverError("incomplete LU factorization failed", -1, achieved);
        x = solver.solveWithGuess(b, x0);
        achieved = relative_residual(x);
    }
    if (!(achieved <= opts.tol) || !x.allFinite())
        throw SolverError("sparse solve did not converge; relative residual " + std::to_string(achieved), -1,
                          achieved);
    return {x.data(), x.data() + n};
}

std::vector<double> solve_sparse(const SparseSystem& sys, std::span<const double> rhs, SparseSolveOptions opts) {
    return solve_sparse(sys.to_csr(), rhs, opts);
}

}  // namespace nonlocal

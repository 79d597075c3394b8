// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nonlocal {

/// Tridiagonal matrix with periodic corners: row i couples to columns i-1, i,
/// i+1 (mod N). lower[0] is the (0, N-1) corner, upper[N-1] the (N-1, 0) corner.
struct CyclicTridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    CyclicTridiagonalSystem() = default;
    explicit CyclicTridiagonalSystem(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

    std::size_t size() const noexcept { return diag.size(); }

    /// A*x with periodic wrap.
    std::vector<double> multiply(std::span<const double> x) const;

    /// Max absolute row sum.
    double norm_inf() const;
};

/// Plain (non-periodic) Thomas solve; lower[0] and upper[N-1] are ignored.
/// Throws SolverError with the row index on a zero pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

/// Solves the periodic system by a Sherman-Morrison rank-one correction around
/// two Thomas solves, followed by one step of iterative refinement when the
/// residual exceeds 1e-10 (|A| |x| + |rhs|). Requires N >= 3.
std::vector<double> solve_cyclic_tridiagonal(const CyclicTridiagonalSystem& sys, std::span<const double> rhs);

/// Compressed-row sparse matrix.
struct CsrMatrix {
    std::size_t n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    std::vector<double> multiply(std::span<const double> x) const;
};

/// Triplet accumulator; duplicates are summed on conversion.
class SparseSystem {
public:
    explicit SparseSystem(std::size_t dimension) : n_(dimension) {}

    void add(std::size_t row, std::size_t col, double value);
    std::size_t dimension() const noexcept { return n_; }

    /// Sorted, duplicate-free CSR (explicit zeros that arise from summation are kept).
    CsrMatrix to_csr() const;

private:
    struct Entry {
        std::size_t row, col;
        double value;
    };
    std::size_t n_;
    std::vector<Entry> entries_;
};

enum class SparseMethod {
    automatic,  ///< direct up to `direct_limit` unknowns, iterative above
    direct,     ///< sparse LU
    iterative,  ///< BiCGSTAB
};

struct SparseSolveOptions {
    double tol = 1e-10;         ///< relative residual |b - Ax| / |b|
    int max_iterations = 2000;  ///< per Krylov attempt
    SparseMethod method = SparseMethod::automatic;
    std::size_t direct_limit = 1024;
};

/// Sparse LU, or BiCGSTAB with Jacobi preconditioning retried with an
/// incomplete-LU preconditioner if the first attempt stalls. `guess`, when
/// non-empty, is the Krylov starting iterate. Both paths check the relative
/// residual against `tol` and throw SolverError carrying it on failure.
std::vector<double> solve_sparse(const CsrMatrix& A, std::span<const double> rhs, SparseSolveOptions opts = {},
                                 std::span<const double> guess = {});

std::vector<double> solve_sparse(const SparseSystem& sys, std::span<const double> rhs, SparseSolveOptions opts = {});

}  // namespace nonlocal

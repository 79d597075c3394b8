// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>
#include <vector>

#include "nonlocal/grid.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/linear_solvers.hpp"

namespace nonlocal {

/// How each grid cell is cut into two triangles.
enum class DiagonalSplit {
    uniform,     ///< every cell along its (0,0)-(1,1) diagonal; the mesh is symmetric under x<->y
    alternating, ///< diagonal direction flips with the parity of ix+iy
};

struct Triangle {
    std::array<std::size_t, 3> nodes;
    /// Vertex positions relative to the owning cell's lower-left corner, in cells.
    std::array<std::array<int, 2>, 3> offsets;
};

/// Structured periodic triangulation of [-L, L)^2: N^2 nodes, 2N^2 triangles of
/// area h^2/2. Cell (ix, iy) owns triangles 2c and 2c+1 with c = iy*N + ix.
struct PeriodicTriangulation {
    PeriodicGrid2D grid;
    DiagonalSplit split;
    std::vector<Triangle> elements;

    double element_area(std::size_t e) const;
    /// Constant gradients of the three local basis functions.
    std::array<std::array<double, 2>, 3> gradients(std::size_t e) const;
};

PeriodicTriangulation build_mesh(const PeriodicGrid2D& grid, DiagonalSplit split = DiagonalSplit::uniform);

/// Mass and stiffness matrices on a shared CSR pattern, plus the scatter map
/// used to rebuild the advection part each step.
class FemOperators2D {
public:
    explicit FemOperators2D(PeriodicTriangulation mesh);

    const PeriodicTriangulation& mesh() const noexcept { return mesh_; }
    const CsrMatrix& mass() const noexcept { return mass_; }
    const CsrMatrix& stiffness() const noexcept { return stiffness_; }

    /// T_{ij} = int phi_j (K_h . grad phi_i), with K_h the P1 interpolant of the
    /// nodal vector field, integrated exactly. Same pattern as mass().
    CsrMatrix advection(const VectorField2D& K) const;

    /// M + D tau S - tau T(K).
    CsrMatrix system(const VectorField2D& K, double D, double tau) const;

private:
    PeriodicTriangulation mesh_;
    CsrMatrix mass_;
    CsrMatrix stiffness_;
    std::vector<std::array<std::size_t, 9>> scatter_;  // element -> CSR slot of (a, b)
};

struct FemParams2D {
    double D = 1.0;
    double tau = 0.1;
    double solver_tol = 1e-10;
};

/// Semi-implicit P1 stepper on a periodic square. Holds the time-independent
/// operators; one instance per simulation thread.
class Fem2DStepper {
public:
    Fem2DStepper(const PeriodicGrid2D& grid, FemParams2D params, DiagonalSplit split = DiagonalSplit::uniform);

    /// Solves (M + D tau S - tau T(K)) u^{n+1} = M u^n, warm-started from u^n.
    Field2D step(const Field2D& u, const VectorField2D& K) const;

    const FemOperators2D& operators() const noexcept { return ops_; }
    const FemParams2D& params() const noexcept { return params_; }

private:
    FemParams2D params_;
    FemOperators2D ops_;
};

/// One step with a freshly built mesh and K = k_fft_2d(u) (g = u).
Field2D fem2d_step(const Field2D& u, double alpha, double r, const FemParams2D& params,
                   KernelWeight weight = KernelWeight::unit);

}  // namespace nonlocal

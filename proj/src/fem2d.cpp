// SPDX-License-Identifier: Apache-2.0
#include "nonlocal/fem2d.hpp"

#include <algorithm>
#include <cmath>

#include "nonlocal/errors.hpp"

namespace nonlocal {

double PeriodicTriangulation::element_area(std::size_t e) const {
    const auto& o = elements[e].offsets;
    const double h = grid.spacing();
    const double cross = (o[1][0] - o[0][0]) * (o[2][1] - o[0][1]) - (o[2][0] - o[0][0]) * (o[1][1] - o[0][1]);
    return 0.5 * std::abs(cross) * h * h;
}

std::array<std::array<double, 2>, 3> PeriodicTriangulation::gradients(std::size_t e) const {
    const auto& o = elements[e].offsets;
    const double h = grid.spacing();
    const double x0 = o[0][0] * h, y0 = o[0][1] * h;
    const double x1 = o[1][0] * h, y1 = o[1][1] * h;
    const double x2 = o[2][0] * h, y2 = o[2][1] * h;
    const double det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
    return {{{(y1 - y2) / det, (x2 - x1) / det}, {(y2 - y0) / det, (x0 - x2) / det}, {(y0 - y1) / det, (x1 - x0) / det}}};
}

PeriodicTriangulation build_mesh(const PeriodicGrid2D& grid, DiagonalSplit split) {
    const std::size_t n = grid.cells_per_axis();
    if (n < 2) throw ConfigError("build_mesh requires at least 2 cells per axis");
    PeriodicTriangulation mesh{grid, split, {}};
    mesh.elements.reserve(2 * n * n);
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            const auto sx = static_cast<std::ptrdiff_t>(ix);
            const auto sy = static_cast<std::ptrdiff_t>(iy);
            auto node = [&](int dx, int dy) { return grid.node(sx + dx, sy + dy); };
            auto tri = [&](std::array<std::array<int, 2>, 3> off) {
                mesh.elements.push_back({{node(off[0][0], off[0][1]), node(off[1][0], off[1][1]), node(off[2][0], off[2][1])}, off});
            };
            const bool main_diagonal = split == DiagonalSplit::uniform || (ix + iy) % 2 == 0;
            if (main_diagonal) {
                tri({{{0, 0}, {1, 0}, {1, 1}}});
                tri({{{0, 0}, {1, 1}, {0, 1}}});
            } else {
                tri({{{0, 0}, {1, 0}, {0, 1}}});
                tri({{{1, 0}, {1, 1}, {0, 1}}});
            }
        }
    }
    return mesh;
}

// ---------------------------------------------------------------------------

FemOperators2D::FemOperators2D(PeriodicTriangulation mesh) : mesh_(std::move(mesh)) {
    const std::size_t nodes = mesh_.grid.size();
    SparseSystem mass(nodes), stiff(nodes);
    for (std::size_t e = 0; e < mesh_.elements.size(); ++e) {
        const auto& nd = mesh_.elements[e].nodes;
        const double area = mesh_.element_area(e);
        const auto grad = mesh_.gradients(e);
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                mass.add(nd[a], nd[b], area / 12.0 * (a == b ? 2.0 : 1.0));
                stiff.add(nd[a], nd[b], area * (grad[a][0] * grad[b][0] + grad[a][1] * grad[b][1]));
            }
        }
    }
    mass_ = mass.to_csr();
    stiffness_ = stiff.to_csr();
    if (mass_.col != stiffness_.col) throw InternalError("mass and stiffness patterns differ");

    scatter_.resize(mesh_.elements.size());
    for (std::size_t e = 0; e < mesh_.elements.size(); ++e) {
        const auto& nd = mesh_.elements[e].nodes;
        for (int a = 0; a < 3; ++a) {
            const auto begin = mass_.col.begin() + mass_.row_ptr[nd[a]];
            const auto end = mass_.col.begin() + mass_.row_ptr[nd[a] + 1];
            for (int b = 0; b < 3; ++b) {
                const auto it = std::lower_bound(begin, end, static_cast<int>(nd[b]));
                scatter_[e][static_cast<std::size_t>(3 * a + b)] = static_cast<std::size_t>(it - mass_.col.begin());
            }
        }
    }
}

CsrMatrix FemOperators2D::advection(const VectorField2D& K) const {
    if (K.x.size() != mesh_.grid.size() || K.y.size() != mesh_.grid.size())
        throw ConfigError("advection: K does not match the mesh");
    CsrMatrix t = mass_;
    std::fill(t.val.begin(), t.val.end(), 0.0);
    for (std::size_t e = 0; e < mesh_.elements.size(); ++e) {
        const auto& nd = mesh_.elements[e].nodes;
        const double area = mesh_.element_area(e);
        const auto grad = mesh_.gradients(e);
        const double sx = K.x[nd[0]] + K.x[nd[1]] + K.x[nd[2]];
        const double sy = K.y[nd[0]] + K.y[nd[1]] + K.y[nd[2]];
        for (int b = 0; b < 3; ++b) {
            // int phi_b K_h = (area/12) (K_b + sum_c K_c), exact for P1 K_h.
            const double wx = area / 12.0 * (K.x[nd[b]] + sx);
            const double wy = area / 12.0 * (K.y[nd[b]] + sy);
            for (int a = 0; a < 3; ++a)
                t.val[scatter_[e][static_cast<std::size_t>(3 * a + b)]] += wx * grad[a][0] + wy * grad[a][1];
        }
    }
    return t;
}

CsrMatrix FemOperators2D::system(const VectorField2D& K, double D, double tau) const {
    CsrMatrix a = advection(K);
    for (std::size_t p = 0; p < a.val.size(); ++p)
        a.val[p] = mass_.val[p] + D * tau * stiffness_.val[p] - tau * a.val[p];
    return a;
}

// ---------------------------------------------------------------------------

Fem2DStepper::Fem2DStepper(const PeriodicGrid2D& grid, FemParams2D params, DiagonalSplit split)
    : params_(params), ops_(build_mesh(grid, split)) {
    if (grid.cells_per_axis() < 4) throw ConfigError("the 2D stepper requires N >= 4");
    if (!(params.tau > 0.0) || !(params.D >= 0.0)) throw ConfigError("2D stepper requires tau > 0 and D >= 0");
}

Field2D Fem2DStepper::step(const Field2D& u, const VectorField2D& K) const {
    if (!(u.grid == ops_.mesh().grid)) throw ConfigError("field grid does not match the stepper mesh");
    const auto a = ops_.system(K, params_.D, params_.tau);
    const auto rhs = ops_.mass().multiply(u.values);
    return Field2D(u.grid, solve_sparse(a, rhs, {params_.solver_tol, 2000}, u.values));
}

Field2D fem2d_step(const Field2D& u, double alpha, double r, const FemParams2D& params, KernelWeight weight) {
    auto [kx, ky] = k_fft_2d(u, alpha, r, weight);
    return Fem2DStepper(u.grid, params).step(u, VectorField2D{std::move(kx), std::move(ky)});
}

}  // namespace nonlocal

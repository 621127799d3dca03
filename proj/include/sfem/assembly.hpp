#pragma once

#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "sfem/element.hpp"
#include "sfem/errors.hpp"
#include "sfem/problem.hpp"
#include "sfem/sparse.hpp"
#include "sfem/surface_mesh.hpp"

namespace sfem {

/// Per-vertex values aligned with the mesh node ordering.
using NodalField = std::vector<double>;

enum class CoeffEval {
    mesh_point,         // evaluate coefficients at the quadrature point itself
    surface_projection, // evaluate at its exact-surface projection
};

struct AssembledSystem {
    SparseMatrix A_bar;    // square, identity rows for boundary nodes
    std::vector<double> d; // load vector; g values on boundary rows
};

/// Assemble the frozen-coefficient system matrix and load vector at the given
/// iterate: interior rows carry b_ij + r_ij and the f - q(.,0) load, boundary
/// rows are identity with the Dirichlet values.
inline AssembledSystem assemble(const SurfaceMesh& mesh, const ProblemSpec& problem,
                                const NodalField& iterate,
                                CoeffEval eval = CoeffEval::mesh_point) {
    const int n_total = mesh.n_vertices();
    const int n_int = mesh.n_interior;
    if (static_cast<int>(iterate.size()) != n_total)
        throw ParameterError("assemble: iterate length does not match vertex count");

    std::vector<std::tuple<int, int, double>> triplets;
    triplets.reserve(static_cast<size_t>(mesh.n_triangles()) * 9 + (n_total - n_int));
    std::vector<double> d(n_total, 0.0);

    for (int e = 0; e < mesh.n_triangles(); ++e) {
        const auto& t = mesh.triangles[e];
        const ElementGeometry geom = element_geometry(
            {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]});
        const auto mids = edge_midpoints(geom);

        Vec3 grad_u{};
        for (int k = 0; k < 3; ++k) grad_u += geom.basis_gradients[k] * iterate[t[k]];

        // quadrature-point values, frozen at the iterate
        std::array<double, 3> bq, rq, fq;
        for (int q = 0; q < 3; ++q) {
            Vec3 xq = mids[q];
            if (eval == CoeffEval::surface_projection && mesh.kind != SurfaceKind::none)
                xq = project_to_surface(mesh, xq);
            double uq = 0.0;
            for (int k = 0; k < 3; ++k) uq += kMidpointBasis[k][q] * iterate[t[k]];
            bq[q] = problem.b(xq, uq, grad_u);
            rq[q] = r_of(problem, xq, uq);
            fq[q] = problem.f(xq) - problem.q(xq, 0.0);
            if (!std::isfinite(bq[q]) || !std::isfinite(rq[q]) || !std::isfinite(fq[q]))
                throw AssemblyError("non-finite coefficient on element " + std::to_string(e));
        }

        const double w = geom.area / 3.0;
        for (int i = 0; i < 3; ++i) {
            if (t[i] >= n_int) continue; // boundary row stays an identity row
            for (int j = 0; j < 3; ++j) {
                double bij = 0.0, rij = 0.0;
                const double gij = dot(geom.basis_gradients[i], geom.basis_gradients[j]);
                for (int q = 0; q < 3; ++q) {
                    bij += w * bq[q] * gij;
                    rij += w * rq[q] * kMidpointBasis[i][q] * kMidpointBasis[j][q];
                }
                triplets.emplace_back(t[i], t[j], bij + rij);
            }
            for (int q = 0; q < 3; ++q) d[t[i]] += w * fq[q] * kMidpointBasis[i][q];
        }
    }

    for (int i = n_int; i < n_total; ++i) {
        triplets.emplace_back(i, i, 1.0);
        d[i] = problem.g(mesh.vertices[i]);
    }

    return {SparseMatrix::from_triplets(n_total, n_total, std::move(triplets)), std::move(d)};
}

} // namespace sfem

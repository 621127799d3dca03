#pragma once

#include <algorithm>
#include <array>
#include <functional>

#include "sfem/errors.hpp"
#include "sfem/vec3.hpp"

namespace sfem {

/// Per-element quantities of the P1 basis: the element plane's unit normal
/// and the (constant) tangential gradients of the three barycentric hat
/// functions.
struct ElementGeometry {
    std::array<Vec3, 3> vertex_coords;
    double area = 0.0;
    Vec3 unit_normal;
    std::array<Vec3, 3> basis_gradients;
};

inline ElementGeometry element_geometry(const std::array<Vec3, 3>& coords) {
    const Vec3 e1 = coords[1] - coords[0];
    const Vec3 e2 = coords[2] - coords[0];
    const Vec3 n = cross(e1, e2);
    const double n2 = norm(n);
    const double scale = std::max({norm(e1), norm(e2), norm(coords[2] - coords[1])});
    if (!(n2 > 1e-14 * scale * scale)) throw GeometryError("degenerate triangle");

    ElementGeometry geom;
    geom.vertex_coords = coords;
    geom.area = 0.5 * n2;
    geom.unit_normal = n / n2;
    for (int i = 0; i < 3; ++i) {
        // in-plane height vector from the opposite edge to vertex i;
        // grad(chi_i) = hvec / |hvec|^2
        const Vec3& a = coords[(i + 1) % 3];
        const Vec3& b = coords[(i + 2) % 3];
        const Vec3 edge = b - a;
        const Vec3 w = coords[i] - a;
        const Vec3 hvec = w - edge * (dot(w, edge) / dot(edge, edge));
        geom.basis_gradients[i] = hvec / dot(hvec, hvec);
    }
    return geom;
}

/// Entry (i,j) = grad(chi_i) . grad(chi_j). Off-diagonals equal
/// -cot(angle at the third vertex) / (2 area).
inline std::array<std::array<double, 3>, 3> gradient_pair_products(const ElementGeometry& geom) {
    std::array<std::array<double, 3>, 3> m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[i][j] = dot(geom.basis_gradients[i], geom.basis_gradients[j]);
    return m;
}

inline std::array<Vec3, 3> edge_midpoints(const ElementGeometry& geom) {
    const auto& v = geom.vertex_coords;
    return {(v[0] + v[1]) * 0.5, (v[1] + v[2]) * 0.5, (v[2] + v[0]) * 0.5};
}

// kMidpointBasis[k][q] = chi_k evaluated at the q-th edge midpoint,
// with midpoints ordered as returned by edge_midpoints()
inline constexpr std::array<std::array<double, 3>, 3> kMidpointBasis = {{
    {0.5, 0.0, 0.5},
    {0.5, 0.5, 0.0},
    {0.0, 0.5, 0.5},
}};

/// Edge-midpoint quadrature, exact for polynomials of degree <= 2.
inline double quad_edge_midpoint(const std::function<double(const Vec3&)>& f,
                                 const ElementGeometry& geom) {
    const auto mids = edge_midpoints(geom);
    return geom.area / 3.0 * (f(mids[0]) + f(mids[1]) + f(mids[2]));
}

} // namespace sfem

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sfem/errors.hpp"
#include "sfem/vec3.hpp"

namespace sfem {

enum class SurfaceKind { none, hemisphere, torus };

/// Triangulated 2-manifold with boundary, embedded in 3-space.
/// Vertices are ordered interior-first: indices [0, n_interior) are interior,
/// the rest lie on the boundary polygon.
struct SurfaceMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    int n_interior = 0;
    SurfaceKind kind = SurfaceKind::none;
    double torus_R = 0.0;
    double torus_r = 0.0;
    double h = 0.0; // max element diameter (longest edge)
    int n_edges = 0;
    int n_boundary_edges = 0;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
    bool is_boundary(int v) const { return v >= n_interior; }
    int euler_characteristic() const { return n_vertices() - n_edges + n_triangles(); }

    std::string tag_string() const {
        switch (kind) {
        case SurfaceKind::hemisphere: return "unit-hemisphere";
        case SurfaceKind::torus:
            return "torus(" + std::to_string(torus_R) + "," + std::to_string(torus_r) + ")";
        default: return "none";
        }
    }
};

namespace detail {

inline std::pair<int, int> edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// edge -> number of incident triangles
inline std::map<std::pair<int, int>, int> edge_counts(const std::vector<std::array<int, 3>>& tris) {
    std::map<std::pair<int, int>, int> counts;
    for (const auto& t : tris) {
        counts[edge_key(t[0], t[1])]++;
        counts[edge_key(t[1], t[2])]++;
        counts[edge_key(t[2], t[0])]++;
    }
    return counts;
}

inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    return 0.5 * norm(cross(b - a, c - a));
}

inline double sphere_residual(const Vec3& v) { return std::abs(norm(v) - 1.0); }

inline double torus_residual(const Vec3& v, double R, double r) {
    const double rho = std::hypot(v.x, v.y);
    return std::abs((rho - R) * (rho - R) + v.z * v.z - r * r);
}

} // namespace detail

inline Vec3 project_to_sphere(const Vec3& p) { return normalized(p); }

/// Closest point on the torus: project (x,y) to the major circle, then
/// rescale the offset in the (radial, z) plane to length r.
inline Vec3 project_to_torus(const Vec3& p, double R, double r) {
    double rho = std::hypot(p.x, p.y);
    if (rho < 1e-14) throw GeometryError("torus projection undefined on the symmetry axis");
    const Vec3 center{p.x / rho * R, p.y / rho * R, 0.0};
    const Vec3 w = p - center;
    const double wn = norm(w);
    if (wn < 1e-14) throw GeometryError("torus projection undefined on the major circle");
    return center + w * (r / wn);
}

inline Vec3 project_to_surface(const SurfaceMesh& mesh, const Vec3& p) {
    switch (mesh.kind) {
    case SurfaceKind::hemisphere: return project_to_sphere(p);
    case SurfaceKind::torus: return project_to_torus(p, mesh.torus_R, mesh.torus_r);
    default: throw MeshError("refine: mesh has no exact surface tag");
    }
}

/// Project onto the exact boundary curve. For the hemisphere this is the unit
/// equator circle; for the torus, the minor circle at theta = 0 or pi (chosen
/// by the sign of x, which never vanishes on either circle since R > r).
inline Vec3 project_to_boundary_curve(const SurfaceMesh& mesh, const Vec3& p) {
    switch (mesh.kind) {
    case SurfaceKind::hemisphere: {
        const double rho = std::hypot(p.x, p.y);
        if (rho < 1e-14) throw GeometryError("equator projection undefined at the pole");
        return {p.x / rho, p.y / rho, 0.0};
    }
    case SurfaceKind::torus: {
        const double s = p.x >= 0.0 ? 1.0 : -1.0;
        const double rho = std::hypot(p.x, p.y);
        return project_to_torus({s * rho, 0.0, p.z}, mesh.torus_R, mesh.torus_r);
    }
    default: throw MeshError("refine: mesh has no exact boundary curve");
    }
}

/// Validate raw vertex/triangle data, establish interior-first ordering and
/// cached quantities. Throws MeshError on connectivity or geometry defects.
inline SurfaceMesh build_surface_mesh(std::vector<Vec3> vertices,
                                      std::vector<std::array<int, 3>> triangles,
                                      SurfaceKind kind, double torus_R = 0.0,
                                      double torus_r = 0.0) {
    const int nv = static_cast<int>(vertices.size());
    for (const auto& t : triangles) {
        for (int k : t)
            if (k < 0 || k >= nv) throw MeshError("triangle references invalid vertex index");
        if (t[0] == t[1] || t[1] == t[2] || t[2] == t[0])
            throw MeshError("triangle with repeated vertex indices");
    }

    auto counts = detail::edge_counts(triangles);
    std::vector<char> on_boundary(nv, 0);
    int n_boundary_edges = 0;
    for (const auto& [e, c] : counts) {
        if (c == 1) {
            n_boundary_edges++;
            on_boundary[e.first] = 1;
            on_boundary[e.second] = 1;
        } else if (c != 2) {
            throw MeshError("nonmanifold edge (incident to " + std::to_string(c) + " triangles)");
        }
    }

    // interior-first permutation, stable in the original index
    std::vector<int> order(nv);
    for (int i = 0; i < nv; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return on_boundary[a] < on_boundary[b]; });
    std::vector<int> new_index(nv);
    for (int i = 0; i < nv; ++i) new_index[order[i]] = i;

    SurfaceMesh mesh;
    mesh.vertices.resize(nv);
    for (int i = 0; i < nv; ++i) mesh.vertices[new_index[i]] = vertices[i];
    mesh.triangles.reserve(triangles.size());
    for (const auto& t : triangles)
        mesh.triangles.push_back({new_index[t[0]], new_index[t[1]], new_index[t[2]]});
    mesh.n_interior = static_cast<int>(std::count(on_boundary.begin(), on_boundary.end(), 0));
    mesh.kind = kind;
    mesh.torus_R = torus_R;
    mesh.torus_r = torus_r;
    mesh.n_edges = static_cast<int>(counts.size());
    mesh.n_boundary_edges = n_boundary_edges;

    double h = 0.0;
    for (const auto& t : mesh.triangles)
        for (int k = 0; k < 3; ++k)
            h = std::max(h, norm(mesh.vertices[t[k]] - mesh.vertices[t[(k + 1) % 3]]));
    mesh.h = h;

    for (const auto& t : mesh.triangles) {
        const double area =
            detail::triangle_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
        if (!(area > 1e-14 * h * h)) throw MeshError("zero-area triangle");
    }

    if (kind == SurfaceKind::hemisphere) {
        for (const auto& v : mesh.vertices) {
            if (detail::sphere_residual(v) > 1e-12 || v.z < -1e-12)
                throw MeshError("vertex off the unit hemisphere");
        }
    } else if (kind == SurfaceKind::torus) {
        for (const auto& v : mesh.vertices)
            if (detail::torus_residual(v, torus_R, torus_r) > 1e-10)
                throw MeshError("vertex off the torus surface");
    }
    return mesh;
}

/// Uniform 4-split with exact-surface projection of the new vertices.
/// Boundary-edge midpoints land on the exact boundary curve.
inline SurfaceMesh refine(const SurfaceMesh& mesh) {
    if (mesh.kind == SurfaceKind::none)
        throw MeshError("refine: unknown surface tag, no projection target");

    auto counts = detail::edge_counts(mesh.triangles);
    std::vector<Vec3> vertices = mesh.vertices;
    std::vector<std::array<int, 3>> tris;
    tris.reserve(mesh.triangles.size() * 4);
    std::map<std::pair<int, int>, int> midpoint;

    auto mid = [&](int a, int b) {
        const auto key = detail::edge_key(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const Vec3 m = (vertices[a] + vertices[b]) * 0.5;
        const Vec3 projected =
            counts.at(key) == 1 ? project_to_boundary_curve(mesh, m) : project_to_surface(mesh, m);
        vertices.push_back(projected);
        const int idx = static_cast<int>(vertices.size()) - 1;
        midpoint.emplace(key, idx);
        return idx;
    };

    for (const auto& t : mesh.triangles) {
        const int ab = mid(t[0], t[1]);
        const int bc = mid(t[1], t[2]);
        const int ca = mid(t[2], t[0]);
        tris.push_back({t[0], ab, ca});
        tris.push_back({ab, t[1], bc});
        tris.push_back({ca, bc, t[2]});
        tris.push_back({ab, bc, ca});
    }
    return build_surface_mesh(std::move(vertices), std::move(tris), mesh.kind, mesh.torus_R,
                              mesh.torus_r);
}

/// Upper half of an icosahedron collapsed to its disk combinatorics: apex at
/// the north pole plus ten boundary vertices on the equator circle, refined
/// `levels` times. Counts: F = 10*4^L, B = 10*2^L, V = 1 + (F+B)/2.
inline SurfaceMesh generate_hemisphere(int levels) {
    if (levels < 0 || levels > 8)
        throw ParameterError("generate_hemisphere: levels must be in [0, 8]");

    std::vector<Vec3> vertices;
    vertices.push_back({0.0, 0.0, 1.0});
    for (int k = 0; k < 10; ++k) {
        const double a = 2.0 * std::numbers::pi * k / 10.0;
        vertices.push_back({std::cos(a), std::sin(a), 0.0});
    }
    std::vector<std::array<int, 3>> tris;
    for (int k = 0; k < 10; ++k) tris.push_back({0, 1 + k, 1 + (k + 1) % 10});

    SurfaceMesh mesh = build_surface_mesh(std::move(vertices), std::move(tris),
                                          SurfaceKind::hemisphere);
    for (int l = 0; l < levels; ++l) mesh = refine(mesh);
    return mesh;
}

/// Half torus (major angle in [0, pi]) triangulated in chess-order: n_major
/// minor-circle rings, every other ring offset by half a phi-step, each strip
/// linked into 2*n_minor triangles. Boundary circles at theta = 0 and pi.
inline SurfaceMesh generate_semitorus(double R, double r, int n_major, int n_minor) {
    if (!(R > r && r > 0.0)) throw ParameterError("generate_semitorus: need R > r > 0");
    if (n_major < 4 || n_minor < 2)
        throw ParameterError("generate_semitorus: need n_major >= 4 and n_minor >= 2");

    std::vector<Vec3> vertices;
    vertices.reserve(static_cast<size_t>(n_major) * n_minor);
    for (int j = 0; j < n_major; ++j) {
        const double theta = std::numbers::pi * j / (n_major - 1);
        const double offset = (j % 2 == 1) ? 0.5 : 0.0;
        for (int i = 0; i < n_minor; ++i) {
            const double phi = 2.0 * std::numbers::pi * (i + offset) / n_minor;
            vertices.push_back({(R + r * std::cos(phi)) * std::cos(theta),
                                (R + r * std::cos(phi)) * std::sin(theta),
                                r * std::sin(phi)});
        }
    }
    auto vid = [&](int j, int i) { return j * n_minor + ((i % n_minor + n_minor) % n_minor); };
    std::vector<std::array<int, 3>> tris;
    tris.reserve(static_cast<size_t>(2 * (n_major - 1)) * n_minor);
    for (int j = 0; j + 1 < n_major; ++j) {
        for (int i = 0; i < n_minor; ++i) {
            if (j % 2 == 0) {
                tris.push_back({vid(j, i), vid(j + 1, i), vid(j, i + 1)});
                tris.push_back({vid(j + 1, i), vid(j + 1, i + 1), vid(j, i + 1)});
            } else {
                tris.push_back({vid(j, i), vid(j + 1, i + 1), vid(j, i + 1)});
                tris.push_back({vid(j, i), vid(j + 1, i), vid(j + 1, i + 1)});
            }
        }
    }
    return build_surface_mesh(std::move(vertices), std::move(tris), SurfaceKind::torus, R, r);
}

struct AngleStats {
    double min_angle = 0.0; // degrees
    double max_angle = 0.0;
    std::vector<std::array<double, 3>> per_element_angles;
    std::array<int, 18> histogram{}; // 10-degree bins
};

inline AngleStats angle_stats(const SurfaceMesh& mesh) {
    AngleStats stats;
    stats.min_angle = 180.0;
    stats.max_angle = 0.0;
    stats.per_element_angles.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        std::array<double, 3> angles;
        for (int k = 0; k < 3; ++k) {
            const Vec3 u = mesh.vertices[t[(k + 1) % 3]] - mesh.vertices[t[k]];
            const Vec3 w = mesh.vertices[t[(k + 2) % 3]] - mesh.vertices[t[k]];
            const double c = std::clamp(dot(u, w) / (norm(u) * norm(w)), -1.0, 1.0);
            angles[k] = std::acos(c) * 180.0 / std::numbers::pi;
        }
        for (double a : angles) {
            stats.min_angle = std::min(stats.min_angle, a);
            stats.max_angle = std::max(stats.max_angle, a);
            stats.histogram[std::min(17, static_cast<int>(a / 10.0))]++;
        }
        stats.per_element_angles.push_back(angles);
    }
    return stats;
}

inline double mesh_h(const SurfaceMesh& mesh) { return mesh.h; }

/// (min, max) over elements of area / h^2, the constants of the mesh
/// regularity bound m1 h^2 <= meas(T) <= m2 h^2.
inline std::pair<double, double> mesh_regularity(const SurfaceMesh& mesh) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    const double h2 = mesh.h * mesh.h;
    for (const auto& t : mesh.triangles) {
        const double ratio =
            detail::triangle_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]) /
            h2;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo, hi};
}

} // namespace sfem

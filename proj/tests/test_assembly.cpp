#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sfem/assembly.hpp"

using namespace sfem;

namespace {

double entry(const SparseMatrix& m, int i, int j) {
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
        if (m.col_idx[k] == j) return m.values[k];
    return 0.0;
}

ProblemSpec laplace_with_g(std::function<double(const Vec3&)> g) {
    ProblemSpec spec = catalog("custom");
    spec.b = [](const Vec3&, double, const Vec3&) { return 1.0; };
    spec.q = [](const Vec3&, double) { return 0.0; };
    spec.f = [](const Vec3&) { return 0.0; };
    spec.g = std::move(g);
    return spec;
}

} // namespace

TEST_CASE("interior rows of the Laplace matrix sum to zero") {
    const SurfaceMesh mesh = generate_hemisphere(2);
    const auto spec = laplace_with_g([](const Vec3&) { return 0.0; });
    const NodalField iterate(mesh.n_vertices(), 0.0);
    const AssembledSystem sys = assemble(mesh, spec, iterate);

    for (int i = 0; i < mesh.n_interior; ++i) {
        double row_sum = 0.0;
        for (int k = sys.A_bar.row_ptr[i]; k < sys.A_bar.row_ptr[i + 1]; ++k)
            row_sum += sys.A_bar.values[k];
        CHECK(std::abs(row_sum) <= 1e-12 * sys.A_bar.max_abs());
        CHECK(std::abs(sys.d[i]) <= 1e-14);
    }
}

TEST_CASE("interior block is symmetric") {
    const SurfaceMesh mesh = generate_hemisphere(2);
    const ProblemSpec spec = catalog("radiative-cooling");
    NodalField iterate(mesh.n_vertices(), 1.0);
    const AssembledSystem sys = assemble(mesh, spec, iterate);
    for (int i = 0; i < mesh.n_interior; ++i)
        for (int j = 0; j < mesh.n_interior; ++j)
            CHECK(std::abs(entry(sys.A_bar, i, j) - entry(sys.A_bar, j, i)) <=
                  1e-12 * sys.A_bar.max_abs());
}

TEST_CASE("reaction term adds a nonnegative diagonal-dominant piece") {
    const SurfaceMesh mesh = generate_hemisphere(1);
    const ProblemSpec radiative = catalog("radiative-cooling");
    const auto laplace = laplace_with_g(radiative.g);
    NodalField ones(mesh.n_vertices(), 1.0);
    const AssembledSystem with_r = assemble(mesh, radiative, ones);
    const AssembledSystem without_r = assemble(mesh, laplace, ones);

    // at iterate 1, r = sigma * u^3 = 1 > 0 so every mass-matrix entry is added
    for (int i = 0; i < mesh.n_interior; ++i)
        for (int j = 0; j < mesh.n_vertices(); ++j) {
            const double diff = entry(with_r.A_bar, i, j) - entry(without_r.A_bar, i, j);
            if (j == i)
                CHECK(diff > 0.0);
            else
                CHECK(diff >= -1e-15);
        }
}

TEST_CASE("load vector carries f - q(.,0)") {
    const SurfaceMesh mesh = generate_hemisphere(1);
    ProblemSpec spec = laplace_with_g([](const Vec3&) { return 0.0; });
    spec.f = [](const Vec3&) { return 2.0; };
    spec.q = [](const Vec3&, double) { return 0.5; }; // constant offset, q(.,0) = 0.5
    const NodalField iterate(mesh.n_vertices(), 0.0);
    const AssembledSystem sys = assemble(mesh, spec, iterate);

    // d_i = 1.5 * int(chi_i); the hats partition unity so the interior loads
    // sum to 1.5 * (total area - boundary hat mass) > 0, and each d_i > 0
    double total = 0.0;
    for (int i = 0; i < mesh.n_interior; ++i) {
        CHECK(sys.d[i] > 0.0);
        total += sys.d[i];
    }
    double area = 0.0, boundary_mass = 0.0;
    for (const auto& t : mesh.triangles) {
        const auto geom = element_geometry(
            {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]});
        area += geom.area;
        for (int k = 0; k < 3; ++k)
            if (mesh.is_boundary(t[k])) boundary_mass += geom.area / 3.0;
    }
    CHECK_THAT(total, Catch::Matchers::WithinRel(1.5 * (area - boundary_mass), 1e-12));
}

TEST_CASE("matrix scales linearly in b") {
    const SurfaceMesh mesh = generate_hemisphere(1);
    const auto one = laplace_with_g([](const Vec3&) { return 0.0; });
    auto three = one;
    three.b = [](const Vec3&, double, const Vec3&) { return 3.0; };
    const NodalField iterate(mesh.n_vertices(), 0.0);
    const AssembledSystem s1 = assemble(mesh, one, iterate);
    const AssembledSystem s3 = assemble(mesh, three, iterate);
    for (int i = 0; i < mesh.n_interior; ++i)
        for (int k = s1.A_bar.row_ptr[i]; k < s1.A_bar.row_ptr[i + 1]; ++k)
            CHECK_THAT(s3.A_bar.values[k],
                       Catch::Matchers::WithinAbs(3.0 * s1.A_bar.values[k],
                                                  1e-12 * s1.A_bar.max_abs()));
}

TEST_CASE("boundary rows are identity rows carrying g") {
    const SurfaceMesh mesh = generate_hemisphere(1);
    const ProblemSpec spec = catalog("radiative-cooling");
    const NodalField iterate(mesh.n_vertices(), 0.0);
    const AssembledSystem sys = assemble(mesh, spec, iterate);

    for (int i = mesh.n_interior; i < mesh.n_vertices(); ++i) {
        CHECK(sys.A_bar.row_ptr[i + 1] - sys.A_bar.row_ptr[i] == 1);
        CHECK(sys.A_bar.col_idx[sys.A_bar.row_ptr[i]] == i);
        CHECK(sys.A_bar.values[sys.A_bar.row_ptr[i]] == 1.0);
        CHECK_THAT(sys.d[i],
                   Catch::Matchers::WithinAbs(spec.g(mesh.vertices[i]), 1e-15));
    }
}

TEST_CASE("constants are discrete-harmonic for q = 0") {
    // A_bar applied to the all-ones field leaves only the boundary identity
    // rows: interior residual vanishes
    const SurfaceMesh mesh = generate_hemisphere(2);
    const auto spec = laplace_with_g([](const Vec3&) { return 1.0; });
    const NodalField ones(mesh.n_vertices(), 1.0);
    const AssembledSystem sys = assemble(mesh, spec, ones);
    const auto y = sys.A_bar.apply(ones);
    for (int i = 0; i < mesh.n_interior; ++i)
        CHECK(std::abs(y[i]) <= 1e-12 * sys.A_bar.max_abs());
}

TEST_CASE("iterate length is validated") {
    const SurfaceMesh mesh = generate_hemisphere(0);
    const ProblemSpec spec = catalog("radiative-cooling");
    CHECK_THROWS_AS(assemble(mesh, spec, NodalField(3, 0.0)), ParameterError);
}

TEST_CASE("non-finite coefficients are reported") {
    const SurfaceMesh mesh = generate_hemisphere(0);
    ProblemSpec spec = laplace_with_g([](const Vec3&) { return 0.0; });
    spec.f = [](const Vec3&) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(assemble(mesh, spec, NodalField(mesh.n_vertices(), 0.0)), AssemblyError);
}

TEST_CASE("quadrature points can be projected to the exact surface") {
    const SurfaceMesh mesh = generate_hemisphere(1);
    ProblemSpec spec = laplace_with_g([](const Vec3&) { return 0.0; });
    // f depends on |x|, so chord midpoints vs projected points must differ
    spec.f = [](const Vec3& x) { return norm(x); };
    const NodalField iterate(mesh.n_vertices(), 0.0);
    const AssembledSystem chord = assemble(mesh, spec, iterate, CoeffEval::mesh_point);
    const AssembledSystem proj = assemble(mesh, spec, iterate, CoeffEval::surface_projection);
    double max_diff = 0.0;
    for (int i = 0; i < mesh.n_interior; ++i)
        max_diff = std::max(max_diff, std::abs(chord.d[i] - proj.d[i]));
    CHECK(max_diff > 0.0);
    // chord midpoints lie strictly inside the sphere, so |x| < 1 there
    for (int i = 0; i < mesh.n_interior; ++i) CHECK(chord.d[i] < proj.d[i] + 1e-15);
}

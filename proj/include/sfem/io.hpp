#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sfem/assembly.hpp"
#include "sfem/audit.hpp"
#include "sfem/picard.hpp"
#include "sfem/sparse.hpp"
#include "sfem/surface_mesh.hpp"

namespace sfem {

namespace detail {

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << std::setprecision(17);
    return out;
}

} // namespace detail

inline void write_off(const std::string& path, const SurfaceMesh& mesh) {
    auto out = detail::open_out(path);
    out << "OFF\n" << mesh.n_vertices() << " " << mesh.n_triangles() << " 0\n";
    for (const auto& v : mesh.vertices) out << v.x << " " << v.y << " " << v.z << "\n";
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
}

/// Read an ASCII OFF file. The surface tag is declared by the caller since
/// the format does not carry it.
inline SurfaceMesh read_off(const std::string& path, SurfaceKind kind = SurfaceKind::none,
                            double torus_R = 0.0, double torus_r = 0.0) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string header;
    in >> header;
    if (header != "OFF") throw IoError("not an OFF file: " + path);
    int nv = 0, nf = 0, ne = 0;
    in >> nv >> nf >> ne;
    std::vector<Vec3> vertices(nv);
    for (auto& v : vertices) in >> v.x >> v.y >> v.z;
    std::vector<std::array<int, 3>> tris(nf);
    for (auto& t : tris) {
        int k = 0;
        in >> k;
        if (k != 3) throw IoError("OFF file contains a non-triangular face");
        in >> t[0] >> t[1] >> t[2];
    }
    if (!in) throw IoError("truncated OFF file: " + path);
    return build_surface_mesh(std::move(vertices), std::move(tris), kind, torus_R, torus_r);
}

inline void write_angles_csv(const std::string& path, const AngleStats& stats) {
    auto out = detail::open_out(path);
    out << "element,angle1,angle2,angle3\n";
    for (size_t e = 0; e < stats.per_element_angles.size(); ++e) {
        const auto& a = stats.per_element_angles[e];
        out << e << "," << a[0] << "," << a[1] << "," << a[2] << "\n";
    }
}

inline void write_solution_csv(const std::string& path, const SurfaceMesh& mesh,
                               const NodalField& u) {
    auto out = detail::open_out(path);
    out << "node,x,y,z,u,is_boundary\n";
    for (int i = 0; i < mesh.n_vertices(); ++i) {
        const auto& v = mesh.vertices[i];
        out << i << "," << v.x << "," << v.y << "," << v.z << "," << u[i] << ","
            << (mesh.is_boundary(i) ? 1 : 0) << "\n";
    }
}

inline void write_load_csv(const std::string& path, const std::vector<double>& d) {
    auto out = detail::open_out(path);
    out << "row,value\n";
    for (size_t i = 0; i < d.size(); ++i) out << i << "," << d[i] << "\n";
}

inline void write_matrix_market(const std::string& path, const SparseMatrix& A) {
    auto out = detail::open_out(path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << A.n_rows << " " << A.n_cols << " " << A.values.size() << "\n";
    for (int i = 0; i < A.n_rows; ++i)
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            out << i + 1 << " " << A.col_idx[k] + 1 << " " << A.values[k] << "\n";
}

inline nlohmann::json to_json(const SolveReport& report) {
    return {
        {"iterations", report.iterations},
        {"final_increment", report.final_increment},
        {"linear_iters_per_step", report.linear_iters_per_step},
        {"converged", report.converged},
    };
}

inline nlohmann::json to_json(const AuditReport& report) {
    nlohmann::json angle_violations = nlohmann::json::array();
    for (const auto& [e, i, j] : report.angles.violations)
        angle_violations.push_back({{"element", e}, {"local_i", i}, {"local_j", j}});
    nlohmann::json sign_violations = nlohmann::json::array();
    for (const auto& [i, j, v] : report.matrix.sign_violations)
        sign_violations.push_back({{"row", i}, {"col", j}, {"value", v}});
    nlohmann::json row_sum_violations = nlohmann::json::array();
    for (const auto& [i, s] : report.matrix.row_sum_violations)
        row_sum_violations.push_back({{"row", i}, {"sum", s}});
    return {
        {"angles",
         {{"mode", report.angles.mode == AngleMode::acute ? "acute" : "nonobtuse"},
          {"worst_pair_product", report.angles.worst_pair_product},
          {"sigma0_estimate", report.angles.sigma0_estimate},
          {"violations", angle_violations},
          {"pass", report.angles.pass}}},
        {"sign_pattern",
         {{"violations", sign_violations}, {"pass", report.matrix.sign_violations.empty()}}},
        {"row_sums",
         {{"min", report.matrix.row_sum_min},
          {"violations", row_sum_violations},
          {"pass", report.matrix.row_sum_violations.empty()}}},
        {"spd", {{"pass", report.matrix.spd_verdict}}},
        {"dmp", {{"verdict", report.dmp_verdict}, {"witness_node", report.dmp_witness}}},
    };
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
    auto out = detail::open_out(path);
    out << j.dump(2) << "\n";
}

} // namespace sfem

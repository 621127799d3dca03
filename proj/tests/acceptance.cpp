// End-to-end acceptance checks. Each test case prints a single PASS/FAIL
// line so the suite doubles as a release gate report.
#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "sfem/commands.hpp"

using namespace sfem;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int criterion, bool ok, const std::string& what) {
    std::cout << "[criterion " << criterion << "] " << (ok ? "PASS" : "FAIL") << ": " << what
              << std::endl;
}

fs::path fresh_dir(const std::string& stem) {
    const fs::path p = fs::temp_directory_path() / (stem + "_" +
        std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("criterion 1: radiative cooling respects its a-priori bounds") {
    bool ok = true;
    std::ostringstream detail;
    for (int level : {2, 3, 4}) {
        const auto t0 = std::chrono::steady_clock::now();
        const SurfaceMesh mesh = generate_hemisphere(level);
        const ProblemSpec spec = catalog("radiative-cooling");
        const SolveResult res = picard_solve(mesh, spec);
        const double elapsed = seconds_since(t0);

        double lo = 1e300, hi = -1e300;
        for (double v : res.u) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const bool level_ok =
            res.report.converged && lo >= -1e-10 && hi <= 1.5 + 1e-10 && elapsed < 30.0;
        ok = ok && level_ok;
        detail << " level " << level << ": u in [" << lo << ", " << hi << "] in "
               << res.report.iterations << " sweeps (" << elapsed << " s);";
    }
    report(1, ok, "hemisphere solutions stay in [0, 1.5]:" + detail.str());
    CHECK(ok);
}

TEST_CASE("criterion 2: p-laplacian range coincides with the boundary range") {
    bool ok = true;
    std::ostringstream detail;
    SurfaceMesh mesh = generate_semitorus(5.0, 2.0, 9, 4);
    CatalogParams params;
    params.p = 4.0;
    params.eps_reg = 1e-8;
    const ProblemSpec spec = catalog("p-laplacian", params);
    for (int step = 0; step < 3; ++step) {
        if (step > 0) mesh = refine(mesh);
        SolveOptions opts;
        opts.damping = 0.5;
        const SolveResult res = picard_solve(mesh, spec, opts);

        double lo = 1e300, hi = -1e300;
        for (double v : res.u) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const bool level_ok = res.report.converged && std::abs(lo - 3.0) <= 1e-6 &&
                              std::abs(hi - 17.0) <= 1e-6;
        ok = ok && level_ok;
        detail << " " << mesh.n_triangles() << " elements: u in [" << lo << ", " << hi << "];";
    }
    report(2, ok, "semitorus solutions span exactly [3, 17]:" + detail.str());
    CHECK(ok);
}

TEST_CASE("criterion 3: assembled systems satisfy the matrix conditions") {
    bool ok = true;
    std::ostringstream detail;
    for (int level : {3, 4}) {
        const SurfaceMesh mesh = generate_hemisphere(level);
        const ProblemSpec spec = catalog("radiative-cooling");
        const SolveResult res = picard_solve(mesh, spec);
        const AuditReport rep = audit_solution(mesh, spec, res.u, AngleMode::acute);
        const bool level_ok = res.report.converged && rep.angles.pass &&
                              rep.matrix.sign_violations.empty() &&
                              rep.matrix.row_sum_violations.empty() && rep.matrix.spd_verdict &&
                              rep.dmp_verdict != "fail";
        ok = ok && level_ok;
        detail << " level " << level << ": sign violations "
               << rep.matrix.sign_violations.size() << ", min row sum "
               << rep.matrix.row_sum_min << ", spd " << (rep.matrix.spd_verdict ? "yes" : "no")
               << ", sigma0 " << rep.angles.sigma0_estimate << ";";
    }
    report(3, ok, "audit passes on the fine hemisphere levels:" + detail.str());
    CHECK(ok);
}

TEST_CASE("criterion 4: pair products match the cotangent formula") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    int checked = 0;
    while (checked < 1000) {
        const std::array<Vec3, 3> c = {Vec3{u(rng), u(rng), u(rng)}, Vec3{u(rng), u(rng), u(rng)},
                                       Vec3{u(rng), u(rng), u(rng)}};
        if (norm(cross(c[1] - c[0], c[2] - c[0])) < 1e-2) continue;
        const ElementGeometry geom = element_geometry(c);
        const auto prod = gradient_pair_products(geom);
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            const Vec3 a = c[i] - c[k];
            const Vec3 b = c[j] - c[k];
            const double expected = -(dot(a, b) / norm(cross(a, b))) / (2.0 * geom.area);
            const double scale = std::max(std::abs(expected), std::abs(prod[i][i]));
            worst = std::max(worst, std::abs(prod[i][j] - expected) / scale);
        }
        checked++;
    }
    const bool ok = worst <= 1e-10;
    std::ostringstream detail;
    detail << "1000 random triangles, worst relative deviation " << worst;
    report(4, ok, detail.str());
    CHECK(ok);
}

TEST_CASE("criterion 5: algebraic maximum-principle oracle") {
    const auto t0 = std::chrono::steady_clock::now();
    const OracleStats weak = algebraic_dwmp_oracle(1000, 12, 20240601, false);
    const OracleStats strict = algebraic_dwmp_oracle(1000, 12, 20240602, true);
    const double elapsed = seconds_since(t0);
    const bool ok = weak.trials == 1000 && strict.trials == 1000 && weak.violations == 0 &&
                    strict.violations == 0 && elapsed < 10.0;
    std::ostringstream detail;
    detail << "2x1000 random systems up to size 12: " << weak.violations << "+"
           << strict.violations << " violations, " << weak.rejected + strict.rejected
           << " rejected candidates, " << elapsed << " s";
    report(5, ok, detail.str());
    CHECK(ok);
}

TEST_CASE("criterion 6: mesh generator invariants") {
    bool ok = true;
    std::ostringstream msg;
    for (int level = 0; level <= 4; ++level) {
        const SurfaceMesh mesh = generate_hemisphere(level);
        const int F = 10 * (1 << (2 * level));
        const int B = 10 * (1 << level);
        const int V = 1 + (F + B) / 2;
        bool level_ok = mesh.n_triangles() == F && mesh.n_vertices() == V &&
                        mesh.euler_characteristic() == 1 &&
                        mesh.n_vertices() - mesh.n_interior == B;
        for (const auto& v : mesh.vertices)
            level_ok = level_ok && std::abs(norm(v) - 1.0) <= 1e-12 && v.z >= -1e-12;
        const auto [m1, m2] = mesh_regularity(mesh);
        level_ok = level_ok && m1 >= 0.1;
        ok = ok && level_ok;
        if (!level_ok) msg << " hemisphere level " << level << " broken;";
    }
    {
        SurfaceMesh mesh = generate_semitorus(5.0, 2.0, 9, 4);
        const int expected_v[] = {36, 136, 528};
        const int expected_f[] = {64, 256, 1024};
        for (int step = 0; step < 3; ++step) {
            if (step > 0) mesh = refine(mesh);
            bool step_ok = mesh.n_vertices() == expected_v[step] &&
                           mesh.n_triangles() == expected_f[step] &&
                           mesh.euler_characteristic() == 0;
            for (const auto& v : mesh.vertices)
                step_ok = step_ok && detail::torus_residual(v, 5.0, 2.0) <= 1e-10;
            ok = ok && step_ok;
            if (!step_ok) msg << " semitorus step " << step << " broken;";
        }
    }
    report(6, ok, msg.str().empty() ? "counts, topology, surface residuals and regularity hold"
                                       : msg.str());
    CHECK(ok);
}

TEST_CASE("criterion 7: constant boundary data is reproduced") {
    const SurfaceMesh mesh = generate_hemisphere(2);
    ProblemSpec spec = catalog("custom");
    spec.b = [](const Vec3&, double, const Vec3&) { return 1.0; };
    spec.q = [](const Vec3&, double) { return 0.0; };
    spec.f = [](const Vec3&) { return 0.0; };
    spec.g = [](const Vec3&) { return 7.0; };
    const SolveResult res = picard_solve(mesh, spec);
    double err = 0.0;
    for (double v : res.u) err = std::max(err, std::abs(v - 7.0));
    const bool ok = res.report.converged && err <= 1e-9;
    std::ostringstream detail;
    detail << "harmonic extension of g = 7: max deviation " << err;
    report(7, ok, detail.str());
    CHECK(ok);
}

TEST_CASE("criterion 8: the audit flags a mesh that breaks the conditions") {
    const fs::path dir = fresh_dir("sfem_acc_c8");
    RunConfig cfg;
    cfg.surface.surface = "semitorus";
    cfg.surface.n_major = 25; // skinny strips: obtuse angles guaranteed
    cfg.surface.levels = 0;
    cfg.problem.problem = "p-laplacian";
    cfg.solve.damping = 0.5;
    cfg.audit_mode = AngleMode::nonobtuse;
    cfg.out_dir = dir.string();

    const int code = cmd_audit(cfg);
    bool has_sign_violation = false;
    std::string verdict = "(missing audit.json)";
    const fs::path audit_path = dir / "audit.json";
    if (fs::exists(audit_path)) {
        const nlohmann::json j = nlohmann::json::parse(slurp(audit_path));
        has_sign_violation = j["sign_pattern"]["violations"].size() > 0;
        verdict = std::to_string(j["sign_pattern"]["violations"].size()) + " sign violations";
    }
    const bool ok = code == kExitAuditFail && has_sign_violation;
    report(8, ok, "negative control exits with code " + std::to_string(code) + ", " + verdict);
    fs::remove_all(dir);
    CHECK(ok);
}

TEST_CASE("criterion 9: demo runs are bit-for-bit reproducible") {
    const fs::path dir1 = fresh_dir("sfem_acc_c9a");
    const fs::path dir2 = fresh_dir("sfem_acc_c9b");
    RunConfig cfg;
    cfg.deterministic = true;
    int code1, code2;
    {
        RunConfig c = cfg;
        c.out_dir = dir1.string();
        code1 = cmd_demo("radiative-cooling", 2, c);
    }
    {
        RunConfig c = cfg;
        c.out_dir = dir2.string();
        code2 = cmd_demo("radiative-cooling", 2, c);
    }
    const bool same_solution = slurp(dir1 / "solution.csv") == slurp(dir2 / "solution.csv");
    const bool same_audit = slurp(dir1 / "audit.json") == slurp(dir2 / "audit.json");
    const bool nonempty = !slurp(dir1 / "solution.csv").empty();
    const bool ok = code1 == kExitOk && code2 == kExitOk && same_solution && same_audit && nonempty;
    std::ostringstream detail;
    detail << "exit codes " << code1 << "/" << code2 << ", solution.csv "
           << (same_solution ? "identical" : "DIFFER") << ", audit.json "
           << (same_audit ? "identical" : "DIFFER");
    report(9, ok, detail.str());
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    CHECK(ok);
}

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "sfem/assembly.hpp"
#include "sfem/element.hpp"
#include "sfem/linear_solvers.hpp"
#include "sfem/sparse.hpp"
#include "sfem/surface_mesh.hpp"

namespace sfem {

enum class AngleMode { acute, nonobtuse };

struct AngleAudit {
    AngleMode mode = AngleMode::acute;
    double worst_pair_product = -std::numeric_limits<double>::infinity();
    double sigma0_estimate = 0.0;
    // (element, local i, local j) of each offending basis pair
    std::vector<std::tuple<int, int, int>> violations;
    bool pass = false;
};

/// Check the gradient pair-product condition element by element: acute mode
/// demands strict negativity for every pair touching an interior node,
/// nonobtuse mode allows zero. sigma0_estimate is the largest margin the mesh
/// supports in grad(chi_i).grad(chi_j) <= -sigma0 / h^2.
inline AngleAudit check_angles(const SurfaceMesh& mesh, AngleMode mode) {
    AngleAudit audit;
    audit.mode = mode;

    // per adjacent pair, the worst (largest) element-wise product
    std::map<std::pair<int, int>, double> pair_max;
    double max_abs = 0.0;
    std::vector<std::array<std::array<double, 3>, 3>> products(mesh.n_triangles());
    for (int e = 0; e < mesh.n_triangles(); ++e) {
        const auto& t = mesh.triangles[e];
        const ElementGeometry geom = element_geometry(
            {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]});
        products[e] = gradient_pair_products(geom);
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                if (mesh.is_boundary(t[i]) && mesh.is_boundary(t[j])) continue;
                const double pp = products[e][i][j];
                max_abs = std::max(max_abs, std::abs(pp));
                const auto key = detail::edge_key(t[i], t[j]);
                auto it = pair_max.find(key);
                if (it == pair_max.end())
                    pair_max.emplace(key, pp);
                else
                    it->second = std::max(it->second, pp);
            }
        }
    }

    const double tol_pos = 1e-12 * max_abs;
    for (int e = 0; e < mesh.n_triangles(); ++e) {
        const auto& t = mesh.triangles[e];
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                if (mesh.is_boundary(t[i]) && mesh.is_boundary(t[j])) continue;
                const double pp = products[e][i][j];
                // acute demands a clearly negative product; nonobtuse merely
                // forbids clearly positive ones
                const bool bad = mode == AngleMode::acute ? pp >= -tol_pos : pp > tol_pos;
                if (bad) audit.violations.emplace_back(e, i, j);
            }
        }
    }

    double sigma0 = std::numeric_limits<double>::infinity();
    for (const auto& [key, pp] : pair_max) {
        audit.worst_pair_product = std::max(audit.worst_pair_product, pp);
        sigma0 = std::min(sigma0, -pp);
    }
    audit.sigma0_estimate = pair_max.empty() ? 0.0 : mesh.h * mesh.h * sigma0;
    audit.pass = audit.violations.empty();
    return audit;
}

struct MatrixAudit {
    // (i, j, a_ij) with i interior, i != j, a_ij above tolerance
    std::vector<std::tuple<int, int, double>> sign_violations;
    double row_sum_min = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, double>> row_sum_violations;
    bool spd_verdict = false;

    bool pass() const {
        return sign_violations.empty() && row_sum_violations.empty() && spd_verdict;
    }
};

/// Conditions (i)-(iii) of the matrix maximum principle: nonpositive
/// off-diagonals on interior rows, nonnegative full row sums, and a positive
/// definite interior block (certified by sparse Cholesky).
inline MatrixAudit check_matrix_conditions(const SparseMatrix& A_bar, int n_interior) {
    MatrixAudit audit;
    const double max_abs = A_bar.max_abs();
    const double tol_sign = 1e-12 * max_abs;
    const double tol_row = 1e-10 * max_abs;

    for (int i = 0; i < n_interior; ++i) {
        double row_sum = 0.0;
        for (int k = A_bar.row_ptr[i]; k < A_bar.row_ptr[i + 1]; ++k) {
            const int j = A_bar.col_idx[k];
            const double v = A_bar.values[k];
            row_sum += v;
            if (j != i && v > tol_sign) audit.sign_violations.emplace_back(i, j, v);
        }
        audit.row_sum_min = std::min(audit.row_sum_min, row_sum);
        if (row_sum < -tol_row) audit.row_sum_violations.emplace_back(i, row_sum);
    }
    if (n_interior == 0) audit.row_sum_min = 0.0;

    const SparseMatrix A = A_bar.block(0, n_interior, 0, n_interior);
    audit.spd_verdict = cholesky_solve(A, std::vector<double>(n_interior, 0.0)).positive_definite;
    return audit;
}

enum class DmpVariant { weak_max, strict_max, weak_min, strict_min, nonneg, nonpos };

struct DmpVerdict {
    bool pass = false;
    int witness_node = -1; // extremal node on failure
    double extremum = 0.0;
    double bound = 0.0;
};

/// Nodal maximum/minimum principle checks against the boundary data, with a
/// slack of 1e-10 (1 + max|g|). For P1 functions the nodal extrema are the
/// surface-wide extrema, so these checks certify the whole surface.
inline DmpVerdict check_dmp(const NodalField& u, const std::vector<double>& g_values,
                            DmpVariant variant) {
    if (u.empty() || g_values.empty()) throw ParameterError("check_dmp: empty input");

    double g_max = g_values[0], g_min = g_values[0], g_abs = 0.0;
    for (double g : g_values) {
        g_max = std::max(g_max, g);
        g_min = std::min(g_min, g);
        g_abs = std::max(g_abs, std::abs(g));
    }
    const double slack = 1e-10 * (1.0 + g_abs);

    int arg_max = 0, arg_min = 0;
    for (int i = 1; i < static_cast<int>(u.size()); ++i) {
        if (u[i] > u[arg_max]) arg_max = i;
        if (u[i] < u[arg_min]) arg_min = i;
    }
    const double u_max = u[arg_max];
    const double u_min = u[arg_min];

    DmpVerdict v;
    switch (variant) {
    case DmpVariant::weak_max:
        v.bound = std::max(0.0, g_max);
        v.pass = u_max <= v.bound + slack;
        v.extremum = u_max;
        v.witness_node = v.pass ? -1 : arg_max;
        break;
    case DmpVariant::strict_max:
        v.bound = g_max;
        v.pass = std::abs(u_max - g_max) <= slack;
        v.extremum = u_max;
        v.witness_node = v.pass ? -1 : arg_max;
        break;
    case DmpVariant::weak_min:
        v.bound = std::min(0.0, g_min);
        v.pass = u_min >= v.bound - slack;
        v.extremum = u_min;
        v.witness_node = v.pass ? -1 : arg_min;
        break;
    case DmpVariant::strict_min:
        v.bound = g_min;
        v.pass = std::abs(u_min - g_min) <= slack;
        v.extremum = u_min;
        v.witness_node = v.pass ? -1 : arg_min;
        break;
    case DmpVariant::nonneg:
        v.bound = 0.0;
        v.pass = u_min >= -slack;
        v.extremum = u_min;
        v.witness_node = v.pass ? -1 : arg_min;
        break;
    case DmpVariant::nonpos:
        v.bound = 0.0;
        v.pass = u_max <= slack;
        v.extremum = u_max;
        v.witness_node = v.pass ? -1 : arg_max;
        break;
    }
    return v;
}

/// Full audit of one solved problem: angle conditions, matrix conditions and
/// the nodal maximum-principle verdict.
struct AuditReport {
    AngleAudit angles;
    MatrixAudit matrix;
    std::string dmp_verdict; // weak-pass | strict-pass | fail
    int dmp_witness = -1;

    bool pass() const { return angles.pass && matrix.pass() && dmp_verdict != "fail"; }
};

/// Audit a converged solution: re-assemble at the solution, run the angle and
/// matrix checks, and classify the nodal verdict as strict-pass (range
/// coincidence), weak-pass, or fail.
inline AuditReport audit_solution(const SurfaceMesh& mesh, const ProblemSpec& problem,
                                  const NodalField& u, AngleMode mode) {
    AuditReport report;
    report.angles = check_angles(mesh, mode);
    const AssembledSystem sys = assemble(mesh, problem, u);
    report.matrix = check_matrix_conditions(sys.A_bar, mesh.n_interior);

    std::vector<double> g_values(u.begin() + mesh.n_interior, u.end());
    const DmpVerdict weak_max = check_dmp(u, g_values, DmpVariant::weak_max);
    const DmpVerdict weak_min = check_dmp(u, g_values, DmpVariant::weak_min);
    const DmpVerdict strict_max = check_dmp(u, g_values, DmpVariant::strict_max);
    const DmpVerdict strict_min = check_dmp(u, g_values, DmpVariant::strict_min);
    if (!weak_max.pass || !weak_min.pass) {
        report.dmp_verdict = "fail";
        report.dmp_witness = !weak_max.pass ? weak_max.witness_node : weak_min.witness_node;
    } else if (strict_max.pass && strict_min.pass) {
        report.dmp_verdict = "strict-pass";
    } else {
        report.dmp_verdict = "weak-pass";
    }
    return report;
}

/// One randomly generated partitioned system [[A At];[0 I]] together with
/// interior data d <= 0 and boundary values c_tilde.
struct DwmpInstance {
    Eigen::MatrixXd A;       // n x n
    Eigen::MatrixXd A_tilde; // n x m
    Eigen::VectorXd d;       // n, nonpositive
    Eigen::VectorXd c_tilde; // m
};

/// Dense brute-force check of the weak matrix maximum principle on one
/// instance: solve A c = d - At c_tilde and compare the interior maximum
/// against the boundary maximum.
inline bool dwmp_instance_holds(const DwmpInstance& inst, bool equality_row_sums) {
    const Eigen::VectorXd c = inst.A.partialPivLu().solve(inst.d - inst.A_tilde * inst.c_tilde);
    const double c_max = std::max(c.size() ? c.maxCoeff() : -1e300, inst.c_tilde.maxCoeff());
    const double boundary_max = inst.c_tilde.maxCoeff();
    const double scale = 1.0 + std::max(std::abs(c_max), std::abs(boundary_max));
    const double slack = 1e-9 * scale;
    if (equality_row_sums) return c_max <= boundary_max + slack;
    return c_max <= std::max(0.0, boundary_max) + slack;
}

struct OracleStats {
    int trials = 0;
    int violations = 0;
    int rejected = 0; // candidates discarded by the SPD rejection step
};

/// Generates random matrices of the partitioned shape satisfying the three
/// maximum-principle conditions (nonpositive off-diagonals, controlled row
/// sums, positive definite interior block checked by dense eigen-decomposition
/// with rejection sampling) and verifies the weak maximum principle by dense
/// solves. With equality_row_sums, the strict variant is asserted.
inline OracleStats algebraic_dwmp_oracle(int trials, int size_bound, std::uint64_t seed,
                                         bool equality_row_sums) {
    if (size_bound < 1 || size_bound > 12)
        throw ParameterError("algebraic_dwmp_oracle: size_bound must be in [1, 12]");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size_dist(1, size_bound);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> boundary_val(-5.0, 5.0);

    OracleStats stats;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = size_dist(rng);
        const int m = size_dist(rng);

        DwmpInstance inst;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 1000)
                throw SolverError("algebraic_dwmp_oracle: rejection sampling stalled");
            inst.A = Eigen::MatrixXd::Zero(n, n);
            inst.A_tilde = Eigen::MatrixXd::Zero(n, m);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j)
                    if (j != i && unit(rng) < 0.5) inst.A(i, j) = -unit(rng);
                for (int j = 0; j < m; ++j)
                    if (unit(rng) < 0.5) inst.A_tilde(i, j) = -unit(rng);
                // at least one boundary coupling keeps the row strictly dominant
                inst.A_tilde(i, static_cast<int>(unit(rng) * m) % m) = -(0.1 + unit(rng));
                const double target = equality_row_sums ? 0.0 : unit(rng);
                inst.A(i, i) =
                    target - (inst.A.row(i).sum() - inst.A(i, i)) - inst.A_tilde.row(i).sum();
            }
            const Eigen::MatrixXd sym = 0.5 * (inst.A + inst.A.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
            if (eig.eigenvalues().minCoeff() > 1e-12) break;
            stats.rejected++;
        }

        inst.d = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) inst.d(i) = -unit(rng);
        inst.c_tilde = Eigen::VectorXd::Zero(m);
        for (int j = 0; j < m; ++j) inst.c_tilde(j) = boundary_val(rng);

        stats.trials++;
        if (!dwmp_instance_holds(inst, equality_row_sums)) stats.violations++;
    }
    return stats;
}

} // namespace sfem

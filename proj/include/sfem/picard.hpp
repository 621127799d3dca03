#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sfem/assembly.hpp"
#include "sfem/linear_solvers.hpp"
#include "sfem/problem.hpp"
#include "sfem/surface_mesh.hpp"

namespace sfem {

enum class Subsolver { cg, cholesky };

struct SolveOptions {
    int max_picard = 200;
    double picard_tol = 1e-10;  // sup norm of the nodal increment
    double linear_tol = 1e-12;  // relative residual of the inner solve
    double damping = 1.0;       // in (0, 1]
    Subsolver subsolver = Subsolver::cg;
    CoeffEval coeff_eval = CoeffEval::mesh_point;
};

struct SolveReport {
    int iterations = 0;
    double final_increment = 0.0;
    std::vector<int> linear_iters_per_step;
    bool converged = false;
};

struct SolveResult {
    NodalField u;
    SolveReport report;
};

/// Frozen-coefficient (Picard) iteration for the nonlinear system: freeze b
/// and r at the current iterate, solve the resulting SPD interior system with
/// Dirichlet elimination, apply a damped update. Boundary entries are pinned
/// to the Dirichlet data throughout.
inline SolveResult picard_solve(const SurfaceMesh& mesh, const ProblemSpec& problem,
                                const SolveOptions& opts = {}) {
    if (!(opts.picard_tol > 0.0) || !(opts.linear_tol > 0.0))
        throw ParameterError("picard_solve: tolerances must be positive");
    if (!(opts.damping > 0.0 && opts.damping <= 1.0))
        throw ParameterError("picard_solve: damping must lie in (0, 1]");

    const int n_total = mesh.n_vertices();
    const int n_int = mesh.n_interior;

    NodalField u(n_total, 0.0);
    for (int i = n_int; i < n_total; ++i) u[i] = problem.g(mesh.vertices[i]);

    SolveReport report;
    for (int it = 1; it <= opts.max_picard; ++it) {
        const AssembledSystem sys = assemble(mesh, problem, u, opts.coeff_eval);
        const SparseMatrix A = sys.A_bar.block(0, n_int, 0, n_int);
        const SparseMatrix A_tilde = sys.A_bar.block(0, n_int, n_int, n_total);

        std::vector<double> g_tilde(u.begin() + n_int, u.end());
        std::vector<double> rhs(sys.d.begin(), sys.d.begin() + n_int);
        const std::vector<double> coupling = A_tilde.apply(g_tilde);
        for (int i = 0; i < n_int; ++i) rhs[i] -= coupling[i];

        std::vector<double> u_new;
        try {
            if (opts.subsolver == Subsolver::cg) {
                CgResult cg = cg_solve(A, rhs, opts.linear_tol);
                report.linear_iters_per_step.push_back(cg.iterations);
                u_new = std::move(cg.x);
            } else {
                CholeskyResult ch = cholesky_solve(A, rhs);
                if (!ch.positive_definite)
                    throw NotSpdError("interior matrix is not positive definite");
                report.linear_iters_per_step.push_back(1);
                u_new = std::move(ch.x);
            }
        } catch (const SolverError& err) {
            throw SolverError("picard_solve: linear subsolver failed at iteration " +
                              std::to_string(it) + " (n_interior=" + std::to_string(n_int) +
                              "): " + err.what());
        }

        double inc = 0.0;
        for (int i = 0; i < n_int; ++i) {
            const double step = opts.damping * (u_new[i] - u[i]);
            u[i] += step;
            inc = std::max(inc, std::abs(step));
        }
        report.iterations = it;
        report.final_increment = inc;
        if (inc <= opts.picard_tol) {
            report.converged = true;
            break;
        }
    }
    return {std::move(u), std::move(report)};
}

} // namespace sfem

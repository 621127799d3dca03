#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sfem/commands.hpp"

namespace {

void add_common_options(CLI::App& cmd, sfem::RunConfig& cfg) {
    cmd.add_option("--surface", cfg.surface.surface, "hemisphere | semitorus")
        ->check(CLI::IsMember({"hemisphere", "semitorus"}));
    cmd.add_option("--levels", cfg.surface.levels, "refinement levels");
    cmd.add_option("--R", cfg.surface.R, "torus major radius");
    cmd.add_option("--r", cfg.surface.r, "torus minor radius");
    cmd.add_option("--n-major", cfg.surface.n_major, "torus rings along the major angle");
    cmd.add_option("--n-minor", cfg.surface.n_minor, "vertices per minor circle");
    cmd.add_option("--problem", cfg.problem.problem,
                   "radiative-cooling | p-laplacian | gas-dynamics");
    cmd.add_option("--sigma", cfg.problem.sigma, "radiation constant");
    cmd.add_option("--p", cfg.problem.p, "p-Laplacian exponent");
    cmd.add_option("--eps-reg", cfg.problem.eps_reg, "diffusion regularization");
    cmd.add_option("--damping", cfg.solve.damping, "Picard damping in (0,1]");
    cmd.add_option("--picard-tol", cfg.solve.picard_tol, "Picard sup-norm tolerance");
    cmd.add_option("--max-picard", cfg.solve.max_picard, "Picard iteration cap");
    cmd.add_option("--out-dir", cfg.out_dir, "output directory");
    cmd.add_flag("--deterministic", cfg.deterministic, "bitwise-reproducible run");
    cmd.add_option_function<std::string>(
           "--audit-mode",
           [&cfg](const std::string& mode) {
               cfg.audit_mode =
                   mode == "nonobtuse" ? sfem::AngleMode::nonobtuse : sfem::AngleMode::acute;
           },
           "acute | nonobtuse")
        ->check(CLI::IsMember({"acute", "nonobtuse"}));
    cmd.add_option_function<std::string>(
           "--subsolver",
           [&cfg](const std::string& name) {
               cfg.solve.subsolver =
                   name == "cholesky" ? sfem::Subsolver::cholesky : sfem::Subsolver::cg;
           },
           "cg | cholesky")
        ->check(CLI::IsMember({"cg", "cholesky"}));
    cmd.set_config("--config", "", "key=value config file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface FEM solver and discrete maximum principle auditor"};
    app.require_subcommand(1);

    sfem::RunConfig cfg;
    std::string demo_name;
    int demo_level = 1;
    int sweep_lo = 0, sweep_hi = 3;

    CLI::App* mesh_cmd = app.add_subcommand("mesh", "generate a mesh and its angle data");
    add_common_options(*mesh_cmd, cfg);
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve a problem on a generated mesh");
    add_common_options(*solve_cmd, cfg);
    CLI::App* audit_cmd =
        app.add_subcommand("audit", "solve, then certify the maximum-principle conditions");
    add_common_options(*audit_cmd, cfg);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "audit across a refinement range");
    add_common_options(*sweep_cmd, cfg);
    sweep_cmd->add_option("--min-level", sweep_lo, "first refinement level");
    sweep_cmd->add_option("--max-level", sweep_hi, "last refinement level");
    CLI::App* demo_cmd = app.add_subcommand("demo", "reproduce a published experiment");
    demo_cmd->add_option("name", demo_name, "radiative-cooling | p-laplacian")
        ->required()
        ->check(CLI::IsMember({"radiative-cooling", "p-laplacian"}));
    add_common_options(*demo_cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : sfem::kExitUsage;
    }

    try {
        if (mesh_cmd->parsed()) return sfem::cmd_mesh(cfg);
        if (solve_cmd->parsed()) return sfem::cmd_solve(cfg);
        if (audit_cmd->parsed()) return sfem::cmd_audit(cfg);
        if (sweep_cmd->parsed()) return sfem::cmd_sweep(cfg, sweep_lo, sweep_hi);
        if (demo_cmd->parsed()) {
            demo_level = cfg.surface.levels; // demo reuses --levels as the figure index
            return sfem::cmd_demo(demo_name, demo_level, cfg);
        }
    } catch (const sfem::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sfem::kExitUsage;
    } catch (const sfem::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return sfem::kExitSolverFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sfem::kExitUsage;
    }
    return sfem::kExitUsage;
}

// Command-line front end: run a coupled simulation, check initial-data
// compatibility, or run the numerical oracles.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <vector>

#include "fsi/beam.hpp"
#include "fsi/coupling.hpp"
#include "fsi/diagnostics.hpp"
#include "fsi/oracle.hpp"
#include "fsi/sources.hpp"
#include "fsi/transport.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_override) {
    fsi::SimConfig cfg = fsi::parse_config(config_path);
    if (!out_override.empty()) cfg.output_dir = out_override;
    const auto result = fsi::coupling::run_simulation(cfg);
    std::printf("windows=%d halvings=%d timeseries=%s\n", result.total_windows,
                result.total_halvings, result.timeseries_path.c_str());
    if (result.outcome == fsi::coupling::RunOutcome::WindowUnderflow) {
        std::fprintf(stderr, "error: %s\n", result.detail.c_str());
        return 1;
    }
    std::printf("completed t=%.17g steady_residual=%.3e\n", result.final_state.t,
                fsi::diagnostics::steady_residual(result.final_state, cfg.physics));
    return 0;
}

int cmd_check_compat(const std::string& config_path, double tol) {
    const fsi::SimConfig cfg = fsi::parse_config(config_path);
    const fsi::Grid grid = fsi::make_grid(cfg.nx, cfg.nz, cfg.physics.length);
    const fsi::CoupledState init = fsi::coupling::initial_state(cfg, grid);
    const fsi::ScalarField rho0 = fsi::density_from_sigma(init.sigma, cfg.physics);
    const fsi::VectorField u0 = fsi::velocity_from_w(init.w, init.eta_t);
    const auto rep = fsi::check_compatibility(rho0, u0, init.eta_t, cfg.physics, tol);
    std::printf("b1: residual=%.6e  %s (tol %.1e)\n", rep.residual_b1,
                rep.pass_b1 ? "pass" : "FAIL", tol);
    std::printf("b2: residual=%.6e  %s (tol %.1e)\n", rep.residual_b2,
                rep.pass_b2 ? "pass" : "FAIL", tol);
    return rep.pass() ? 0 : 1;
}

int cmd_oracle_source_terms(const std::string& config_path) {
    const fsi::SimConfig cfg = fsi::parse_config(config_path);
    fsi::oracle::ManufacturedCase mc;
    mc.L = cfg.physics.length;
    std::printf(
        "grid,cart_continuity,cart_momentum_x,cart_momentum_z,fitted_continuity,"
        "fitted_momentum_x,fitted_momentum_z,f2_printed_extra,f3_printed_vs_fp\n");
    for (int n : {16, 32, 64, 128}) {
        const auto rep = fsi::oracle::transform_consistency(mc, n, cfg.physics, 0.3);
        std::printf("%d,%.6e,%.6e,%.6e,%.6e,%.6e,%.6e,%.6e,%.6e\n", n, rep.cart_continuity_disc,
                    rep.cart_momentum_x_disc, rep.cart_momentum_z_disc,
                    rep.fitted_continuity_disc, rep.fitted_momentum_x_disc,
                    rep.fitted_momentum_z_disc, rep.f2_printed_extra, rep.f3_printed_vs_fp);
    }
    return 0;
}

int cmd_oracle_transport(const std::string& config_path) {
    const fsi::SimConfig cfg = fsi::parse_config(config_path);

    // translation test with a time-varying uniform velocity (closed-form exact solution)
    std::printf("# translation convergence\n");
    std::printf("grid,dt,linf_error\n");
    const double c0 = 1.0, om = 3.0;
    for (int lvl = 0; lvl < 3; ++lvl) {
        const int n = 16 << lvl;
        const fsi::Grid grid = fsi::make_grid(n, n, 1.0);
        const double dt = 0.02 / (1 << lvl);
        const int steps = static_cast<int>(std::lround(0.2 / dt));
        std::vector<fsi::VectorField> w(static_cast<size_t>(steps) + 1);
        std::vector<fsi::ScalarField> g1(static_cast<size_t>(steps) + 1);
        for (int m = 0; m <= steps; ++m) {
            w[static_cast<size_t>(m)] = fsi::VectorField(grid);
            g1[static_cast<size_t>(m)] = fsi::ScalarField(grid);
            for (auto& v : w[static_cast<size_t>(m)].c1.values)
                v = c0 * std::cos(om * m * dt);
        }
        fsi::ScalarField sig0(grid);
        for (int k = 0; k <= grid.nz; ++k)
            for (int i = 0; i < grid.nx; ++i)
                sig0(i, k) = std::sin(2.0 * M_PI * grid.x(i));
        const auto sol = fsi::transport::solve_window(sig0, w, g1, grid, dt);
        const double T = steps * dt;
        const double shift = c0 * std::sin(om * T) / om;
        double err = 0.0;
        for (int k = 0; k <= grid.nz; ++k)
            for (int i = 0; i < grid.nx; ++i)
                err = std::max(err, std::abs(sol.back()(i, k) -
                                             std::sin(2.0 * M_PI * (grid.x(i) - shift))));
        std::printf("%d,%.6g,%.6e\n", n, dt, err);
    }

    // upwind cross-check on a steady shear
    std::printf("# upwind comparison (16x16)\n");
    const fsi::Grid grid = fsi::make_grid(16, 16, 1.0);
    const double dt = 0.01;
    const int steps = 20;
    std::vector<fsi::VectorField> w(static_cast<size_t>(steps) + 1);
    std::vector<fsi::ScalarField> g1(static_cast<size_t>(steps) + 1);
    for (int m = 0; m <= steps; ++m) {
        w[static_cast<size_t>(m)] = fsi::VectorField(grid);
        g1[static_cast<size_t>(m)] = fsi::ScalarField(grid);
        for (int k = 0; k <= grid.nz; ++k)
            for (int i = 0; i < grid.nx; ++i)
                w[static_cast<size_t>(m)].c1(i, k) = 0.5 + grid.z(k) * (1.0 - grid.z(k));
    }
    fsi::ScalarField sig0(grid);
    for (int k = 0; k <= grid.nz; ++k)
        for (int i = 0; i < grid.nx; ++i)
            sig0(i, k) = std::sin(2.0 * M_PI * grid.x(i)) * (1.0 + 0.3 * std::cos(M_PI * grid.z(k)));
    const auto sl = fsi::transport::solve_window(sig0, w, g1, grid, dt);
    const auto up = fsi::oracle::upwind_solve_window(sig0, w, g1, grid, dt, 0.4);
    double disc = 0.0;
    for (size_t n = 0; n < sl.back().values.size(); ++n)
        disc = std::max(disc, std::abs(sl.back().values[n] - up.back().values[n]));
    std::printf("linf(semi_lagrangian - upwind) = %.6e\n", disc);
    return 0;
}

int cmd_oracle_beam(const std::string& config_path) {
    const fsi::SimConfig cfg = fsi::parse_config(config_path);
    fsi::PhysParams params = cfg.physics;
    params.alpha = params.beta = params.delta = 1.0;
    params.length = 2.0 * M_PI;
    std::printf("mode,kappa,re_lambda,im_lambda\n");
    for (int j = 1; j <= 4; ++j) {
        const Eigen::Matrix2d A = fsi::beam::mode_matrix(j, params);
        const Eigen::EigenSolver<Eigen::Matrix2d> es(A);
        const auto ev = es.eigenvalues();
        for (int r = 0; r < 2; ++r)
            std::printf("%d,%.6g,%.12g,%.12g\n", j, 2.0 * M_PI * j / params.length,
                        ev[r].real(), ev[r].imag());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fsisim: coupled channel-flow / beam simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    double compat_tol = 1e-6;

    auto* run = app.add_subcommand("run", "advance the coupled system to t_end");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_override, "override the output directory");

    auto* compat = app.add_subcommand("check-compat", "check initial-data compatibility");
    compat->add_option("--config", config_path, "config file")->required();
    compat->add_option("--tol", compat_tol, "residual tolerance");

    auto* oracle = app.add_subcommand("oracle", "numerical cross-checks");
    oracle->require_subcommand(1);
    auto* o_src = oracle->add_subcommand("source-terms", "transformation-consistency table");
    o_src->add_option("--config", config_path, "config file")->required();
    auto* o_tr = oracle->add_subcommand("transport", "translation + upwind comparison");
    o_tr->add_option("--config", config_path, "config file")->required();
    auto* o_beam = oracle->add_subcommand("beam", "dispersion table");
    o_beam->add_option("--config", config_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_override);
        if (compat->parsed()) return cmd_check_compat(config_path, compat_tol);
        if (oracle->parsed()) {
            if (o_src->parsed()) return cmd_oracle_source_terms(config_path);
            if (o_tr->parsed()) return cmd_oracle_transport(config_path);
            if (o_beam->parsed()) return cmd_oracle_beam(config_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

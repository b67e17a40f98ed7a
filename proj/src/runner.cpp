#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fsi/coupling.hpp"
#include "fsi/diagnostics.hpp"
#include "fsi/geometry.hpp"
#include "fsi/snapshot.hpp"
#include "fsi/transport.hpp"

namespace fsi {
namespace coupling {

namespace {

std::string g17(double v) {
    char buf[32];
    snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* kTimeseriesHeader =
    "t,kinetic,internal,beam_kinetic,beam_stretch,beam_bend,viscous_dissipation,"
    "beam_dissipation,pext_work,budget_residual,steady_residual,min_one_plus_eta,"
    "min_density,max_density,picard_iters";

std::string timeseries_row(double t, const diagnostics::EnergyReport& e, double steady,
                           double min_h, double min_rho, double max_rho, int iters) {
    std::string row = g17(t);
    for (double v : {e.kinetic, e.internal, e.beam_kinetic, e.beam_stretch, e.beam_bend,
                     e.viscous_dissipation, e.beam_dissipation, e.pext_work, e.budget_residual,
                     steady, min_h, min_rho, max_rho})
        row += "," + g17(v);
    row += "," + std::to_string(iters);
    return row;
}

}  // namespace

RunResult run_simulation(const SimConfig& config) {
    config.validate();
    const Grid grid = make_grid(config.nx, config.nz, config.physics.length);
    const PhysParams& params = config.physics;

    CoupledState init = initial_state(config, grid);
    const ScalarField rho0 = density_from_sigma(init.sigma, params);

    // density corridor fixed from the initial extrema
    DensityBounds bounds;
    bounds.m = rho0.values[0];
    bounds.M = rho0.values[0];
    for (double v : rho0.values) {
        bounds.m = std::min(bounds.m, v);
        bounds.M = std::max(bounds.M, v);
    }

    // u0 = w0 + z*eta_t(0)*e2 reconstructs the initial velocity
    const VectorField u0 = velocity_from_w(init.w, init.eta_t);
    if (!config.allow_incompatible) {
        const CompatReport compat =
            check_compatibility(rho0, u0, init.eta_t, params, config.compat_tol);
        if (!compat.pass())
            throw ValidationError("initial_data",
                                  "compatibility check failed (b1 residual " +
                                      std::to_string(compat.residual_b1) + ", b2 residual " +
                                      std::to_string(compat.residual_b2) +
                                      "); set allow_incompatible to run anyway");
    }

    const InitialValues iv = initial_values(rho0, u0, init.eta_t, params);

    CouplingConfig ccfg;
    ccfg.tol_pic = config.tol_pic;
    ccfg.max_iter = config.max_iter;
    ccfg.lin_tol = config.lin_tol;
    ccfg.delta0 = config.delta0;

    const int base_steps =
        config.coupling_mode == CouplingMode::Step ? 1 : config.window_steps;
    const int min_steps = std::min(config.min_window_steps, base_steps);
    const long total_steps = std::lround(config.t_end / config.dt);
    if (total_steps < 1) throw ValidationError("t_end", "shorter than one time step");

    std::filesystem::create_directories(config.output_dir);
    const std::string ts_path = config.output_dir + "/timeseries.csv";
    const std::string ev_path = config.output_dir + "/events.log";
    std::ofstream ts(ts_path, std::ios::trunc);
    std::ofstream ev(ev_path, std::ios::trunc);
    if (!ts || !ev) throw Error("cannot open output files under " + config.output_dir);
    ts << kTimeseriesHeader << "\n";

    RunResult result;
    result.timeseries_path = ts_path;

    WindowInit winit;
    winit.state = init;
    winit.eta_tt0 = iv.eta_tt_0;
    winit.w_t0 = iv.w_t_0;

    if (config.snapshot_every > 0)
        write_snapshot(init, config.output_dir + "/snapshot_000000.txt");

    long step_count = 0;
    int window_steps = base_steps;
    int window_index = 0;

    while (step_count < total_steps) {
        const int steps =
            static_cast<int>(std::min<long>(window_steps, total_steps - step_count));
        auto [traj, report] = picard_solve(winit, steps, config.dt, params, bounds, ccfg);

        auto log_event = [&](const std::string& line) {
            ev << line << "\n";
            result.events.push_back(line);
        };

        if (report.outcome != PicardOutcome::Converged) {
            log_event("window=" + std::to_string(window_index) + " t0=" + g17(winit.state.t) +
                      " steps=" + std::to_string(steps) + " outcome=" +
                      to_string(report.outcome) + " iters=" + std::to_string(report.iterations) +
                      " detail=\"" + report.detail + "\"");
            if (window_steps > min_steps) {
                window_steps = std::max(min_steps, window_steps / 2);
                ++result.total_halvings;
                log_event("halve window=" + std::to_string(window_index) +
                          " new_steps=" + std::to_string(window_steps));
                continue;  // retry the same window shorter
            }
            result.outcome = RunOutcome::WindowUnderflow;
            result.detail = "window underflow at t=" + g17(winit.state.t) + " (" +
                            to_string(report.outcome) + ": " + report.detail + ")";
            result.final_state = winit.state;
            log_event("underflow t=" + g17(winit.state.t));
            return result;
        }

        WindowRecord rec;
        rec.window_index = window_index;
        rec.t_start = winit.state.t;
        rec.steps = steps;
        rec.picard = report;
        result.windows.push_back(rec);
        log_event("window=" + std::to_string(window_index) + " t0=" + g17(winit.state.t) +
                  " steps=" + std::to_string(steps) + " outcome=converged iters=" +
                  std::to_string(report.iterations) + " delta=" +
                  g17(report.deltas.empty() ? 0.0 : report.deltas.back()));

        for (int n = 1; n <= steps; ++n) {
            const CoupledState& prev = traj.states[static_cast<size_t>(n - 1)];
            const CoupledState& curr = traj.states[static_cast<size_t>(n)];
            ++step_count;
            if (config.timeseries_every > 0 && step_count % config.timeseries_every == 0) {
                const auto e = diagnostics::energy_budget(prev, curr, config.dt, params,
                                                          config.delta0);
                const auto dens =
                    transport::check_density_bounds(curr.sigma, params, bounds.m, bounds.M);
                double min_h = 1.0 + curr.eta[0];
                for (double v : curr.eta.values) min_h = std::min(min_h, 1.0 + v);
                ts << timeseries_row(curr.t, e, diagnostics::steady_residual(curr, params),
                                     min_h, dens.min_density, dens.max_density,
                                     report.iterations)
                   << "\n";
            }
            if (config.snapshot_every > 0 && step_count % config.snapshot_every == 0) {
                char name[48];
                snprintf(name, sizeof(name), "snapshot_%06ld.txt", step_count);
                write_snapshot(curr, config.output_dir + "/" + name);
            }
        }

        // hand the window tail to the next window
        const size_t last = traj.states.size() - 1;
        winit.state = traj.states[last];
        winit.eta_tt0 = traj.eta_tt[last];
        winit.w_t0 = (1.0 / config.dt) * (traj.states[last].w - traj.states[last - 1].w);
        ++window_index;
        ++result.total_windows;
    }

    result.final_state = winit.state;
    result.outcome = RunOutcome::Completed;
    return result;
}

}  // namespace coupling
}  // namespace fsi

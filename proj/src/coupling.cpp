#include "fsi/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "fsi/beam.hpp"
#include "fsi/calculus.hpp"
#include "fsi/geometry.hpp"
#include "fsi/momentum.hpp"
#include "fsi/snapshot.hpp"
#include "fsi/transport.hpp"

namespace fsi {
namespace coupling {

const char* to_string(PicardOutcome outcome) {
    switch (outcome) {
        case PicardOutcome::Converged: return "converged";
        case PicardOutcome::MaxIterations: return "max_iterations";
        case PicardOutcome::AdmissibilityViolated: return "admissibility_violated";
        case PicardOutcome::DensityBoundsViolated: return "density_bounds_violated";
    }
    return "unknown";
}

Trajectory apply_L(const Trajectory& iterate, const WindowInit& window_init,
                   const PhysParams& params, const DensityBounds& bounds,
                   const CouplingConfig& config) {
    const int nlev = static_cast<int>(iterate.states.size());
    if (nlev < 2) throw Error("apply_L: window needs at least one step");
    if (iterate.eta_tt.size() != iterate.states.size())
        throw ShapeMismatch("apply_L: eta_tt trajectory length mismatch");
    const Grid& grid = iterate.states[0].sigma.grid;
    const double dt = iterate.dt;

    // geometry + corridor checks on the given iterate
    std::vector<BeamGeometry> geos;
    geos.reserve(static_cast<size_t>(nlev));
    for (const CoupledState& s : iterate.states) {
        geos.push_back(build_geometry(s.eta, config.delta0));
        const auto rep = transport::check_density_bounds(s.sigma, params, bounds.m, bounds.M);
        if (!rep.pass)
            throw CoefficientOutOfBounds("iterate density outside corridor: [" +
                                         std::to_string(rep.min_density) + ", " +
                                         std::to_string(rep.max_density) + "]");
    }

    // sources and transport velocity on the given iterate
    std::vector<ScalarField> g1_levels;
    std::vector<VectorField> g2_levels;
    std::vector<BeamField> g3_levels;
    std::vector<VectorField> w_levels;
    std::vector<ScalarField> sigma_levels;
    g1_levels.reserve(static_cast<size_t>(nlev));
    g2_levels.reserve(static_cast<size_t>(nlev));
    g3_levels.reserve(static_cast<size_t>(nlev));
    w_levels.reserve(static_cast<size_t>(nlev));
    sigma_levels.reserve(static_cast<size_t>(nlev));

    for (int n = 0; n < nlev; ++n) {
        const CoupledState& s = iterate.states[static_cast<size_t>(n)];
        VectorField w_t(grid);
        if (n == 0) {
            w_t = window_init.w_t0;
        } else {
            const VectorField& wc = s.w;
            const VectorField& wp = iterate.states[static_cast<size_t>(n - 1)].w;
            w_t = (1.0 / dt) * (wc - wp);
        }
        const SourceSet src =
            compute_sources(s, iterate.eta_tt[static_cast<size_t>(n)], w_t, params,
                            geos[static_cast<size_t>(n)]);
        g1_levels.push_back(src.g1);
        g2_levels.push_back(src.g2);
        g3_levels.push_back(src.g3);
        w_levels.push_back(compute_W_tilde(s, geos[static_cast<size_t>(n)]));
        sigma_levels.push_back(s.sigma);
    }

    // three decoupled linear solves from the inherited data
    const std::vector<ScalarField> sigma_out = transport::solve_window(
        window_init.state.sigma, w_levels, g1_levels, grid, dt, config.monotone_transport);

    const momentum::LameOperator op(grid, params);
    const std::vector<VectorField> w_out = momentum::solve_window(
        window_init.state.w, sigma_levels, g2_levels, dt, op, params, bounds, config.lin_tol);

    const beam::BeamTrajectory beam_out = beam::solve_window(
        window_init.state.eta, window_init.state.eta_t, g3_levels, dt, params);

    Trajectory out;
    out.t0 = iterate.t0;
    out.dt = dt;
    out.states.resize(static_cast<size_t>(nlev));
    out.eta_tt = beam_out.eta_tt;
    for (int n = 0; n < nlev; ++n) {
        CoupledState& s = out.states[static_cast<size_t>(n)];
        s.t = iterate.t0 + n * dt;
        if (n == 0) {
            // the first level is the inherited data, bitwise
            s = window_init.state;
            s.t = iterate.t0;
        } else {
            s.sigma = sigma_out[static_cast<size_t>(n)];
            s.w = w_out[static_cast<size_t>(n)];
            s.eta = beam_out.eta[static_cast<size_t>(n)];
            s.eta_t = beam_out.eta_t[static_cast<size_t>(n)];
        }
    }

    // the output must itself be admissible
    for (int n = 1; n < nlev; ++n) {
        const CoupledState& s = out.states[static_cast<size_t>(n)];
        build_geometry(s.eta, config.delta0);
        const auto rep = transport::check_density_bounds(s.sigma, params, bounds.m, bounds.M);
        if (!rep.pass)
            throw CoefficientOutOfBounds("output density outside corridor: [" +
                                         std::to_string(rep.min_density) + ", " +
                                         std::to_string(rep.max_density) + "]");
    }
    return out;
}

FieldScales trajectory_scales(const Trajectory& a) {
    FieldScales s;
    double sigma = 0.0, w = 0.0, eta = 0.0, eta_t = 0.0;
    for (const CoupledState& st : a.states) {
        sigma = std::max(sigma, l2_norm(st.sigma));
        w = std::max(w, l2_norm(st.w));
        eta = std::max(eta, l2_norm(st.eta));
        eta_t = std::max(eta_t, l2_norm(st.eta_t));
    }
    s.sigma = sigma > 0.0 ? sigma : 1.0;
    s.w = w > 0.0 ? w : 1.0;
    s.eta = eta > 0.0 ? eta : 1.0;
    s.eta_t = eta_t > 0.0 ? eta_t : 1.0;
    return s;
}

double composite_distance(const Trajectory& a, const Trajectory& b, const FieldScales& scales) {
    if (a.states.size() != b.states.size())
        throw ShapeMismatch("composite_distance: different window lengths");
    double worst = 0.0;
    for (size_t n = 0; n < a.states.size(); ++n) {
        const CoupledState& x = a.states[n];
        const CoupledState& y = b.states[n];
        require_same_grid(x.sigma.grid, y.sigma.grid, "composite_distance");
        const double d = l2_norm(x.sigma - y.sigma) / scales.sigma +
                         l2_norm(x.w - y.w) / scales.w + l2_norm(x.eta - y.eta) / scales.eta +
                         l2_norm(x.eta_t - y.eta_t) / scales.eta_t;
        worst = std::max(worst, d);
    }
    return worst;
}

double composite_delta(const Trajectory& a, const Trajectory& b) {
    return composite_distance(a, b, trajectory_scales(a));
}

namespace {

Trajectory constant_seed(const WindowInit& init, int steps, double dt) {
    Trajectory traj;
    traj.t0 = init.state.t;
    traj.dt = dt;
    traj.states.assign(static_cast<size_t>(steps + 1), init.state);
    for (int n = 0; n <= steps; ++n) traj.states[static_cast<size_t>(n)].t = traj.t0 + n * dt;
    traj.eta_tt.assign(static_cast<size_t>(steps + 1), init.eta_tt0);
    return traj;
}

}  // namespace

std::pair<Trajectory, PicardReport> picard_solve(const WindowInit& window_init, int steps,
                                                 double dt, const PhysParams& params,
                                                 const DensityBounds& bounds,
                                                 const CouplingConfig& config) {
    PicardReport report;
    Trajectory current = constant_seed(window_init, steps, dt);

    for (int it = 1; it <= config.max_iter; ++it) {
        Trajectory next;
        try {
            next = apply_L(current, window_init, params, bounds, config);
        } catch (const AdmissibilityViolated& e) {
            report.outcome = PicardOutcome::AdmissibilityViolated;
            report.detail = e.what();
            return {std::move(current), std::move(report)};
        } catch (const CoefficientOutOfBounds& e) {
            report.outcome = PicardOutcome::DensityBoundsViolated;
            report.detail = e.what();
            return {std::move(current), std::move(report)};
        }
        const double delta = composite_delta(next, current);
        report.deltas.push_back(delta);
        report.iterations = it;
        current = std::move(next);
        if (delta < config.tol_pic) {
            report.outcome = PicardOutcome::Converged;
            return {std::move(current), std::move(report)};
        }
    }
    report.outcome = PicardOutcome::MaxIterations;
    return {std::move(current), std::move(report)};
}

CoupledState initial_state(const SimConfig& config, const Grid& grid) {
    CoupledState s;
    s.t = 0.0;
    s.sigma = ScalarField(grid);
    s.w = VectorField(grid);
    s.eta = BeamField(grid);
    s.eta_t = BeamField(grid);

    switch (config.preset) {
        case InitialPreset::Steady:
            break;
        case InitialPreset::DensityBump: {
            // rho0 = rho_bar*(1 + amplitude*sin(2*pi*mode*x/L)); u0 = 0; eta_t(0) = 0
            for (int k = 0; k <= grid.nz; ++k)
                for (int i = 0; i < grid.nx; ++i)
                    s.sigma(i, k) = config.physics.rho_bar * config.amplitude *
                                    std::sin(2.0 * M_PI * config.mode * grid.x(i) / grid.length);
            break;
        }
        case InitialPreset::BeamKick: {
            // eta_t(0) = amplitude*sin(2*pi*mode*x/L); u0 = (0, z*eta_t(0)) so the
            // interface and wall velocities match; then w0 = u0 - z*eta1*e2 = 0
            for (int i = 0; i < grid.nx; ++i)
                s.eta_t[i] = config.amplitude *
                             std::sin(2.0 * M_PI * config.mode * grid.x(i) / grid.length);
            break;
        }
        case InitialPreset::FromSnapshot: {
            CoupledState loaded = read_snapshot(config.snapshot_path, &grid);
            loaded.t = 0.0;
            return loaded;
        }
    }
    return s;
}

}  // namespace coupling
}  // namespace fsi

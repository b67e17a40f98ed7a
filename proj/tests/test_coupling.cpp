#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fsi/calculus.hpp"
#include "fsi/coupling.hpp"
#include "fsi/diagnostics.hpp"
#include "fsi/snapshot.hpp"

using namespace fsi;
using namespace fsi::coupling;

namespace {

PhysParams small_params() {
    PhysParams p;
    p.mu = 0.1;
    p.mu_prime = 0.05;
    p.rho_bar = 1.0;
    p.length = 1.0;
    return p;
}

WindowInit steady_init(const Grid& g) {
    WindowInit wi;
    wi.state.sigma = ScalarField(g);
    wi.state.w = VectorField(g);
    wi.state.eta = BeamField(g);
    wi.state.eta_t = BeamField(g);
    wi.state.t = 0.0;
    wi.eta_tt0 = BeamField(g);
    wi.w_t0 = VectorField(g);
    return wi;
}

Trajectory constant_traj(const WindowInit& wi, int steps, double dt) {
    Trajectory traj;
    traj.t0 = wi.state.t;
    traj.dt = dt;
    traj.states.assign(static_cast<size_t>(steps) + 1, wi.state);
    traj.eta_tt.assign(static_cast<size_t>(steps) + 1, wi.eta_tt0);
    for (int n = 0; n <= steps; ++n) traj.states[static_cast<size_t>(n)].t = wi.state.t + n * dt;
    return traj;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("the steady state is an exact fixed point of the solve map") {
    const Grid g = make_grid(16, 8, 1.0);
    const PhysParams p = small_params();
    const DensityBounds bounds{p.rho_bar, p.rho_bar};
    const CouplingConfig cfg;

    const WindowInit wi = steady_init(g);
    const Trajectory seed = constant_traj(wi, 10, 1e-3);
    const Trajectory out = apply_L(seed, wi, p, bounds, cfg);
    CHECK(composite_delta(out, seed) < 1e-12);
    for (const auto& s : out.states) {
        CHECK(max_abs(s.sigma) == 0.0);
        CHECK(max_abs(s.w) == 0.0);
        CHECK(max_abs(s.eta) == 0.0);
        CHECK(max_abs(s.eta_t) == 0.0);
    }
}

TEST_CASE("decoupling: with a quiescent velocity iterate the density is pure source accumulation") {
    const Grid g = make_grid(16, 8, 1.0);
    const PhysParams p = small_params();
    const DensityBounds bounds{p.rho_bar, p.rho_bar};
    const CouplingConfig cfg;
    const int steps = 8;
    const double dt = 1e-3;

    WindowInit wi = steady_init(g);
    Trajectory iter = constant_traj(wi, steps, dt);
    // nonzero beam velocity in the iterate feeds g1 = -(sigma+rho_bar)*eta_t
    BeamField eta_t(g);
    for (int i = 0; i < g.nx; ++i) eta_t[i] = 1e-3 * std::sin(2.0 * M_PI * g.x(i));
    for (auto& s : iter.states) s.eta_t = eta_t;

    const Trajectory out = apply_L(iter, wi, p, bounds, cfg);

    // transport velocity is zero (w = 0), so sigma(t_n) = t_n * g1 at each node
    for (int n = 0; n <= steps; ++n) {
        for (int k = 0; k <= g.nz; ++k)
            for (int i = 0; i < g.nx; ++i) {
                const double g1 = -p.rho_bar * eta_t[i];
                CHECK(out.states[static_cast<size_t>(n)].sigma(i, k) ==
                      doctest::Approx(n * dt * g1).epsilon(1e-12));
            }
    }
}

TEST_CASE("empirical contraction near the steady state") {
    const Grid g = make_grid(16, 8, 1.0);
    const PhysParams p = small_params();
    const DensityBounds bounds{p.rho_bar, p.rho_bar};
    const CouplingConfig cfg;
    const int steps = 10;
    const double dt = 1e-3;
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    const WindowInit wi = steady_init(g);
    auto perturbed = [&](double amp) {
        Trajectory t = constant_traj(wi, steps, dt);
        for (auto& s : t.states) {
            for (auto& v : s.sigma.values) v = amp * dist(rng);
            for (int k = 1; k < g.nz; ++k)
                for (int i = 0; i < g.nx; ++i) {
                    s.w.c1(i, k) = amp * dist(rng);
                    s.w.c2(i, k) = amp * dist(rng);
                }
            for (int i = 0; i < g.nx; ++i) {
                s.eta[i] = 0.1 * amp * dist(rng);
                s.eta_t[i] = amp * dist(rng);
            }
        }
        return t;
    };

    FieldScales unit;  // absolute distances
    for (int rep = 0; rep < 3; ++rep) {
        const Trajectory X = perturbed(1e-3);
        const Trajectory Y = perturbed(1e-3);
        const double din = composite_distance(X, Y, unit);
        const double dout = composite_distance(apply_L(X, wi, p, bounds, cfg),
                                               apply_L(Y, wi, p, bounds, cfg), unit);
        CHECK(dout < din);
    }
}

TEST_CASE("composite_delta") {
    const Grid g = make_grid(8, 4, 2.0);
    WindowInit wi = steady_init(g);
    const double c = 0.4;
    for (auto& v : wi.state.sigma.values) v = c;
    const Trajectory a = constant_traj(wi, 3, 0.1);

    CHECK(composite_delta(a, a) == 0.0);

    Trajectory b = a;
    const double eps = 1e-3;
    for (auto& s : b.states)
        for (auto& v : s.sigma.values) v += eps;
    // ||eps||_2 / ||c||_2 = eps/c
    CHECK(composite_delta(a, b) == doctest::Approx(eps / c).epsilon(1e-12));

    Trajectory short_traj = a;
    short_traj.states.pop_back();
    CHECK_THROWS_AS(composite_delta(a, short_traj), ShapeMismatch);
}

TEST_CASE("composite_distance is a metric for fixed scales") {
    const Grid g = make_grid(8, 4, 1.0);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto random_traj = [&]() {
        WindowInit wi = steady_init(g);
        Trajectory t = constant_traj(wi, 4, 0.1);
        for (auto& s : t.states) {
            for (auto& v : s.sigma.values) v = dist(rng);
            for (auto& v : s.w.c1.values) v = dist(rng);
            for (auto& v : s.w.c2.values) v = dist(rng);
            for (auto& v : s.eta.values) v = dist(rng);
            for (auto& v : s.eta_t.values) v = dist(rng);
        }
        return t;
    };
    FieldScales scales;
    scales.sigma = 0.7;
    scales.w = 1.3;
    scales.eta = 0.2;
    scales.eta_t = 2.1;
    for (int rep = 0; rep < 10; ++rep) {
        const Trajectory a = random_traj(), b = random_traj(), c = random_traj();
        const double ab = composite_distance(a, b, scales);
        const double bc = composite_distance(b, c, scales);
        const double ac = composite_distance(a, c, scales);
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(composite_distance(b, a, scales) == doctest::Approx(ab).epsilon(1e-13));
    }
}

TEST_CASE("decoupling: a constant density perturbation in the iterate leaves sigma untouched") {
    const Grid g = make_grid(16, 8, 1.0);
    const PhysParams p = small_params();
    const DensityBounds bounds{p.rho_bar, p.rho_bar};
    const CouplingConfig cfg;

    WindowInit wi = steady_init(g);
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i < g.nx; ++i)
            wi.state.sigma(i, k) = 0.05 * std::sin(2.0 * M_PI * g.x(i));
    Trajectory iter = constant_traj(wi, 6, 1e-3);

    // w = eta = eta_t = 0 in the iterate: the transport velocity and g1 both
    // vanish, so the output sigma is the inherited field at every level
    const Trajectory out = apply_L(iter, wi, p, bounds, cfg);
    for (const auto& s : out.states)
        for (size_t n = 0; n < s.sigma.values.size(); ++n)
            CHECK(s.sigma.values[n] == wi.state.sigma.values[n]);
}

TEST_CASE("converged windows re-verify as fixed points under one more application") {
    const Grid g = make_grid(16, 8, 1.0);
    const PhysParams p = small_params();
    const DensityBounds bounds{p.rho_bar, p.rho_bar};
    CouplingConfig cfg;
    cfg.tol_pic = 1e-9;

    WindowInit wi = steady_init(g);
    for (int i = 0; i < g.nx; ++i)
        wi.state.eta_t[i] = 1e-4 * std::sin(2.0 * M_PI * g.x(i));
    const auto [traj, report] = picard_solve(wi, 8, 1e-3, p, bounds, cfg);
    REQUIRE(report.outcome == PicardOutcome::Converged);
    CHECK(static_cast<int>(report.deltas.size()) == report.iterations);

    const Trajectory again = apply_L(traj, wi, p, bounds, cfg);
    CHECK(composite_delta(traj, again) < cfg.tol_pic);
}

TEST_CASE("small kicks stay small over the run") {
    SimConfig cfg;
    cfg.nx = 16;
    cfg.nz = 8;
    cfg.physics = small_params();
    cfg.preset = InitialPreset::BeamKick;
    cfg.amplitude = 1e-3;
    cfg.mode = 1;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.window_steps = 10;
    cfg.min_window_steps = 2;
    cfg.allow_incompatible = true;
    cfg.snapshot_every = 10;
    cfg.output_dir = (std::filesystem::temp_directory_path() / "fsi_test_small").string();
    const RunResult r = run_simulation(cfg);
    REQUIRE(r.outcome == RunOutcome::Completed);
    CHECK(r.total_halvings == 0);

    // displacement bound: max|eta| <= 10 * max|eta_t(0)| * t_end
    const double bound = 10.0 * cfg.amplitude * cfg.t_end;
    CHECK(max_abs(r.final_state.eta) <= bound);
    for (int step = 10; step <= 50; step += 10) {
        char name[32];
        snprintf(name, sizeof(name), "snapshot_%06d.txt", step);
        const CoupledState s = read_snapshot(cfg.output_dir + "/" + name);
        CHECK(max_abs(s.eta) <= bound);
    }
}

TEST_CASE("density_bump data are gated by the compatibility check") {
    SimConfig cfg;
    cfg.nx = 16;
    cfg.nz = 8;
    cfg.physics = small_params();
    cfg.preset = InitialPreset::DensityBump;
    cfg.amplitude = 1e-3;
    cfg.mode = 1;
    cfg.dt = 1e-3;
    cfg.t_end = 5e-3;
    cfg.window_steps = 5;
    cfg.min_window_steps = 2;
    cfg.output_dir = (std::filesystem::temp_directory_path() / "fsi_test_bump").string();

    // the pressure-gradient residual on the walls is O(amplitude)
    cfg.allow_incompatible = false;
    CHECK_THROWS_AS(run_simulation(cfg), ValidationError);

    cfg.allow_incompatible = true;
    const RunResult r = run_simulation(cfg);
    CHECK(r.outcome == RunOutcome::Completed);
    CHECK(max_abs(r.final_state.sigma) > 0.0);
}

TEST_CASE("picard_solve: steady convergence and corridor rejection") {
    const Grid g = make_grid(16, 8, 1.0);
    const PhysParams p = small_params();
    const DensityBounds bounds{p.rho_bar, p.rho_bar};
    const CouplingConfig cfg;

    {
        const auto [traj, report] = picard_solve(steady_init(g), 10, 1e-3, p, bounds, cfg);
        CHECK(report.outcome == PicardOutcome::Converged);
        CHECK(report.iterations == 1);
        CHECK(report.deltas.back() == 0.0);
    }

    {
        WindowInit wi = steady_init(g);
        for (auto& v : wi.state.sigma.values) v = -0.9 * p.rho_bar;  // near vacuum
        const auto [traj, report] = picard_solve(wi, 5, 1e-3, p, bounds, cfg);
        CHECK(report.outcome == PicardOutcome::DensityBoundsViolated);
    }
}

TEST_CASE("windows hand off bitwise") {
    const Grid g = make_grid(16, 8, 1.0);
    const PhysParams p = small_params();
    const DensityBounds bounds{p.rho_bar, p.rho_bar};
    CouplingConfig cfg;

    WindowInit wi = steady_init(g);
    for (int i = 0; i < g.nx; ++i)
        wi.state.eta_t[i] = 1e-4 * std::sin(2.0 * M_PI * g.x(i));
    // equation-consistent acceleration at the window start (eta = 0)
    wi.eta_tt0 = BeamField(g);

    const auto [trajA, repA] = picard_solve(wi, 5, 1e-3, p, bounds, cfg);
    REQUIRE(repA.outcome == PicardOutcome::Converged);

    WindowInit next;
    next.state = trajA.states.back();
    next.eta_tt0 = trajA.eta_tt.back();
    next.w_t0 = (1.0 / 1e-3) *
                (trajA.states.back().w - trajA.states[trajA.states.size() - 2].w);
    const auto [trajB, repB] = picard_solve(next, 5, 1e-3, p, bounds, cfg);
    REQUIRE(repB.outcome == PicardOutcome::Converged);

    for (size_t n = 0; n < trajA.states.back().sigma.values.size(); ++n)
        CHECK(trajB.states[0].sigma.values[n] == trajA.states.back().sigma.values[n]);
    for (size_t n = 0; n < trajA.states.back().w.c1.values.size(); ++n) {
        CHECK(trajB.states[0].w.c1.values[n] == trajA.states.back().w.c1.values[n]);
        CHECK(trajB.states[0].w.c2.values[n] == trajA.states.back().w.c2.values[n]);
    }
    for (int i = 0; i < g.nx; ++i) {
        CHECK(trajB.states[0].eta[i] == trajA.states.back().eta[i]);
        CHECK(trajB.states[0].eta_t[i] == trajA.states.back().eta_t[i]);
    }
}

TEST_CASE("run_simulation: steady run and config validation") {
    SimConfig cfg;
    cfg.nx = 16;
    cfg.nz = 8;
    cfg.physics = small_params();
    cfg.preset = InitialPreset::Steady;
    cfg.dt = 1e-3;
    cfg.t_end = 0.02;
    cfg.window_steps = 10;
    cfg.min_window_steps = 2;
    cfg.output_dir = (std::filesystem::temp_directory_path() / "fsi_test_steady").string();

    const RunResult r = run_simulation(cfg);
    CHECK(r.outcome == RunOutcome::Completed);
    CHECK(r.total_halvings == 0);
    CHECK(diagnostics::steady_residual(r.final_state, cfg.physics) < 1e-10);

    SimConfig bad = cfg;
    bad.min_window_steps = 20;  // larger than window_steps
    CHECK_THROWS_AS(run_simulation(bad), ValidationError);
}

TEST_CASE("run_simulation is deterministic") {
    SimConfig cfg;
    cfg.nx = 16;
    cfg.nz = 8;
    cfg.physics = small_params();
    cfg.preset = InitialPreset::BeamKick;
    cfg.amplitude = 1e-3;
    cfg.mode = 1;
    cfg.dt = 2e-3;
    cfg.t_end = 0.02;
    cfg.window_steps = 5;
    cfg.min_window_steps = 2;
    cfg.allow_incompatible = true;
    const auto base = std::filesystem::temp_directory_path() / "fsi_test_det";
    cfg.output_dir = (base / "a").string();
    const RunResult r1 = run_simulation(cfg);
    cfg.output_dir = (base / "b").string();
    const RunResult r2 = run_simulation(cfg);
    CHECK(r1.outcome == RunOutcome::Completed);
    const std::string ts1 = slurp(r1.timeseries_path);
    const std::string ts2 = slurp(r2.timeseries_path);
    CHECK(!ts1.empty());
    CHECK(ts1 == ts2);
}

TEST_CASE("per-step coupling mode completes and matches the window mode at convergence scale") {
    SimConfig cfg;
    cfg.nx = 16;
    cfg.nz = 8;
    cfg.physics = small_params();
    cfg.preset = InitialPreset::BeamKick;
    cfg.amplitude = 1e-4;
    cfg.mode = 1;
    cfg.dt = 1e-3;
    cfg.t_end = 0.01;
    cfg.window_steps = 5;
    cfg.min_window_steps = 1;
    cfg.allow_incompatible = true;
    const auto base = std::filesystem::temp_directory_path() / "fsi_test_stepmode";

    cfg.coupling_mode = CouplingMode::Window;
    cfg.output_dir = (base / "window").string();
    const RunResult rw = run_simulation(cfg);
    REQUIRE(rw.outcome == RunOutcome::Completed);

    cfg.coupling_mode = CouplingMode::Step;
    cfg.output_dir = (base / "step").string();
    const RunResult rs = run_simulation(cfg);
    REQUIRE(rs.outcome == RunOutcome::Completed);
    CHECK(rs.total_windows == 10);  // one window per step

    // both modes solve the same fixed-point problem; at tol_pic they agree
    // to coupling-iteration accuracy
    const double scale = std::max(max_abs(rw.final_state.w), 1e-30);
    CHECK(max_abs(rw.final_state.w - rs.final_state.w) < 1e-5 * scale);
}

TEST_CASE("a violent kick halves windows and underflows without crashing") {
    SimConfig cfg;
    cfg.nx = 16;
    cfg.nz = 8;
    // compliant, lightly damped beam so the kick actually drives the
    // interface toward the bottom wall
    cfg.physics.length = 2.0 * M_PI;
    cfg.physics.mu = 0.05;
    cfg.physics.mu_prime = 0.0;
    cfg.physics.alpha = 1.0;
    cfg.physics.beta = 0.5;
    cfg.physics.delta = 0.2;
    cfg.preset = InitialPreset::BeamKick;
    cfg.amplitude = 0.9;
    cfg.mode = 1;
    cfg.dt = 5e-3;
    cfg.t_end = 3.0;
    cfg.window_steps = 20;
    cfg.min_window_steps = 2;
    cfg.delta0 = 0.5;
    cfg.allow_incompatible = true;
    cfg.output_dir = (std::filesystem::temp_directory_path() / "fsi_test_violent").string();

    const RunResult r = run_simulation(cfg);
    CHECK(r.outcome == RunOutcome::WindowUnderflow);
    CHECK(r.total_halvings >= 1);
    CHECK(all_finite(r.final_state.sigma));
    CHECK(all_finite(r.final_state.w));
    CHECK(all_finite(r.final_state.eta));
}

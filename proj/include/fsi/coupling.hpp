#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsi/config.hpp"
#include "fsi/params.hpp"
#include "fsi/sources.hpp"
#include "fsi/state.hpp"

namespace fsi {
namespace coupling {

/// One window iterate: uniformly spaced levels plus the beam acceleration per
/// level (carried as data, never re-differenced).
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<CoupledState> states;
    std::vector<BeamField> eta_tt;

    int num_steps() const { return static_cast<int>(states.size()) - 1; }
};

/// Inherited data at the start of a window: the state itself plus the
/// equation-consistent acceleration and velocity time-derivative there.
struct WindowInit {
    CoupledState state;
    BeamField eta_tt0;
    VectorField w_t0;
};

enum class PicardOutcome { Converged, MaxIterations, AdmissibilityViolated, DensityBoundsViolated };

const char* to_string(PicardOutcome outcome);

struct PicardReport {
    int iterations = 0;
    std::vector<double> deltas;  // one entry per iteration
    PicardOutcome outcome = PicardOutcome::MaxIterations;
    std::string detail;
};

struct CouplingConfig {
    double tol_pic = 1e-8;
    int max_iter = 50;
    double lin_tol = 1e-10;
    double delta0 = 0.5;
    bool monotone_transport = false;
};

/// One application of the decoupled-solve map: sources and the transport
/// velocity are evaluated on the given iterate at every level, then the three
/// linear solvers advance from the window's inherited data. Throws
/// AdmissibilityViolated / CoefficientOutOfBounds when the input iterate or
/// the output trajectory leaves the admissible set.
Trajectory apply_L(const Trajectory& iterate, const WindowInit& window_init,
                   const PhysParams& params, const DensityBounds& bounds,
                   const CouplingConfig& config);

/// Per-field trajectory scales used to normalize composite distances.
struct FieldScales {
    double sigma = 1.0;
    double w = 1.0;
    double eta = 1.0;
    double eta_t = 1.0;
};

FieldScales trajectory_scales(const Trajectory& a);

/// Max over levels of the sum of normalized L2 field distances (fixed scales);
/// a true metric for any fixed positive scales.
double composite_distance(const Trajectory& a, const Trajectory& b, const FieldScales& scales);

/// composite_distance with scales taken from `a` (zero scales fall back to 1).
double composite_delta(const Trajectory& a, const Trajectory& b);

/// Successive substitution on apply_L, seeded by constant-in-time extension
/// of the window's inherited state. Admissibility/density failures are
/// reported in the outcome, not thrown.
std::pair<Trajectory, PicardReport> picard_solve(const WindowInit& window_init, int steps,
                                                 double dt, const PhysParams& params,
                                                 const DensityBounds& bounds,
                                                 const CouplingConfig& config);

enum class RunOutcome { Completed, WindowUnderflow };

struct WindowRecord {
    int window_index = 0;
    double t_start = 0.0;
    int steps = 0;
    PicardReport picard;
};

struct RunResult {
    RunOutcome outcome = RunOutcome::Completed;
    CoupledState final_state;
    int total_halvings = 0;
    int total_windows = 0;
    std::vector<WindowRecord> windows;
    std::vector<std::string> events;
    std::string timeseries_path;
    std::string detail;
};

/// Window-by-window advance to t_end with Picard per window; on failure the
/// window length is halved down to min_window_steps before giving up with
/// WindowUnderflow. Deterministic for a fixed config. Emits the timeseries
/// CSV, snapshots and an event log under config.output_dir.
RunResult run_simulation(const SimConfig& config);

/// Initial data of a preset on the given grid (sigma, w, eta, eta_t at t=0).
CoupledState initial_state(const SimConfig& config, const Grid& grid);

}  // namespace coupling
}  // namespace fsi

#pragma once

#include <limits>
#include <span>

#include "fsi/params.hpp"
#include "fsi/state.hpp"

namespace fsi {
namespace diagnostics {

/// One evaluation of the discrete energy budget between two consecutive
/// levels. Moving-domain integrals are computed on the reference rectangle
/// with the column weight (1+eta); fluid gradients use the flattening chain
/// rule; beam terms use the modal (Parseval) forms. `internal` is reported
/// relative to its steady-state value so a steady pair yields all zeros.
/// budget_residual = (E_curr - E_prev)/dt + dissipation - pext_work.
struct EnergyReport {
    double kinetic = 0.0;
    double internal = 0.0;
    double beam_kinetic = 0.0;
    double beam_stretch = 0.0;
    double beam_bend = 0.0;
    double viscous_dissipation = 0.0;
    double beam_dissipation = 0.0;
    double pext_work = 0.0;
    double budget_residual = 0.0;

    double total_energy() const {
        return kinetic + internal + beam_kinetic + beam_stretch + beam_bend;
    }
};

EnergyReport energy_budget(const CoupledState& prev, const CoupledState& curr, double dt,
                           const PhysParams& params, double delta0);

/// Sup-in-time difference-quotient surrogates of the iterate norm bounds,
/// with user thresholds standing in for the non-computable analysis bounds.
/// Pure bookkeeping; no control action.
struct MonitorReport {
    double sigma_h2 = 0.0;    // sup_t sqrt(||sigma||^2 + ||D sigma||^2 + ||D^2 sigma||^2)
    double sigma_t_h1 = 0.0;  // sup_t H1 of the sigma time difference-quotient
    double w_h2 = 0.0;
    double w_t_h1 = 0.0;
    double eta_h2 = 0.0;
    double eta_t_h1 = 0.0;
    double eta_tt_l2 = 0.0;
    bool sigma_within = true;
    bool sigma_t_within = true;
    bool w_within = true;
    bool eta_within = true;
};

struct MonitorThresholds {
    double b1 = std::numeric_limits<double>::infinity();
    double b2 = std::numeric_limits<double>::infinity();
    double b3 = std::numeric_limits<double>::infinity();
    double b4 = std::numeric_limits<double>::infinity();
};

MonitorReport monitor_norms(std::span<const CoupledState> states, double dt,
                            const MonitorThresholds& thresholds = {});

/// Sup-norm distance to the steady state (rho_bar, 0, 0, 0).
double steady_residual(const CoupledState& state, const PhysParams& params);

}  // namespace diagnostics
}  // namespace fsi

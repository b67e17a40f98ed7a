#include "fsi/beam.hpp"

#include <cmath>
#include <complex>

#include "fsi/calculus.hpp"

namespace fsi {
namespace beam {

Eigen::Matrix2d mode_matrix(int j, const PhysParams& params) {
    const double kappa = 2.0 * M_PI * j / params.length;
    const double k2 = kappa * kappa;
    Eigen::Matrix2d A;
    A << 0.0, 1.0, -params.alpha * k2 * k2 - params.beta * k2, -params.delta * k2;
    return A;
}

BeamModeSystem::BeamModeSystem(const Grid& grid, const PhysParams& params, double dt)
    : grid_(grid), dt_(dt) {
    const int n = grid.nx;
    prop_.resize(static_cast<size_t>(n));
    resolv_.resize(static_cast<size_t>(n));
    const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
    for (int bin = 0; bin < n; ++bin) {
        const double kappa = wavenumber(bin, grid);
        const double k2 = kappa * kappa;
        Eigen::Matrix2d A;
        A << 0.0, 1.0, -params.alpha * k2 * k2 - params.beta * k2, -params.delta * k2;
        const Eigen::Matrix2d lhs = I - 0.5 * dt * A;
        const Eigen::Matrix2d inv = lhs.inverse();
        resolv_[static_cast<size_t>(bin)] = inv;
        prop_[static_cast<size_t>(bin)] = inv * (I + 0.5 * dt * A);
    }
}

namespace {

using ModeVec = std::vector<std::complex<double>>;

void step_modes(const BeamModeSystem& sys, ModeVec& eta_hat, ModeVec& eta_t_hat,
                const ModeVec& g3_hat) {
    const int n = sys.grid().nx;
    const double dt = sys.dt();
    for (int bin = 0; bin < n; ++bin) {
        const Eigen::Matrix2d& P = sys.propagator(bin);
        const Eigen::Matrix2d& R = sys.resolvent(bin);
        const std::complex<double> y0 = eta_hat[static_cast<size_t>(bin)];
        const std::complex<double> y1 = eta_t_hat[static_cast<size_t>(bin)];
        const std::complex<double> g = g3_hat[static_cast<size_t>(bin)];
        eta_hat[static_cast<size_t>(bin)] =
            P(0, 0) * y0 + P(0, 1) * y1 + dt * (R(0, 1) * g);
        eta_t_hat[static_cast<size_t>(bin)] =
            P(1, 0) * y0 + P(1, 1) * y1 + dt * (R(1, 1) * g);
    }
}

}  // namespace

std::pair<BeamField, BeamField> beam_step(const BeamField& eta_n, const BeamField& eta_t_n,
                                          const BeamField& g3_half, double dt,
                                          const PhysParams& params, double* imag_residue) {
    const Grid& g = eta_n.grid;
    BeamModeSystem sys(g, params, dt);
    ModeVec eta_hat = dft_x(eta_n);
    ModeVec eta_t_hat = dft_x(eta_t_n);
    const ModeVec g3_hat = dft_x(g3_half);
    step_modes(sys, eta_hat, eta_t_hat, g3_hat);
    double r1 = 0.0, r2 = 0.0;
    BeamField eta_out = idft_x(eta_hat, g, &r1);
    BeamField eta_t_out = idft_x(eta_t_hat, g, &r2);
    if (imag_residue) *imag_residue = std::max(r1, r2);
    return {std::move(eta_out), std::move(eta_t_out)};
}

BeamTrajectory solve_window(const BeamField& eta0, const BeamField& eta1_field,
                            std::span<const BeamField> g3_levels, double dt,
                            const PhysParams& params) {
    const Grid& g = eta0.grid;
    const int nlev = static_cast<int>(g3_levels.size());
    BeamModeSystem sys(g, params, dt);

    BeamTrajectory traj;
    traj.eta.reserve(static_cast<size_t>(nlev));
    traj.eta_t.reserve(static_cast<size_t>(nlev));
    traj.eta_tt.reserve(static_cast<size_t>(nlev));

    ModeVec eta_hat = dft_x(eta0);
    ModeVec eta_t_hat = dft_x(eta1_field);

    auto emit_eta_tt = [&](const ModeVec& eh, const ModeVec& eth, const BeamField& g3) {
        // eta_tt = g3 - (alpha*k^4 + beta*k^2) eta - delta*k^2 eta_t per mode
        double r = 0.0;
        ModeVec tt = dft_x(g3);
        for (int bin = 0; bin < g.nx; ++bin) {
            const double kappa = wavenumber(bin, g);
            const double k2 = kappa * kappa;
            tt[static_cast<size_t>(bin)] +=
                -(params.alpha * k2 * k2 + params.beta * k2) * eh[static_cast<size_t>(bin)] -
                params.delta * k2 * eth[static_cast<size_t>(bin)];
        }
        traj.eta_tt.push_back(idft_x(tt, g, &r));
        traj.max_imag_residue = std::max(traj.max_imag_residue, r);
    };

    // level 0 carries the inherited data verbatim
    traj.eta.push_back(eta0);
    traj.eta_t.push_back(eta1_field);
    emit_eta_tt(eta_hat, eta_t_hat, g3_levels[0]);

    for (int n = 1; n < nlev; ++n) {
        BeamField g3_half = 0.5 * (g3_levels[static_cast<size_t>(n - 1)] +
                                   g3_levels[static_cast<size_t>(n)]);
        const ModeVec g3_hat = dft_x(g3_half);
        step_modes(sys, eta_hat, eta_t_hat, g3_hat);
        double r1 = 0.0, r2 = 0.0;
        traj.eta.push_back(idft_x(eta_hat, g, &r1));
        traj.eta_t.push_back(idft_x(eta_t_hat, g, &r2));
        traj.max_imag_residue = std::max({traj.max_imag_residue, r1, r2});
        emit_eta_tt(eta_hat, eta_t_hat, g3_levels[static_cast<size_t>(n)]);
    }
    return traj;
}

BeamField eta_tt_from_equation(const BeamField& eta, const BeamField& eta_t, const BeamField& g3,
                               const PhysParams& params) {
    const Grid& g = eta.grid;
    ModeVec tt = dft_x(g3);
    const ModeVec eh = dft_x(eta);
    const ModeVec eth = dft_x(eta_t);
    for (int bin = 0; bin < g.nx; ++bin) {
        const double kappa = wavenumber(bin, g);
        const double k2 = kappa * kappa;
        tt[static_cast<size_t>(bin)] +=
            -(params.alpha * k2 * k2 + params.beta * k2) * eh[static_cast<size_t>(bin)] -
            params.delta * k2 * eth[static_cast<size_t>(bin)];
    }
    return idft_x(tt, g);
}

double beam_energy(const BeamField& eta, const BeamField& eta_t, const PhysParams& params) {
    const Grid& g = eta.grid;
    const ModeVec eh = dft_x(eta);
    const ModeVec eth = dft_x(eta_t);
    double acc = 0.0;
    for (int bin = 0; bin < g.nx; ++bin) {
        const double kappa = wavenumber(bin, g);
        const double k2 = kappa * kappa;
        const double stiff = params.beta * k2 + params.alpha * k2 * k2;
        acc += 0.5 * (std::norm(eth[static_cast<size_t>(bin)]) +
                      stiff * std::norm(eh[static_cast<size_t>(bin)]));
    }
    return acc * g.length / (static_cast<double>(g.nx) * g.nx);
}

}  // namespace beam
}  // namespace fsi

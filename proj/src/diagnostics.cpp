#include "fsi/diagnostics.hpp"

#include <cmath>

#include "fsi/beam.hpp"
#include "fsi/calculus.hpp"
#include "fsi/geometry.hpp"
#include "fsi/sources.hpp"

namespace fsi {
namespace diagnostics {

namespace {

struct StateEnergy {
    double kinetic = 0.0;
    double internal = 0.0;
    double beam_kinetic = 0.0;
    double beam_stretch = 0.0;
    double beam_bend = 0.0;
    double viscous_dissipation = 0.0;
    double beam_dissipation = 0.0;
    double pext_work = 0.0;

    double total() const { return kinetic + internal + beam_kinetic + beam_stretch + beam_bend; }
};

StateEnergy state_energy(const CoupledState& s, const PhysParams& params, double delta0) {
    const Grid& g = s.sigma.grid;
    const BeamGeometry geo = build_geometry(s.eta, delta0);
    const ScalarField weight = jacobian_weight(geo);
    const ScalarField rho = density_from_sigma(s.sigma, params);
    const VectorField v = velocity_from_w(s.w, s.eta_t);

    StateEnergy e;

    {
        ScalarField ke(g);
        for (size_t n = 0; n < ke.values.size(); ++n)
            ke.values[n] = 0.5 * rho.values[n] *
                           (v.c1.values[n] * v.c1.values[n] + v.c2.values[n] * v.c2.values[n]);
        e.kinetic = integrate_weighted(ke, weight);
    }

    {
        // relative to the steady value so the steady state reports zero
        ScalarField ie(g);
        const double coef = params.a / (params.gamma - 1.0);
        for (size_t n = 0; n < ie.values.size(); ++n)
            ie.values[n] = coef * std::pow(rho.values[n], params.gamma);
        ScalarField ie_ref(g, coef * std::pow(params.rho_bar, params.gamma));
        ScalarField ones(g, 1.0);
        e.internal = integrate_weighted(ie, weight) - integrate_weighted(ie_ref, ones);
    }

    {
        // modal beam terms (discrete Parseval), consistent with the beam step
        const auto eh = dft_x(s.eta);
        const auto eth = dft_x(s.eta_t);
        const double norm = g.length / (static_cast<double>(g.nx) * g.nx);
        for (int bin = 0; bin < g.nx; ++bin) {
            const double kappa = wavenumber(bin, g);
            const double k2 = kappa * kappa;
            const double ae = std::norm(eh[static_cast<size_t>(bin)]);
            const double aet = std::norm(eth[static_cast<size_t>(bin)]);
            e.beam_kinetic += 0.5 * norm * aet;
            e.beam_stretch += 0.5 * params.beta * norm * k2 * ae;
            e.beam_bend += 0.5 * params.alpha * norm * k2 * k2 * ae;
            e.beam_dissipation += params.delta * norm * k2 * aet;
        }
    }

    {
        // physical velocity gradient via the flattening chain rule
        const ScalarField v1_x = ddx(v.c1), v2_x = ddx(v.c2);
        const ScalarField v1_z = ddz(v.c1), v2_z = ddz(v.c2);
        ScalarField diss(g);
        for (int k = 0; k <= g.nz; ++k) {
            const double z = g.z(k);
            for (int i = 0; i < g.nx; ++i) {
                const double slope = z * geo.eta_x[i] * geo.inv_one_plus_eta[i];
                const double inv_h = geo.inv_one_plus_eta[i];
                const double u1x = v1_x(i, k) - slope * v1_z(i, k);
                const double u2x = v2_x(i, k) - slope * v2_z(i, k);
                const double u1y = v1_z(i, k) * inv_h;
                const double u2y = v2_z(i, k) * inv_h;
                const double d11 = u1x;
                const double d22 = u2y;
                const double d12 = 0.5 * (u1y + u2x);
                const double divu = u1x + u2y;
                diss(i, k) = 2.0 * params.mu * (d11 * d11 + 2.0 * d12 * d12 + d22 * d22) +
                             params.mu_prime * divu * divu;
            }
        }
        e.viscous_dissipation = integrate_weighted(diss, weight);
    }

    e.pext_work = -params.p_ext() * integrate_line(s.eta_t);
    return e;
}

double h2_surrogate(const ScalarField& f) {
    const double a = l2_norm(f);
    const double b = l2_norm(ddx(f));
    const double c = l2_norm(ddz(f));
    const double d = l2_norm(d2dx2(f));
    const double e = l2_norm(d2dz2(f));
    const double m = l2_norm(d2dxdz(f));
    return std::sqrt(a * a + b * b + c * c + d * d + e * e + m * m);
}

double h1_surrogate(const ScalarField& f) {
    const double a = l2_norm(f);
    const double b = l2_norm(ddx(f));
    const double c = l2_norm(ddz(f));
    return std::sqrt(a * a + b * b + c * c);
}

double h2_beam(const BeamField& f) {
    const double a = l2_norm(f);
    const double b = l2_norm(spectral_derivative(f, 1));
    const double c = l2_norm(spectral_derivative(f, 2));
    return std::sqrt(a * a + b * b + c * c);
}

double h1_beam(const BeamField& f) {
    const double a = l2_norm(f);
    const double b = l2_norm(spectral_derivative(f, 1));
    return std::sqrt(a * a + b * b);
}

}  // namespace

EnergyReport energy_budget(const CoupledState& prev, const CoupledState& curr, double dt,
                           const PhysParams& params, double delta0) {
    const StateEnergy ep = state_energy(prev, params, delta0);
    const StateEnergy ec = state_energy(curr, params, delta0);
    EnergyReport rep;
    rep.kinetic = ec.kinetic;
    rep.internal = ec.internal;
    rep.beam_kinetic = ec.beam_kinetic;
    rep.beam_stretch = ec.beam_stretch;
    rep.beam_bend = ec.beam_bend;
    rep.viscous_dissipation = ec.viscous_dissipation;
    rep.beam_dissipation = ec.beam_dissipation;
    rep.pext_work = ec.pext_work;
    rep.budget_residual = (ec.total() - ep.total()) / dt + ec.viscous_dissipation +
                          ec.beam_dissipation - ec.pext_work;
    return rep;
}

MonitorReport monitor_norms(std::span<const CoupledState> states, double dt,
                            const MonitorThresholds& thresholds) {
    MonitorReport rep;
    for (size_t n = 0; n < states.size(); ++n) {
        const CoupledState& s = states[n];
        rep.sigma_h2 = std::max(rep.sigma_h2, h2_surrogate(s.sigma));
        const double wh2 = std::hypot(h2_surrogate(s.w.c1), h2_surrogate(s.w.c2));
        rep.w_h2 = std::max(rep.w_h2, wh2);
        rep.eta_h2 = std::max(rep.eta_h2, h2_beam(s.eta));
        rep.eta_t_h1 = std::max(rep.eta_t_h1, h1_beam(s.eta_t));
        if (n > 0) {
            const CoupledState& p = states[n - 1];
            const ScalarField dsig = (1.0 / dt) * (s.sigma - p.sigma);
            rep.sigma_t_h1 = std::max(rep.sigma_t_h1, h1_surrogate(dsig));
            const ScalarField dw1 = (1.0 / dt) * (s.w.c1 - p.w.c1);
            const ScalarField dw2 = (1.0 / dt) * (s.w.c2 - p.w.c2);
            rep.w_t_h1 = std::max(rep.w_t_h1, std::hypot(h1_surrogate(dw1), h1_surrogate(dw2)));
            const BeamField det = (1.0 / dt) * (s.eta_t - p.eta_t);
            rep.eta_tt_l2 = std::max(rep.eta_tt_l2, l2_norm(det));
        }
    }
    rep.sigma_within = rep.sigma_h2 <= thresholds.b1;
    rep.sigma_t_within = rep.sigma_t_h1 <= thresholds.b2;
    rep.w_within = std::max(rep.w_h2, rep.w_t_h1) <= thresholds.b3;
    rep.eta_within =
        std::max({rep.eta_h2, rep.eta_t_h1, rep.eta_tt_l2}) <= thresholds.b4;
    return rep;
}

double steady_residual(const CoupledState& state, const PhysParams&) {
    return std::max({max_abs(state.sigma), max_abs(state.w), max_abs(state.eta),
                     max_abs(state.eta_t)});
}

}  // namespace diagnostics
}  // namespace fsi

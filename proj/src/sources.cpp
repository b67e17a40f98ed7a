#include "fsi/sources.hpp"

#include <cmath>

namespace fsi {

ScalarField pressure(const ScalarField& rho_hat, const PhysParams& params) {
    ScalarField out(rho_hat.grid);
    const double pext = params.p_ext();
    for (size_t n = 0; n < rho_hat.values.size(); ++n) {
        const double rho = rho_hat.values[n];
        if (!(rho > 0.0)) throw NonpositiveDensity("pressure: density must be positive");
        out.values[n] = params.a * std::pow(rho, params.gamma) - pext;
    }
    return out;
}

ScalarField pressure_prime(const ScalarField& rho_hat, const PhysParams& params) {
    ScalarField out(rho_hat.grid);
    for (size_t n = 0; n < rho_hat.values.size(); ++n) {
        const double rho = rho_hat.values[n];
        if (!(rho > 0.0)) throw NonpositiveDensity("pressure_prime: density must be positive");
        out.values[n] = params.a * params.gamma * std::pow(rho, params.gamma - 1.0);
    }
    return out;
}

ScalarField density_from_sigma(const ScalarField& sigma, const PhysParams& params) {
    ScalarField out(sigma.grid);
    for (size_t n = 0; n < sigma.values.size(); ++n)
        out.values[n] = sigma.values[n] + params.rho_bar;
    return out;
}

VectorField velocity_from_w(const VectorField& w, const BeamField& eta_t) {
    const Grid& g = w.grid();
    VectorField v = w;
    for (int k = 0; k <= g.nz; ++k) {
        const double z = g.z(k);
        for (int i = 0; i < g.nx; ++i) v.c2(i, k) += z * eta_t[i];
    }
    return v;
}

ScalarField compute_F1(const ScalarField& rho_hat, const VectorField& u_hat,
                       const BeamGeometry& geometry) {
    const Grid& g = rho_hat.grid;
    require_same_grid(g, u_hat.grid(), "compute_F1");
    const ScalarField u1_z = ddz(u_hat.c1);
    const ScalarField u2_z = ddz(u_hat.c2);
    ScalarField out(g);
    for (int k = 0; k <= g.nz; ++k) {
        const double z = g.z(k);
        for (int i = 0; i < g.nx; ++i) {
            out(i, k) = geometry.inv_one_plus_eta[i] *
                        (u1_z(i, k) * z * geometry.eta_x[i] * rho_hat(i, k) +
                         geometry.eta[i] * rho_hat(i, k) * u2_z(i, k));
        }
    }
    return out;
}

VectorField F2Terms::total() const {
    return eta_accel + mesh_advection + eta_convection + slope_convection + convection +
           mu_bracket + graddiv_bracket + pressure_tilt;
}

F2Terms compute_F2_terms(const ScalarField& rho_hat, const VectorField& u_hat,
                         const VectorField& u_hat_t, const BeamGeometry& geometry,
                         const BeamField& eta_t, const PhysParams& params,
                         bool printed_sign_variant) {
    const Grid& g = rho_hat.grid;
    require_same_grid(g, u_hat.grid(), "compute_F2");
    require_same_grid(g, u_hat_t.grid(), "compute_F2");

    const ScalarField u1_x = ddx(u_hat.c1), u2_x = ddx(u_hat.c2);
    const ScalarField u1_z = ddz(u_hat.c1), u2_z = ddz(u_hat.c2);
    const ScalarField u1_xx = d2dx2(u_hat.c1), u2_xx = d2dx2(u_hat.c2);
    const ScalarField u1_zz = d2dz2(u_hat.c1), u2_zz = d2dz2(u_hat.c2);
    const ScalarField u1_xz = d2dxdz(u_hat.c1), u2_xz = d2dxdz(u_hat.c2);
    const ScalarField P = pressure(rho_hat, params);
    const ScalarField P_x = ddx(P), P_z = ddz(P);

    F2Terms terms;
    terms.eta_accel = VectorField(g);
    terms.mesh_advection = VectorField(g);
    terms.eta_convection = VectorField(g);
    terms.slope_convection = VectorField(g);
    terms.convection = VectorField(g);
    terms.mu_bracket = VectorField(g);
    terms.graddiv_bracket = VectorField(g);
    terms.pressure_tilt = VectorField(g);

    const double mu = params.mu;
    const double lame = params.mu + params.mu_prime;
    // sign of the u1_z curvature term in the graddiv bracket; the identity-exact
    // form is -1, the printed variant keeps +1
    const double curv_sign = printed_sign_variant ? 1.0 : -1.0;

    for (int k = 0; k <= g.nz; ++k) {
        const double z = g.z(k);
        for (int i = 0; i < g.nx; ++i) {
            const double eta = geometry.eta[i];
            const double ex = geometry.eta_x[i];
            const double exx = geometry.eta_xx[i];
            const double h = geometry.one_plus_eta[i];
            const double inv_h = geometry.inv_one_plus_eta[i];
            const double et = eta_t[i];
            const double rho = rho_hat(i, k);
            const double u1 = u_hat.c1(i, k);
            const double u2 = u_hat.c2(i, k);
            const double curv = (h * z * exx - 2.0 * ex * ex * z) * inv_h;

            // component-wise shared pieces
            const double ux[2] = {u1_x(i, k), u2_x(i, k)};
            const double uz[2] = {u1_z(i, k), u2_z(i, k)};
            const double uxx[2] = {u1_xx(i, k), u2_xx(i, k)};
            const double uzz[2] = {u1_zz(i, k), u2_zz(i, k)};
            const double uxz[2] = {u1_xz(i, k), u2_xz(i, k)};
            const double ut[2] = {u_hat_t.c1(i, k), u_hat_t.c2(i, k)};

            for (int c = 0; c < 2; ++c) {
                ScalarField& accel = c == 0 ? terms.eta_accel.c1 : terms.eta_accel.c2;
                ScalarField& mesh = c == 0 ? terms.mesh_advection.c1 : terms.mesh_advection.c2;
                ScalarField& convE = c == 0 ? terms.eta_convection.c1 : terms.eta_convection.c2;
                ScalarField& convS = c == 0 ? terms.slope_convection.c1 : terms.slope_convection.c2;
                ScalarField& conv = c == 0 ? terms.convection.c1 : terms.convection.c2;
                ScalarField& mub = c == 0 ? terms.mu_bracket.c1 : terms.mu_bracket.c2;

                accel(i, k) = -eta * rho * ut[c];
                mesh(i, k) = z * rho * uz[c] * et;
                convE(i, k) = -eta * rho * u1 * ux[c];
                convS(i, k) = u1 * uz[c] * ex * rho * z;
                conv(i, k) = -rho * (u1 * ux[c] + u2 * uz[c]);
                mub(i, k) = mu * (eta * uxx[c] - eta * uzz[c] * inv_h - 2.0 * ex * z * uxz[c] +
                                  uzz[c] * z * z * ex * ex * inv_h - uz[c] * curv);
            }

            terms.graddiv_bracket.c1(i, k) =
                lame * (eta * uxx[0] - uxz[0] * z * ex -
                        ex * z * (uxz[0] - uzz[0] * z * ex * inv_h) + curv_sign * uz[0] * curv -
                        ex * uz[1] * inv_h - ex * z * uzz[1] * inv_h);
            terms.graddiv_bracket.c2(i, k) =
                lame * (-ex * uz[0] * inv_h - ex * z * uzz[0] * inv_h - eta * uzz[1] * inv_h);

            terms.pressure_tilt.c1(i, k) = -(eta * P_x(i, k) - P_z(i, k) * z * ex);
            terms.pressure_tilt.c2(i, k) = 0.0;
        }
    }
    return terms;
}

VectorField compute_F2(const ScalarField& rho_hat, const VectorField& u_hat,
                       const VectorField& u_hat_t, const BeamGeometry& geometry,
                       const BeamField& eta_t, const PhysParams& params) {
    return compute_F2_terms(rho_hat, u_hat, u_hat_t, geometry, eta_t, params).total();
}

BeamField compute_F3(const ScalarField& rho_hat, const VectorField& u_hat,
                     const BeamGeometry& geometry, const PhysParams& params) {
    const Grid& g = rho_hat.grid;
    require_same_grid(g, u_hat.grid(), "compute_F3");
    const ScalarField u1_x = ddx(u_hat.c1), u2_x = ddx(u_hat.c2);
    const ScalarField u1_z = ddz(u_hat.c1), u2_z = ddz(u_hat.c2);
    const ScalarField P = pressure(rho_hat, params);
    const int kt = g.nz;  // interface row

    BeamField out(g);
    for (int i = 0; i < g.nx; ++i) {
        const double ex = geometry.eta_x[i];
        const double inv_h = geometry.inv_one_plus_eta[i];
        // physical derivatives on the trace via the flattening chain rule
        const double du2_dx = u2_x(i, kt) - ex * u2_z(i, kt) * inv_h;
        const double du1_dy = u1_z(i, kt) * inv_h;
        const double du2_dy = u2_z(i, kt) * inv_h;
        const double du1_dx = u1_x(i, kt) - ex * u1_z(i, kt) * inv_h;
        out[i] = params.mu * ex * (du2_dx + du1_dy) - 2.0 * params.mu * du2_dy -
                 params.mu_prime * (du1_dx + du2_dy) + P(i, kt);
    }
    return out;
}

BeamField compute_F3_printed(const ScalarField& rho_hat, const VectorField& u_hat,
                             const BeamGeometry& geometry, const PhysParams& params) {
    const Grid& g = rho_hat.grid;
    const ScalarField u2_x = ddx(u_hat.c2);
    const ScalarField u1_z = ddz(u_hat.c1), u2_z = ddz(u_hat.c2);
    const ScalarField P = pressure(rho_hat, params);
    const int kt = g.nz;

    BeamField out(g);
    for (int i = 0; i < g.nx; ++i) {
        const double eta = geometry.eta[i];
        const double ex = geometry.eta_x[i];
        const double inv_h = geometry.inv_one_plus_eta[i];
        out[i] = -params.mu * (-u2_z(i, kt) + ex * u2_x(i, kt) + u2_z(i, kt) * ex * ex * inv_h -
                               2.0 * eta * u2_z(i, kt) * inv_h - ex * u1_z(i, kt) * inv_h) -
                 params.mu_prime *
                     (-2.0 * u2_z(i, kt) + u1_z(i, kt) * ex * inv_h - eta * u2_z(i, kt) * inv_h) +
                 P(i, kt);
    }
    return out;
}

F3Comparison compare_F3(const ScalarField& rho_hat, const VectorField& u_hat,
                        const BeamGeometry& geometry, const PhysParams& params) {
    F3Comparison cmp;
    cmp.first_principles = compute_F3(rho_hat, u_hat, geometry, params);
    cmp.printed = compute_F3_printed(rho_hat, u_hat, geometry, params);
    cmp.max_abs_diff = max_abs(cmp.first_principles - cmp.printed);
    return cmp;
}

VectorField compute_W_tilde(const CoupledState& state, const BeamGeometry& geometry) {
    const Grid& g = state.sigma.grid;
    VectorField out(g);
    for (int k = 0; k <= g.nz; ++k) {
        const double z = g.z(k);
        for (int i = 0; i < g.nx; ++i) {
            const double w1 = state.w.c1(i, k);
            out.c1(i, k) = w1;
            out.c2(i, k) =
                (state.w.c2(i, k) - w1 * z * geometry.eta_x[i]) * geometry.inv_one_plus_eta[i];
        }
    }
    return out;
}

VectorField lame_full_grid(const VectorField& u, const PhysParams& params) {
    const ScalarField div = divergence(u);
    const VectorField grad_div = gradient(div);
    VectorField out(u.grid());
    const ScalarField lap1 = laplacian(u.c1);
    const ScalarField lap2 = laplacian(u.c2);
    const double lame = params.mu + params.mu_prime;
    for (size_t n = 0; n < out.c1.values.size(); ++n) {
        out.c1.values[n] = -params.mu * lap1.values[n] - lame * grad_div.c1.values[n];
        out.c2.values[n] = -params.mu * lap2.values[n] - lame * grad_div.c2.values[n];
    }
    return out;
}

namespace {

// +mu*Lap(z*f*e2) + (mu+mu')*grad(div(z*f*e2)) = ((mu+mu')*f_x, mu*z*f_xx),
// with the beam derivatives taken spectrally.
VectorField lift_operator(const BeamField& f, const Grid& g, const PhysParams& params) {
    const BeamField f_x = spectral_derivative(f, 1);
    const BeamField f_xx = spectral_derivative(f, 2);
    VectorField out(g);
    const double lame = params.mu + params.mu_prime;
    for (int k = 0; k <= g.nz; ++k) {
        const double z = g.z(k);
        for (int i = 0; i < g.nx; ++i) {
            out.c1(i, k) = lame * f_x[i];
            out.c2(i, k) = params.mu * z * f_xx[i];
        }
    }
    return out;
}

}  // namespace

SourceSet compute_sources(const CoupledState& state, const BeamField& eta_tt,
                          const VectorField& w_t, const PhysParams& params,
                          const BeamGeometry& geometry) {
    const Grid& g = state.sigma.grid;
    const ScalarField rho_hat = density_from_sigma(state.sigma, params);
    const VectorField v = velocity_from_w(state.w, state.eta_t);
    const VectorField v_t = velocity_from_w(w_t, eta_tt);

    SourceSet out;

    // G1 = -rho * div(v) + F1(rho, v, eta)
    {
        const ScalarField div_v = divergence(v);
        const ScalarField f1 = compute_F1(rho_hat, v, geometry);
        out.g1 = ScalarField(g);
        for (size_t n = 0; n < out.g1.values.size(); ++n)
            out.g1.values[n] = -rho_hat.values[n] * div_v.values[n] + f1.values[n];
    }

    // G2 = -P'(rho) grad(sigma) - z*eta_tt*rho*e2 + lift + F2(rho, v, v_t, eta)
    {
        const ScalarField pprime = pressure_prime(rho_hat, params);
        const VectorField grad_sigma = gradient(state.sigma);
        const VectorField lift = lift_operator(state.eta_t, g, params);
        const VectorField f2 = compute_F2(rho_hat, v, v_t, geometry, state.eta_t, params);
        out.g2 = VectorField(g);
        for (int k = 0; k <= g.nz; ++k) {
            const double z = g.z(k);
            for (int i = 0; i < g.nx; ++i) {
                out.g2.c1(i, k) = -pprime(i, k) * grad_sigma.c1(i, k) + lift.c1(i, k) + f2.c1(i, k);
                out.g2.c2(i, k) = -pprime(i, k) * grad_sigma.c2(i, k) -
                                  z * eta_tt[i] * rho_hat(i, k) + lift.c2(i, k) + f2.c2(i, k);
            }
        }
    }

    // G3 = F3(rho, v, eta), with v the reconstructed physical velocity
    out.g3 = compute_F3(rho_hat, v, geometry, params);
    return out;
}

InitialValues initial_values(const ScalarField& rho0, const VectorField& u0,
                             const BeamField& eta1, const PhysParams& params) {
    const Grid& g = rho0.grid;
    require_same_grid(g, u0.grid(), "initial_values");
    for (double v : rho0.values)
        if (!(v > 0.0)) throw NonpositiveDensity("initial_values: rho0 must be positive");

    const BeamField eta0(g);  // beam starts flat
    const BeamGeometry geo0 = build_geometry(eta0, 0.5);

    InitialValues iv;
    iv.g3_0 = compute_F3(rho0, u0, geo0, params);

    // cross-check against the alternative closed form -(mu+2mu')*u0_{2,z} + P(rho0)
    {
        const ScalarField u2_z = ddz(u0.c2);
        const ScalarField P = pressure(rho0, params);
        double diff = 0.0;
        for (int i = 0; i < g.nx; ++i) {
            const double alt =
                -(params.mu + 2.0 * params.mu_prime) * u2_z(i, g.nz) + P(i, g.nz);
            diff = std::max(diff, std::abs(alt - iv.g3_0[i]));
        }
        iv.g3_printed_max_diff = diff;
    }

    iv.eta_tt_0 = params.delta * spectral_derivative(eta1, 2) + iv.g3_0;

    // g2_0 = -P'(rho0) grad(rho0) - z*eta_tt_0*rho0*e2 + z*rho0*u0_z*eta1
    //        - rho0*(u0.grad)u0 + lift(eta1)
    {
        const ScalarField pprime = pressure_prime(rho0, params);
        const VectorField grad_rho = gradient(rho0);
        const ScalarField u1_x = ddx(u0.c1), u2_x = ddx(u0.c2);
        const ScalarField u1_z = ddz(u0.c1), u2_z = ddz(u0.c2);
        const VectorField lift = lift_operator(eta1, g, params);
        iv.g2_0 = VectorField(g);
        for (int k = 0; k <= g.nz; ++k) {
            const double z = g.z(k);
            for (int i = 0; i < g.nx; ++i) {
                const double rho = rho0(i, k);
                const double conv1 = u0.c1(i, k) * u1_x(i, k) + u0.c2(i, k) * u1_z(i, k);
                const double conv2 = u0.c1(i, k) * u2_x(i, k) + u0.c2(i, k) * u2_z(i, k);
                iv.g2_0.c1(i, k) = -pprime(i, k) * grad_rho.c1(i, k) +
                                   z * rho * u1_z(i, k) * eta1[i] - rho * conv1 + lift.c1(i, k);
                iv.g2_0.c2(i, k) = -pprime(i, k) * grad_rho.c2(i, k) -
                                   z * iv.eta_tt_0[i] * rho + z * rho * u2_z(i, k) * eta1[i] -
                                   rho * conv2 + lift.c2(i, k);
            }
        }
    }

    // w_t(.,0) = (g2_0 - (-mu*Lap - (mu+mu')*grad div) w0) / rho0, w0 = u0 - z*eta1*e2
    {
        VectorField w0 = u0;
        for (int k = 0; k <= g.nz; ++k) {
            const double z = g.z(k);
            for (int i = 0; i < g.nx; ++i) w0.c2(i, k) -= z * eta1[i];
        }
        const VectorField aw0 = lame_full_grid(w0, params);
        iv.w_t_0 = VectorField(g);
        for (size_t n = 0; n < iv.w_t_0.c1.values.size(); ++n) {
            iv.w_t_0.c1.values[n] = (iv.g2_0.c1.values[n] - aw0.c1.values[n]) / rho0.values[n];
            iv.w_t_0.c2.values[n] = (iv.g2_0.c2.values[n] - aw0.c2.values[n]) / rho0.values[n];
        }
    }
    return iv;
}

CompatReport check_compatibility(const ScalarField& rho0, const VectorField& u0,
                                 const BeamField& eta1, const PhysParams& params, double tol) {
    const Grid& g = rho0.grid;
    CompatReport rep;

    for (int i = 0; i < g.nx; ++i) {
        rep.residual_b1 = std::max(rep.residual_b1, std::abs(u0.c1(i, 0)));
        rep.residual_b1 = std::max(rep.residual_b1, std::abs(u0.c2(i, 0)));
        rep.residual_b1 = std::max(rep.residual_b1, std::abs(u0.c1(i, g.nz)));
        rep.residual_b1 =
            std::max(rep.residual_b1, std::abs(u0.c2(i, g.nz) - g.z(g.nz) * eta1[i]));
    }

    const InitialValues iv = initial_values(rho0, u0, eta1, params);
    {
        VectorField w0 = u0;
        for (int k = 0; k <= g.nz; ++k) {
            const double z = g.z(k);
            for (int i = 0; i < g.nx; ++i) w0.c2(i, k) -= z * eta1[i];
        }
        const VectorField aw0 = lame_full_grid(w0, params);
        for (int i = 0; i < g.nx; ++i) {
            for (int k : {0, g.nz}) {
                rep.residual_b2 =
                    std::max(rep.residual_b2, std::abs(iv.g2_0.c1(i, k) - aw0.c1(i, k)));
                rep.residual_b2 =
                    std::max(rep.residual_b2, std::abs(iv.g2_0.c2(i, k) - aw0.c2(i, k)));
            }
        }
    }

    rep.pass_b1 = rep.residual_b1 < tol;
    rep.pass_b2 = rep.residual_b2 < tol;
    return rep;
}

}  // namespace fsi

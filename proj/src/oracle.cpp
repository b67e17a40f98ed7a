#include "fsi/oracle.hpp"

#include <cmath>
#include <functional>

#include "fsi/calculus.hpp"
#include "fsi/geometry.hpp"
#include "fsi/sources.hpp"

namespace fsi {
namespace oracle {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

double ManufacturedCase::eta(double x, double t) const {
    return eta_amp * std::sin(kTwoPi * x / L + 0.7 * t);
}
double ManufacturedCase::eta_t(double x, double t) const {
    return 0.7 * eta_amp * std::cos(kTwoPi * x / L + 0.7 * t);
}

double ManufacturedCase::rho_hat(double x, double z, double t) const {
    const double s = kTwoPi * x / L;
    return 1.5 + 0.25 * std::sin(s) * std::cos(1.3 * z + 0.4 * t) +
           0.1 * z * z * std::cos(s + 0.5 * t);
}
double ManufacturedCase::rho_hat_t(double x, double z, double t) const {
    const double s = kTwoPi * x / L;
    return -0.1 * std::sin(s) * std::sin(1.3 * z + 0.4 * t) -
           0.05 * z * z * std::sin(s + 0.5 * t);
}
double ManufacturedCase::u1_hat(double x, double z, double t) const {
    const double s = kTwoPi * x / L;
    return 0.3 * std::sin(s) * (z + 0.2 * std::cos(t)) + 0.1 * std::cos(s) * z * z;
}
double ManufacturedCase::u1_hat_t(double x, double z, double t) const {
    const double s = kTwoPi * x / L;
    (void)z;
    return -0.06 * std::sin(s) * std::sin(t);
}
double ManufacturedCase::u2_hat(double x, double z, double t) const {
    const double s = kTwoPi * x / L;
    return 0.2 * std::cos(s + 2.0 * t) * std::sin(1.1 * z) + 0.15 * z * std::sin(s);
}
double ManufacturedCase::u2_hat_t(double x, double z, double t) const {
    const double s = kTwoPi * x / L;
    return -0.4 * std::sin(s + 2.0 * t) * std::sin(1.1 * z);
}

double ManufacturedCase::rho_phys(double x, double y, double t) const {
    return rho_hat(x, y / (1.0 + eta(x, t)), t);
}
double ManufacturedCase::u1_phys(double x, double y, double t) const {
    return u1_hat(x, y / (1.0 + eta(x, t)), t);
}
double ManufacturedCase::u2_phys(double x, double y, double t) const {
    return u2_hat(x, y / (1.0 + eta(x, t)), t);
}

namespace {

// Curvilinear differentiation on the fitted moving grid: physical derivatives
// from nodal values and node positions only.
struct FittedGrid {
    ScalarField y_xi;    // ddx of node heights
    ScalarField y_zeta;  // ddz of node heights
    ScalarField ydot;    // node vertical velocity

    ScalarField dx_phys(const ScalarField& f) const {
        const ScalarField f_xi = ddx(f);
        const ScalarField f_zeta = ddz(f);
        ScalarField out(f.grid);
        for (size_t n = 0; n < out.values.size(); ++n)
            out.values[n] =
                f_xi.values[n] - (y_xi.values[n] / y_zeta.values[n]) * f_zeta.values[n];
        return out;
    }
    ScalarField dy_phys(const ScalarField& f) const {
        const ScalarField f_zeta = ddz(f);
        ScalarField out(f.grid);
        for (size_t n = 0; n < out.values.size(); ++n)
            out.values[n] = f_zeta.values[n] / y_zeta.values[n];
        return out;
    }
};

}  // namespace

TransformConsistencyReport transform_consistency(const ManufacturedCase& mc, int n,
                                                 const PhysParams& params, double t0) {
    const Grid grid = make_grid(n, n, mc.L);

    // nodal hatted fields and their analytic time derivatives
    ScalarField rho(grid);
    VectorField u(grid), u_t(grid);
    ScalarField rho_t_node(grid);
    BeamField eta(grid), eta_t(grid);
    for (int i = 0; i < grid.nx; ++i) {
        eta[i] = mc.eta(grid.x(i), t0);
        eta_t[i] = mc.eta_t(grid.x(i), t0);
    }
    for (int k = 0; k <= grid.nz; ++k) {
        const double z = grid.z(k);
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            rho(i, k) = mc.rho_hat(x, z, t0);
            rho_t_node(i, k) = mc.rho_hat_t(x, z, t0);
            u.c1(i, k) = mc.u1_hat(x, z, t0);
            u.c2(i, k) = mc.u2_hat(x, z, t0);
            u_t.c1(i, k) = mc.u1_hat_t(x, z, t0);
            u_t.c2(i, k) = mc.u2_hat_t(x, z, t0);
        }
    }
    const BeamGeometry geo = build_geometry(eta, 0.1);

    // transformed continuity residual with its remainder term
    ScalarField cont_resid(grid);
    {
        const ScalarField rho_x = ddx(rho), rho_z = ddz(rho);
        const ScalarField div_u = divergence(u);
        const ScalarField f1 = compute_F1(rho, u, geo);
        for (int k = 0; k <= grid.nz; ++k) {
            const double z = grid.z(k);
            for (int i = 0; i < grid.nx; ++i) {
                const double wz = (u.c2(i, k) - eta_t[i] * z - u.c1(i, k) * z * geo.eta_x[i]) *
                                  geo.inv_one_plus_eta[i];
                cont_resid(i, k) = rho_t_node(i, k) + u.c1(i, k) * rho_x(i, k) +
                                   wz * rho_z(i, k) + rho(i, k) * div_u(i, k) - f1(i, k);
            }
        }
    }

    // transformed momentum residual, corrected and printed-sign remainders
    VectorField mom_resid(grid);
    VectorField mom_resid_printed(grid);
    {
        const ScalarField P = pressure(rho, params);
        const VectorField grad_p = gradient(P);
        const ScalarField lap1 = laplacian(u.c1), lap2 = laplacian(u.c2);
        const VectorField grad_div = gradient(divergence(u));
        const VectorField f2 = compute_F2(rho, u, u_t, geo, eta_t, params);
        const VectorField f2p =
            compute_F2_terms(rho, u, u_t, geo, eta_t, params, /*printed_sign_variant=*/true)
                .total();
        const double lame = params.mu + params.mu_prime;
        for (int k = 0; k <= grid.nz; ++k) {
            for (int i = 0; i < grid.nx; ++i) {
                const double lhs1 = rho(i, k) * u_t.c1(i, k) - params.mu * lap1(i, k) -
                                    lame * grad_div.c1(i, k) + grad_p.c1(i, k);
                const double lhs2 = rho(i, k) * u_t.c2(i, k) - params.mu * lap2(i, k) -
                                    lame * grad_div.c2(i, k) + grad_p.c2(i, k);
                mom_resid.c1(i, k) = lhs1 - f2.c1(i, k);
                mom_resid.c2(i, k) = lhs2 - f2.c2(i, k);
                mom_resid_printed.c1(i, k) = lhs1 - f2p.c1(i, k);
                mom_resid_printed.c2(i, k) = lhs2 - f2p.c2(i, k);
            }
        }
    }

    TransformConsistencyReport rep;
    for (const auto& v : cont_resid.values)
        rep.continuity_scale = std::max(rep.continuity_scale, std::abs(v));
    rep.momentum_scale = max_abs(mom_resid);

    // ---- route A: Cartesian differencing of the analytic physical samplers ----
    {
        const double hx = grid.dx;
        const double hy = grid.dz;
        const double ht = std::min(grid.dx, grid.dz);
        auto rho_s = [&](double x, double y, double t) { return mc.rho_phys(x, y, t); };
        auto u1_s = [&](double x, double y, double t) { return mc.u1_phys(x, y, t); };
        auto u2_s = [&](double x, double y, double t) { return mc.u2_phys(x, y, t); };
        auto P_s = [&](double x, double y, double t) {
            return params.a * std::pow(mc.rho_phys(x, y, t), params.gamma) - params.p_ext();
        };
        auto div_s = [&](double x, double y, double t) {
            return (u1_s(x + hx, y, t) - u1_s(x - hx, y, t)) / (2.0 * hx) +
                   (u2_s(x, y + hy, t) - u2_s(x, y - hy, t)) / (2.0 * hy);
        };

        for (int k = 0; k <= grid.nz; ++k) {
            const double z = grid.z(k);
            for (int i = 0; i < grid.nx; ++i) {
                const double x = grid.x(i);
                const double y = z * geo.one_plus_eta[i];
                const double h = geo.one_plus_eta[i];

                const double rc =
                    (rho_s(x, y, t0 + ht) - rho_s(x, y, t0 - ht)) / (2.0 * ht) +
                    (rho_s(x + hx, y, t0) * u1_s(x + hx, y, t0) -
                     rho_s(x - hx, y, t0) * u1_s(x - hx, y, t0)) /
                        (2.0 * hx) +
                    (rho_s(x, y + hy, t0) * u2_s(x, y + hy, t0) -
                     rho_s(x, y - hy, t0) * u2_s(x, y - hy, t0)) /
                        (2.0 * hy);
                rep.cart_continuity_disc =
                    std::max(rep.cart_continuity_disc, std::abs(cont_resid(i, k) - rc));

                for (int c = 0; c < 2; ++c) {
                    std::function<double(double, double, double)> us =
                        (c == 0) ? std::function<double(double, double, double)>(u1_s)
                                 : std::function<double(double, double, double)>(u2_s);
                    const double val = us(x, y, t0);
                    const double ut = (us(x, y, t0 + ht) - us(x, y, t0 - ht)) / (2.0 * ht);
                    const double uxp = us(x + hx, y, t0), uxm = us(x - hx, y, t0);
                    const double uyp = us(x, y + hy, t0), uym = us(x, y - hy, t0);
                    const double ux = (uxp - uxm) / (2.0 * hx);
                    const double uy = (uyp - uym) / (2.0 * hy);
                    const double uxx = (uxp - 2.0 * val + uxm) / (hx * hx);
                    const double uyy = (uyp - 2.0 * val + uym) / (hy * hy);
                    const double graddiv =
                        (c == 0) ? (div_s(x + hx, y, t0) - div_s(x - hx, y, t0)) / (2.0 * hx)
                                 : (div_s(x, y + hy, t0) - div_s(x, y - hy, t0)) / (2.0 * hy);
                    const double gradP =
                        (c == 0) ? (P_s(x + hx, y, t0) - P_s(x - hx, y, t0)) / (2.0 * hx)
                                 : (P_s(x, y + hy, t0) - P_s(x, y - hy, t0)) / (2.0 * hy);
                    const double rm =
                        rho_s(x, y, t0) * ut +
                        rho_s(x, y, t0) * (u1_s(x, y, t0) * ux + u2_s(x, y, t0) * uy) -
                        params.mu * (uxx + uyy) - (params.mu + params.mu_prime) * graddiv +
                        gradP;
                    const double trans = (c == 0) ? mom_resid.c1(i, k) : mom_resid.c2(i, k);
                    const double disc = std::abs(trans - h * rm);
                    if (c == 0)
                        rep.cart_momentum_x_disc = std::max(rep.cart_momentum_x_disc, disc);
                    else
                        rep.cart_momentum_z_disc = std::max(rep.cart_momentum_z_disc, disc);
                }
            }
        }
    }

    // ---- route B: curvilinear differencing on the fitted moving grid ----
    {
        FittedGrid fg;
        ScalarField ypos(grid);
        fg.ydot = ScalarField(grid);
        for (int k = 0; k <= grid.nz; ++k)
            for (int i = 0; i < grid.nx; ++i) {
                ypos(i, k) = grid.z(k) * (1.0 + eta[i]);
                fg.ydot(i, k) = grid.z(k) * eta_t[i];
            }
        fg.y_xi = ddx(ypos);
        fg.y_zeta = ddz(ypos);

        const ScalarField du1dx = fg.dx_phys(u.c1), du1dy = fg.dy_phys(u.c1);
        const ScalarField du2dx = fg.dx_phys(u.c2), du2dy = fg.dy_phys(u.c2);
        const ScalarField drdx = fg.dx_phys(rho), drdy = fg.dy_phys(rho);
        const ScalarField P = pressure(rho, params);
        const ScalarField dPdx = fg.dx_phys(P), dPdy = fg.dy_phys(P);

        ScalarField divu(grid);
        for (size_t m = 0; m < divu.values.size(); ++m)
            divu.values[m] = du1dx.values[m] + du2dy.values[m];
        const ScalarField ddivdx = fg.dx_phys(divu), ddivdy = fg.dy_phys(divu);

        // continuity: (rho_t at fixed node) - ydot*rho_y + u.grad(rho) + rho*div(u)
        for (size_t m = 0; m < divu.values.size(); ++m) {
            const double rc = rho_t_node.values[m] - fg.ydot.values[m] * drdy.values[m] +
                              u.c1.values[m] * drdx.values[m] +
                              u.c2.values[m] * drdy.values[m] + rho.values[m] * divu.values[m];
            rep.fitted_continuity_disc =
                std::max(rep.fitted_continuity_disc, std::abs(cont_resid.values[m] - rc));
        }

        const double lame = params.mu + params.mu_prime;
        for (int c = 0; c < 2; ++c) {
            const ScalarField& uct = c == 0 ? u_t.c1 : u_t.c2;
            const ScalarField& ducdx = c == 0 ? du1dx : du2dx;
            const ScalarField& ducdy = c == 0 ? du1dy : du2dy;
            const ScalarField ducdxx = fg.dx_phys(ducdx);
            const ScalarField ducdyy = fg.dy_phys(ducdy);
            const ScalarField& gdiv = c == 0 ? ddivdx : ddivdy;
            const ScalarField& gP = c == 0 ? dPdx : dPdy;
            for (int k = 0; k <= grid.nz; ++k) {
                for (int i = 0; i < grid.nx; ++i) {
                    const double h = geo.one_plus_eta[i];
                    const double ut_fixed_y =
                        uct(i, k) - fg.ydot(i, k) * ducdy(i, k);
                    const double rm = rho(i, k) * ut_fixed_y +
                                      rho(i, k) * (u.c1(i, k) * ducdx(i, k) +
                                                   u.c2(i, k) * ducdy(i, k)) -
                                      params.mu * (ducdxx(i, k) + ducdyy(i, k)) -
                                      lame * gdiv(i, k) + gP(i, k);
                    const double trans = (c == 0) ? mom_resid.c1(i, k) : mom_resid.c2(i, k);
                    const double trans_printed =
                        (c == 0) ? mom_resid_printed.c1(i, k) : mom_resid_printed.c2(i, k);
                    const double disc = std::abs(trans - h * rm);
                    if (c == 0)
                        rep.fitted_momentum_x_disc = std::max(rep.fitted_momentum_x_disc, disc);
                    else
                        rep.fitted_momentum_z_disc = std::max(rep.fitted_momentum_z_disc, disc);
                    rep.f2_printed_extra =
                        std::max(rep.f2_printed_extra, std::abs(trans_printed - h * rm));
                }
            }
        }
    }

    const auto f3cmp = compare_F3(rho, u, geo, params);
    rep.f3_printed_vs_fp = f3cmp.max_abs_diff;
    return rep;
}

std::vector<ScalarField> upwind_solve_window(const ScalarField& sigma0,
                                             std::span<const VectorField> w_levels,
                                             std::span<const ScalarField> g1_levels,
                                             const Grid& grid, double dt, double cfl) {
    if (w_levels.size() != g1_levels.size())
        throw ShapeMismatch("upwind_solve_window: trajectory lengths differ");
    const int nlev = static_cast<int>(w_levels.size());

    std::vector<ScalarField> out;
    out.reserve(static_cast<size_t>(nlev));
    out.push_back(sigma0);

    ScalarField sig = sigma0;
    for (int n = 1; n < nlev; ++n) {
        const VectorField& w_lo = w_levels[static_cast<size_t>(n - 1)];
        const VectorField& w_hi = w_levels[static_cast<size_t>(n)];
        const ScalarField& g_lo = g1_levels[static_cast<size_t>(n - 1)];
        const ScalarField& g_hi = g1_levels[static_cast<size_t>(n)];

        const double wmax1 = std::max(max_abs(w_lo.c1), max_abs(w_hi.c1));
        const double wmax2 = std::max(max_abs(w_lo.c2), max_abs(w_hi.c2));
        double dt_cfl = dt;
        if (wmax1 > 0.0) dt_cfl = std::min(dt_cfl, cfl * grid.dx / wmax1);
        if (wmax2 > 0.0) dt_cfl = std::min(dt_cfl, cfl * grid.dz / wmax2);
        const int nsub = std::max(1, static_cast<int>(std::ceil(dt / dt_cfl)));
        const double dts = dt / nsub;

        for (int sub = 0; sub < nsub; ++sub) {
            const double frac = (sub + 0.5) / nsub;  // midpoint-in-time data
            ScalarField next(grid);
            for (int k = 0; k <= grid.nz; ++k) {
                for (int i = 0; i < grid.nx; ++i) {
                    const int ip = (i + 1) % grid.nx;
                    const int im = (i + grid.nx - 1) % grid.nx;
                    const double w1 = (1.0 - frac) * w_lo.c1(i, k) + frac * w_hi.c1(i, k);
                    const double w2 = (1.0 - frac) * w_lo.c2(i, k) + frac * w_hi.c2(i, k);
                    const double g = (1.0 - frac) * g_lo(i, k) + frac * g_hi(i, k);

                    const double dxm = (sig(i, k) - sig(im, k)) / grid.dx;
                    const double dxp = (sig(ip, k) - sig(i, k)) / grid.dx;
                    double dzm, dzp;
                    if (k == 0) {
                        dzm = dzp = (sig(i, 1) - sig(i, 0)) / grid.dz;
                    } else if (k == grid.nz) {
                        dzm = dzp = (sig(i, k) - sig(i, k - 1)) / grid.dz;
                    } else {
                        dzm = (sig(i, k) - sig(i, k - 1)) / grid.dz;
                        dzp = (sig(i, k + 1) - sig(i, k)) / grid.dz;
                    }
                    const double adv = (w1 > 0.0 ? w1 * dxm : w1 * dxp) +
                                       (w2 > 0.0 ? w2 * dzm : w2 * dzp);
                    next(i, k) = sig(i, k) + dts * (g - adv);
                }
            }
            sig = std::move(next);
        }
        out.push_back(sig);
    }
    return out;
}

}  // namespace oracle
}  // namespace fsi

#include "fsi/transport.hpp"

#include <algorithm>
#include <cmath>

#include "fsi/interp.hpp"

namespace fsi {
namespace transport {

namespace {

inline double wrap_x(double x, double L) {
    double r = std::fmod(x, L);
    return r < 0.0 ? r + L : r;
}

inline std::array<double, 2> sample_velocity(const VectorField& w, double x, double z) {
    return {bilinear_sample(w.c1, x, z), bilinear_sample(w.c2, x, z)};
}

}  // namespace

CharacteristicFootprints backtrack(std::span<const VectorField> w_levels, int from_t, int to_t,
                                   const Grid& grid, double dt) {
    if (from_t < to_t) throw Error("backtrack: from_t must be >= to_t");
    if (from_t >= static_cast<int>(w_levels.size()))
        throw ShapeMismatch("backtrack: velocity trajectory too short");

    const int nlev = from_t - to_t + 1;
    CharacteristicFootprints fp;
    fp.from_level = from_t;
    fp.to_level = to_t;
    fp.points.assign(static_cast<size_t>(nlev),
                     std::vector<std::array<double, 2>>(static_cast<size_t>(grid.num_nodes())));

    // seed at the arrival level
    for (int k = 0; k <= grid.nz; ++k)
        for (int i = 0; i < grid.nx; ++i)
            fp.points[static_cast<size_t>(nlev - 1)][static_cast<size_t>(k) * grid.nx + i] = {
                grid.x(i), grid.z(k)};

    for (int m = from_t; m > to_t; --m) {
        const auto& cur = fp.points[static_cast<size_t>(m - to_t)];
        auto& next = fp.points[static_cast<size_t>(m - to_t - 1)];
        const VectorField& w_hi = w_levels[static_cast<size_t>(m)];
        const VectorField& w_lo = w_levels[static_cast<size_t>(m - 1)];
        for (size_t n = 0; n < cur.size(); ++n) {
            const auto [x, z] = cur[n];
            const auto a = sample_velocity(w_hi, x, z);
            const double xh = wrap_x(x - 0.5 * dt * a[0], grid.length);
            const double zh = std::clamp(z - 0.5 * dt * a[1], 0.0, 1.0);
            const auto b_hi = sample_velocity(w_hi, xh, zh);
            const auto b_lo = sample_velocity(w_lo, xh, zh);
            const double bx = 0.5 * (b_hi[0] + b_lo[0]);
            const double bz = 0.5 * (b_hi[1] + b_lo[1]);
            next[n] = {wrap_x(x - dt * bx, grid.length), std::clamp(z - dt * bz, 0.0, 1.0)};
        }
    }
    return fp;
}

std::vector<ScalarField> solve_window(const ScalarField& sigma0,
                                      std::span<const VectorField> w_levels,
                                      std::span<const ScalarField> g1_levels, const Grid& grid,
                                      double dt, bool monotone) {
    if (w_levels.size() != g1_levels.size())
        throw ShapeMismatch("transport::solve_window: trajectory lengths differ");
    const int nlev = static_cast<int>(w_levels.size());
    require_same_grid(sigma0.grid, grid, "transport::solve_window");

    std::vector<ScalarField> out;
    out.reserve(static_cast<size_t>(nlev));
    out.push_back(sigma0);

    for (int n = 1; n < nlev; ++n) {
        const CharacteristicFootprints fp = backtrack(w_levels, n, 0, grid, dt);
        ScalarField sig(grid);
        for (int k = 0; k <= grid.nz; ++k) {
            for (int i = 0; i < grid.nx; ++i) {
                const size_t node = static_cast<size_t>(k) * grid.nx + i;
                const auto [x0, z0] = fp.points[0][node];
                double val = cubic_sample(sigma0, x0, z0, monotone);
                // trapezoid along the characteristic over the window levels
                double integral = 0.0;
                for (int m = 1; m <= n; ++m) {
                    const auto [xm, zm] = fp.points[static_cast<size_t>(m)][node];
                    const auto [xp, zp] = fp.points[static_cast<size_t>(m - 1)][node];
                    const double g_hi = cubic_sample(g1_levels[static_cast<size_t>(m)], xm, zm);
                    const double g_lo = cubic_sample(g1_levels[static_cast<size_t>(m - 1)], xp, zp);
                    integral += 0.5 * dt * (g_hi + g_lo);
                }
                sig(i, k) = val + integral;
            }
        }
        out.push_back(std::move(sig));
    }
    return out;
}

DensityReport check_density_bounds(const ScalarField& sigma, const PhysParams& params, double m,
                                   double M) {
    DensityReport rep;
    rep.min_density = sigma.values[0] + params.rho_bar;
    rep.max_density = rep.min_density;
    for (double v : sigma.values) {
        const double rho = v + params.rho_bar;
        rep.min_density = std::min(rep.min_density, rho);
        rep.max_density = std::max(rep.max_density, rho);
    }
    rep.pass = (rep.min_density >= 0.5 * m) && (rep.max_density <= 2.0 * M);
    return rep;
}

}  // namespace transport
}  // namespace fsi

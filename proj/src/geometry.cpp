#include "fsi/geometry.hpp"

#include <cmath>

#include "fsi/interp.hpp"

namespace fsi {

BeamGeometry build_geometry(const BeamField& eta, double delta0) {
    if (!(delta0 > 0.0 && delta0 < 1.0))
        throw ValidationError("delta0", "must lie in (0,1)");
    BeamGeometry geo;
    geo.eta = eta;
    geo.eta_x = ddx(eta);
    geo.eta_xx = d2dx2(eta);
    geo.one_plus_eta = BeamField(eta.grid);
    geo.inv_one_plus_eta = BeamField(eta.grid);
    geo.delta0 = delta0;

    double min_h = 1.0 + eta[0];
    int argmin = 0;
    for (int i = 0; i < eta.grid.nx; ++i) {
        const double h = 1.0 + eta[i];
        geo.one_plus_eta[i] = h;
        if (h < min_h) {
            min_h = h;
            argmin = i;
        }
    }
    geo.min_one_plus_eta = min_h;
    if (min_h < delta0) throw AdmissibilityViolated(min_h, argmin);
    for (int i = 0; i < eta.grid.nx; ++i) geo.inv_one_plus_eta[i] = 1.0 / geo.one_plus_eta[i];
    return geo;
}

std::array<double, 2> map_to_physical(double x, double z, const BeamGeometry& geometry) {
    const double h = 1.0 + beam_sample_linear(geometry.eta, x);
    return {x, z * h};
}

std::array<double, 2> normal_vector(double eta_x_value) {
    const double norm = std::sqrt(1.0 + eta_x_value * eta_x_value);
    return {-eta_x_value / norm, 1.0 / norm};
}

ScalarField jacobian_weight(const BeamGeometry& geometry) {
    const Grid& g = geometry.eta.grid;
    ScalarField out(g);
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i < g.nx; ++i) out(i, k) = geometry.one_plus_eta[i];
    return out;
}

ScalarField pull_back_field(const std::function<double(double, double)>& physical_sampler,
                            const BeamGeometry& geometry, const Grid& grid) {
    ScalarField out(grid);
    for (int k = 0; k <= grid.nz; ++k) {
        const double z = grid.z(k);
        for (int i = 0; i < grid.nx; ++i)
            out(i, k) = physical_sampler(grid.x(i), z * geometry.one_plus_eta[i]);
    }
    return out;
}

}  // namespace fsi

#pragma once

#include <functional>

#include "fsi/calculus.hpp"
#include "fsi/grid.hpp"

namespace fsi {

/// Beam displacement plus the derived fields every transformed-equation term
/// needs. eta_x = ddx(eta), eta_xx = d2dx2(eta). Immutable after construction;
/// construction fails unless 1 + eta >= delta0 at every node.
struct BeamGeometry {
    BeamField eta;
    BeamField eta_x;
    BeamField eta_xx;
    BeamField one_plus_eta;
    BeamField inv_one_plus_eta;
    double delta0 = 0.0;
    double min_one_plus_eta = 0.0;
};

BeamGeometry build_geometry(const BeamField& eta, double delta0);

/// Inverse map of the flattening transformation: (x, z) -> (x, z*(1+eta(x)))
/// with eta sampled by periodic linear interpolation.
std::array<double, 2> map_to_physical(double x, double z, const BeamGeometry& geometry);

/// Outward unit normal of the moving interface for a given slope value.
std::array<double, 2> normal_vector(double eta_x_value);

/// Area element of the flattening map: column weight (1+eta(x)), constant in z.
ScalarField jacobian_weight(const BeamGeometry& geometry);

/// Sample a function defined on the moving domain at the reference nodes.
ScalarField pull_back_field(const std::function<double(double, double)>& physical_sampler,
                            const BeamGeometry& geometry, const Grid& grid);

}  // namespace fsi

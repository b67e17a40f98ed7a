#pragma once

#include "fsi/grid.hpp"

namespace fsi {

/// One time level of the homogeneous-Dirichlet unknowns:
/// sigma = rho_hat - rho_bar, w = v - z*eta_t*e2 (vanishes on both walls),
/// and the beam displacement/velocity pair.
struct CoupledState {
    ScalarField sigma;
    VectorField w;
    BeamField eta;
    BeamField eta_t;
    double t = 0.0;
};

}  // namespace fsi

#pragma once

#include <array>
#include <span>
#include <vector>

#include "fsi/grid.hpp"
#include "fsi/params.hpp"

namespace fsi {
namespace transport {

// Backtracking and interpolation are independent per arrival node (a pure map
// over nodes with read-only trajectories); the current implementation runs it
// sequentially for determinism.

/// Characteristic departure points, one per grid node per tracked time level:
/// points[m][node] is the foot of the characteristic at level to_t+m that
/// arrives at the node at level from_t. x reduced modulo L, z clamped to [0,1].
struct CharacteristicFootprints {
    int from_level = 0;
    int to_level = 0;
    std::vector<std::vector<std::array<double, 2>>> points;
};

/// Integrate the characteristic ODE backward from level from_t to level to_t
/// with midpoint (RK2) substeps of size dt, sampling the velocity bilinearly
/// (periodic in x, clamped in z).
CharacteristicFootprints backtrack(std::span<const VectorField> w_levels, int from_t, int to_t,
                                   const Grid& grid, double dt);

/// Representation-formula solve over one window: for each level, backtrack to
/// the window start, sample sigma0 by cubic interpolation at the foot, and
/// accumulate the source line integral with the trapezoid rule along the
/// characteristic. monotone enables clamped interpolation of sigma0.
std::vector<ScalarField> solve_window(const ScalarField& sigma0,
                                      std::span<const VectorField> w_levels,
                                      std::span<const ScalarField> g1_levels, const Grid& grid,
                                      double dt, bool monotone = false);

struct DensityReport {
    double min_density = 0.0;
    double max_density = 0.0;
    bool pass = false;
};

/// Corridor check m/2 <= sigma + rho_bar <= 2M.
DensityReport check_density_bounds(const ScalarField& sigma, const PhysParams& params, double m,
                                   double M);

}  // namespace transport
}  // namespace fsi

#pragma once

#include <Eigen/Sparse>
#include <span>
#include <vector>

#include "fsi/grid.hpp"
#include "fsi/params.hpp"

namespace fsi {
namespace momentum {

/// Discrete -mu*Lap - (mu+mu')*grad div on the two velocity components,
/// periodic in x, Dirichlet rows at z=0 and z=1 eliminated. Symmetric positive
/// definite on the interior unknowns. Immutable after assembly.
class LameOperator {
  public:
    LameOperator(const Grid& grid, const PhysParams& params);

    const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }
    const Grid& grid() const { return grid_; }
    int num_unknowns() const { return 2 * grid_.nx * (grid_.nz - 1); }

    /// interior unknown index of component c at node (i,k), k in [1, nz-1]
    int index(int c, int i, int k) const { return ((k - 1) * grid_.nx + i) * 2 + c; }

    Eigen::VectorXd restrict_interior(const VectorField& w) const;
    VectorField prolong_with_zero_walls(const Eigen::VectorXd& x) const;

    /// apply to a full field (walls treated as zero); wall rows of the result are zero
    VectorField apply(const VectorField& w) const;

  private:
    Grid grid_;
    Eigen::SparseMatrix<double> matrix_;
};

/// One implicit Euler step of (sigma+rho_bar) w_t + A w = g2 with the
/// coefficient frozen at the supplied sigma. Solves
///   (diag(sigma+rho_bar)/dt + A) w_next = diag(sigma+rho_bar) w_n / dt + g2
/// by diagonally preconditioned conjugate gradients to relative residual
/// lin_tol; iteration cap 10*sqrt(#unknowns). Wall rows of the result are
/// exactly zero.
VectorField step(const VectorField& w_n, const ScalarField& sigma, const VectorField& g2,
                 double dt, const LameOperator& op, const PhysParams& params,
                 const DensityBounds& bounds, double lin_tol);

/// Level-by-level time loop; step n -> n+1 freezes the coefficient and source
/// at level n+1 of the supplied trajectories.
std::vector<VectorField> solve_window(const VectorField& w0,
                                      std::span<const ScalarField> sigma_levels,
                                      std::span<const VectorField> g2_levels, double dt,
                                      const LameOperator& op, const PhysParams& params,
                                      const DensityBounds& bounds, double lin_tol);

}  // namespace momentum
}  // namespace fsi

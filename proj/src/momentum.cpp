#include "fsi/momentum.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <cmath>

namespace fsi {
namespace momentum {

LameOperator::LameOperator(const Grid& grid, const PhysParams& params) : grid_(grid) {
    const int n = num_unknowns();
    const double mu = params.mu;
    const double lame = params.mu + params.mu_prime;
    const double ax = 1.0 / (grid.dx * grid.dx);
    const double az = 1.0 / (grid.dz * grid.dz);
    const double axz = 1.0 / (4.0 * grid.dx * grid.dz);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(n) * 9);

    auto add = [&](int row, int c, int i, int k, double v) {
        if (k <= 0 || k >= grid_.nz) return;  // Dirichlet rows eliminated
        const int col = index(c, (i % grid_.nx + grid_.nx) % grid_.nx, k);
        trip.emplace_back(row, col, v);
    };

    for (int k = 1; k < grid_.nz; ++k) {
        for (int i = 0; i < grid_.nx; ++i) {
            // component 1 row: -mu*Lap(w1) - lame*(w1_xx + w2_xz)
            {
                const int row = index(0, i, k);
                const double cx = mu + lame;  // coefficient of w1_xx
                add(row, 0, i, k, 2.0 * cx * ax + 2.0 * mu * az);
                add(row, 0, i + 1, k, -cx * ax);
                add(row, 0, i - 1, k, -cx * ax);
                add(row, 0, i, k + 1, -mu * az);
                add(row, 0, i, k - 1, -mu * az);
                add(row, 1, i + 1, k + 1, -lame * axz);
                add(row, 1, i - 1, k - 1, -lame * axz);
                add(row, 1, i + 1, k - 1, lame * axz);
                add(row, 1, i - 1, k + 1, lame * axz);
            }
            // component 2 row: -mu*Lap(w2) - lame*(w1_xz + w2_zz)
            {
                const int row = index(1, i, k);
                const double cz = mu + lame;  // coefficient of w2_zz
                add(row, 1, i, k, 2.0 * mu * ax + 2.0 * cz * az);
                add(row, 1, i + 1, k, -mu * ax);
                add(row, 1, i - 1, k, -mu * ax);
                add(row, 1, i, k + 1, -cz * az);
                add(row, 1, i, k - 1, -cz * az);
                add(row, 0, i + 1, k + 1, -lame * axz);
                add(row, 0, i - 1, k - 1, -lame * axz);
                add(row, 0, i + 1, k - 1, lame * axz);
                add(row, 0, i - 1, k + 1, lame * axz);
            }
        }
    }
    matrix_.resize(n, n);
    matrix_.setFromTriplets(trip.begin(), trip.end());
    matrix_.makeCompressed();
}

Eigen::VectorXd LameOperator::restrict_interior(const VectorField& w) const {
    Eigen::VectorXd x(num_unknowns());
    for (int k = 1; k < grid_.nz; ++k) {
        for (int i = 0; i < grid_.nx; ++i) {
            x[index(0, i, k)] = w.c1(i, k);
            x[index(1, i, k)] = w.c2(i, k);
        }
    }
    return x;
}

VectorField LameOperator::prolong_with_zero_walls(const Eigen::VectorXd& x) const {
    VectorField w(grid_);
    for (int k = 1; k < grid_.nz; ++k) {
        for (int i = 0; i < grid_.nx; ++i) {
            w.c1(i, k) = x[index(0, i, k)];
            w.c2(i, k) = x[index(1, i, k)];
        }
    }
    return w;
}

VectorField LameOperator::apply(const VectorField& w) const {
    const Eigen::VectorXd y = matrix_ * restrict_interior(w);
    return prolong_with_zero_walls(y);
}

VectorField step(const VectorField& w_n, const ScalarField& sigma, const VectorField& g2,
                 double dt, const LameOperator& op, const PhysParams& params,
                 const DensityBounds& bounds, double lin_tol) {
    const Grid& g = op.grid();
    require_same_grid(g, w_n.grid(), "momentum::step");
    require_same_grid(g, sigma.grid, "momentum::step");
    require_same_grid(g, g2.grid(), "momentum::step");
    if (!(lin_tol > 0.0)) throw ValidationError("lin_tol", "must be > 0");

    // coefficient corridor check
    for (double s : sigma.values) {
        const double rho = s + params.rho_bar;
        if (!(rho >= 0.5 * bounds.m && rho <= 2.0 * bounds.M))
            throw CoefficientOutOfBounds("momentum coefficient outside [m/2, 2M]: " +
                                         std::to_string(rho));
    }

    const int n = op.num_unknowns();
    Eigen::VectorXd mass(n);
    for (int k = 1; k < g.nz; ++k) {
        for (int i = 0; i < g.nx; ++i) {
            const double rho = sigma(i, k) + params.rho_bar;
            mass[op.index(0, i, k)] = rho / dt;
            mass[op.index(1, i, k)] = rho / dt;
        }
    }

    Eigen::SparseMatrix<double> A = op.matrix();
    for (int r = 0; r < n; ++r) A.coeffRef(r, r) += mass[r];

    const Eigen::VectorXd wn = op.restrict_interior(w_n);
    const Eigen::VectorXd rhs = mass.cwiseProduct(wn) + op.restrict_interior(g2);

    if (rhs.norm() == 0.0) return VectorField(g);  // exact zero stays zero

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(lin_tol);
    cg.setMaxIterations(static_cast<int>(10.0 * std::sqrt(static_cast<double>(n))) + 1);
    cg.compute(A);
    const Eigen::VectorXd x = cg.solveWithGuess(rhs, wn);
    if (cg.info() != Eigen::Success && cg.error() > lin_tol)
        throw LinearSolveDiverged("momentum step: CG hit the iteration cap at relative residual " +
                                  std::to_string(cg.error()));
    return op.prolong_with_zero_walls(x);
}

std::vector<VectorField> solve_window(const VectorField& w0,
                                      std::span<const ScalarField> sigma_levels,
                                      std::span<const VectorField> g2_levels, double dt,
                                      const LameOperator& op, const PhysParams& params,
                                      const DensityBounds& bounds, double lin_tol) {
    if (sigma_levels.size() != g2_levels.size())
        throw ShapeMismatch("momentum::solve_window: trajectory lengths differ");
    std::vector<VectorField> out;
    out.reserve(sigma_levels.size());
    out.push_back(w0);
    for (size_t nlev = 1; nlev < sigma_levels.size(); ++nlev)
        out.push_back(step(out.back(), sigma_levels[nlev], g2_levels[nlev], dt, op, params, bounds,
                           lin_tol));
    return out;
}

}  // namespace momentum
}  // namespace fsi

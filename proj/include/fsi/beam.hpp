#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "fsi/grid.hpp"
#include "fsi/params.hpp"

namespace fsi {
namespace beam {

/// First-order-system matrix of one Fourier mode with wavenumber kappa = 2*pi*j/L:
/// [[0, 1], [-alpha*kappa^4 - beta*kappa^2, -delta*kappa^2]].
Eigen::Matrix2d mode_matrix(int j, const PhysParams& params);

/// Per-mode Crank-Nicolson propagators for a fixed step size, cached per
/// (grid, dt). The Nyquist bin (even nx) uses |kappa| = pi*nx/L; only even
/// powers of kappa enter, so the sign convention is immaterial.
class BeamModeSystem {
  public:
    BeamModeSystem(const Grid& grid, const PhysParams& params, double dt);

    const Grid& grid() const { return grid_; }
    double dt() const { return dt_; }
    /// (I - dt/2 A)^-1 (I + dt/2 A) for DFT bin j
    const Eigen::Matrix2d& propagator(int bin) const { return prop_[static_cast<size_t>(bin)]; }
    /// (I - dt/2 A)^-1, used to inject the half-step source
    const Eigen::Matrix2d& resolvent(int bin) const { return resolv_[static_cast<size_t>(bin)]; }

  private:
    Grid grid_;
    double dt_;
    std::vector<Eigen::Matrix2d> prop_;
    std::vector<Eigen::Matrix2d> resolv_;
};

/// One Crank-Nicolson step with the source frozen at its half-step value.
/// The output is truncated to its real part; the discarded imaginary residue
/// is below 1e-13 for admissible inputs and is reported via *imag_residue.
std::pair<BeamField, BeamField> beam_step(const BeamField& eta_n, const BeamField& eta_t_n,
                                          const BeamField& g3_half, double dt,
                                          const PhysParams& params,
                                          double* imag_residue = nullptr);

struct BeamTrajectory {
    std::vector<BeamField> eta;
    std::vector<BeamField> eta_t;
    std::vector<BeamField> eta_tt;  // recovered algebraically from the equation
    double max_imag_residue = 0.0;
};

/// Steps through the window; the source at the half step is the average of the
/// two adjacent levels of g3_levels. eta_tt at each level is reconstructed
/// from the equation (never by differencing eta_t).
BeamTrajectory solve_window(const BeamField& eta0, const BeamField& eta1_field,
                            std::span<const BeamField> g3_levels, double dt,
                            const PhysParams& params);

/// eta_tt = g3 + beta*eta_xx + delta*eta_t_xx - alpha*eta_xxxx, evaluated spectrally.
BeamField eta_tt_from_equation(const BeamField& eta, const BeamField& eta_t, const BeamField& g3,
                               const PhysParams& params);

/// Modal beam energy 1/2||eta_t||^2 + beta/2||eta_x||^2 + alpha/2||eta_xx||^2
/// (discrete Parseval form; exactly non-increasing under the unforced
/// Crank-Nicolson step).
double beam_energy(const BeamField& eta, const BeamField& eta_t, const PhysParams& params);

}  // namespace beam
}  // namespace fsi

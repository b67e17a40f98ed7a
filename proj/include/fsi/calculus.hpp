#pragma once

#include <complex>
#include <vector>

#include "fsi/grid.hpp"

// All operations here are pure functions of their inputs; fields are plain
// data, so callers may evaluate independent operations concurrently.

namespace fsi {

/// d/dx, second-order centered with periodic wrap.
ScalarField ddx(const ScalarField& f);

/// d/dz, second-order: centered in the interior, one-sided 3-point at z=0 and z=1
/// (exact on polynomials of degree <= 2, so traces keep full order).
ScalarField ddz(const ScalarField& f);

/// d2/dx2, second-order centered, periodic.
ScalarField d2dx2(const ScalarField& f);

/// d2/dz2, centered interior, one-sided 4-point second-order at the walls.
ScalarField d2dz2(const ScalarField& f);

/// d2/dxdz = ddx(ddz(f)); stencils commute since ddx acts along rows.
ScalarField d2dxdz(const ScalarField& f);

/// 5-point Laplacian assembled from the direct second-difference stencils.
ScalarField laplacian(const ScalarField& f);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);

// beam-line variants
BeamField ddx(const BeamField& f);
BeamField d2dx2(const BeamField& f);

/// Unnormalized forward DFT along x: mode 0 of f==1 is nx.
/// Index j of the returned array carries wavenumber kappa = 2*pi*jsigned/L with
/// jsigned = j for j <= nx/2 and j - nx otherwise (Nyquist |kappa| = pi*nx/L).
std::vector<std::complex<double>> dft_x(const BeamField& f);

/// Inverse of dft_x (divides by nx). Truncates to the real part; the discarded
/// imaginary residue is reported through *imag_residue when non-null.
BeamField idft_x(const std::vector<std::complex<double>>& modes, const Grid& grid,
                 double* imag_residue = nullptr);

/// Signed wavenumber of DFT bin j (see dft_x).
double wavenumber(int bin, const Grid& grid);

/// Spectral x-derivative of given order (odd orders zero the Nyquist bin).
BeamField spectral_derivative(const BeamField& f, int order);

/// Quadrature of f*wgt over the rectangle: exact-periodic rectangle rule in x,
/// trapezoid in z.
double integrate_weighted(const ScalarField& f, const ScalarField& wgt);

/// Rectangle-rule integral over the beam line.
double integrate_line(const BeamField& f);

double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);
double l2_norm(const BeamField& f);

}  // namespace fsi

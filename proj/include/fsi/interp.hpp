#pragma once

#include "fsi/grid.hpp"

namespace fsi {

/// Bilinear sample: periodic in x, z clamped to [0,1].
double bilinear_sample(const ScalarField& f, double x, double z);

/// Tensor-product 4-point Lagrange cubic: periodic in x, stencil shifted
/// inward near the z walls. With monotone=true the result is clamped to the
/// min/max of the 16 stencil values.
double cubic_sample(const ScalarField& f, double x, double z, bool monotone = false);

double beam_sample_linear(const BeamField& f, double x);
double beam_sample_cubic(const BeamField& f, double x);

}  // namespace fsi

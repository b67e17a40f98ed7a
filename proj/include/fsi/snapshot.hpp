#pragma once

#include <string>

#include "fsi/state.hpp"

namespace fsi {

/// Text snapshot: `#`-prefixed header lines carrying t, Nx, Nz, L and a name
/// per field block (sigma, w1, w2, eta, eta_t); values row-major with x
/// fastest at 17 significant digits, so the round trip is bitwise-faithful.
/// Writes go to a temp file renamed into place.
void write_snapshot(const CoupledState& state, const std::string& path);

/// Read a snapshot; when expected_grid is non-null the header must match it.
CoupledState read_snapshot(const std::string& path, const Grid* expected_grid = nullptr);

}  // namespace fsi

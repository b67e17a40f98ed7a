#pragma once

#include <vector>

#include "fsi/errors.hpp"

namespace fsi {

/// Reference rectangle: x-periodic with nx nodes (no duplicated endpoint),
/// z in [0,1] with nz cells, so nz+1 z-nodes including both walls.
struct Grid {
    int nx = 0;
    int nz = 0;
    double length = 0.0;  // channel period L
    double dx = 0.0;      // L / nx
    double dz = 0.0;      // 1 / nz

    double x(int i) const { return i * dx; }
    double z(int k) const { return k * dz; }
    int num_nodes() const { return nx * (nz + 1); }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.nx == b.nx && a.nz == b.nz && a.length == b.length;
    }
};

Grid make_grid(int nx, int nz, double length);

/// Nodal scalar samples on the reference rectangle.
/// Storage is row-major with x as the fastest index: values[k*nx + i].
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double init = 0.0)
        : grid(g), values(static_cast<size_t>(g.num_nodes()), init) {}

    double& operator()(int i, int k) { return values[static_cast<size_t>(k) * grid.nx + i]; }
    double operator()(int i, int k) const { return values[static_cast<size_t>(k) * grid.nx + i]; }
};

/// Two scalar components: c1 along x, c2 along z, on a common grid.
struct VectorField {
    ScalarField c1;
    ScalarField c2;

    VectorField() = default;
    explicit VectorField(const Grid& g, double v1 = 0.0, double v2 = 0.0) : c1(g, v1), c2(g, v2) {}
    const Grid& grid() const { return c1.grid; }
};

/// L-periodic nodal samples along the beam line (x only, nx nodes).
struct BeamField {
    Grid grid;
    std::vector<double> values;

    BeamField() = default;
    explicit BeamField(const Grid& g, double init = 0.0)
        : grid(g), values(static_cast<size_t>(g.nx), init) {}

    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);

// elementwise helpers; shapes must match
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);
BeamField operator+(const BeamField& a, const BeamField& b);
BeamField operator-(const BeamField& a, const BeamField& b);
BeamField operator*(double s, const BeamField& a);

double max_abs(const ScalarField& f);
double max_abs(const VectorField& f);
double max_abs(const BeamField& f);
bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& f);
bool all_finite(const BeamField& f);

}  // namespace fsi

#include "fsi/grid.hpp"

#include <algorithm>
#include <cmath>

namespace fsi {

Grid make_grid(int nx, int nz, double length) {
    if (nx < 4 || nz < 4) {
        throw DimensionTooSmall("grid needs nx >= 4 and nz >= 4, got nx=" + std::to_string(nx) +
                                " nz=" + std::to_string(nz));
    }
    if (!(length > 0.0)) {
        throw NonpositiveLength("channel period must be positive, got " + std::to_string(length));
    }
    Grid g;
    g.nx = nx;
    g.nz = nz;
    g.length = length;
    g.dx = length / nx;
    g.dz = 1.0 / nz;
    return g;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b)) throw ShapeMismatch(std::string(where) + ": fields live on different grids");
}

namespace {
template <typename F, typename Op>
F zip(const F& a, const F& b, Op op, const char* where) {
    require_same_grid(a.grid, b.grid, where);
    F out(a.grid);
    for (size_t n = 0; n < a.values.size(); ++n) out.values[n] = op(a.values[n], b.values[n]);
    return out;
}
}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x + y; }, "scalar +");
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x - y; }, "scalar -");
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x * y; }, "scalar *");
}
ScalarField operator*(double s, const ScalarField& a) {
    ScalarField out(a.grid);
    for (size_t n = 0; n < a.values.size(); ++n) out.values[n] = s * a.values[n];
    return out;
}
VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField out;
    out.c1 = a.c1 + b.c1;
    out.c2 = a.c2 + b.c2;
    return out;
}
VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField out;
    out.c1 = a.c1 - b.c1;
    out.c2 = a.c2 - b.c2;
    return out;
}
VectorField operator*(double s, const VectorField& a) {
    VectorField out;
    out.c1 = s * a.c1;
    out.c2 = s * a.c2;
    return out;
}
BeamField operator+(const BeamField& a, const BeamField& b) {
    return zip(a, b, [](double x, double y) { return x + y; }, "beam +");
}
BeamField operator-(const BeamField& a, const BeamField& b) {
    return zip(a, b, [](double x, double y) { return x - y; }, "beam -");
}
BeamField operator*(double s, const BeamField& a) {
    BeamField out(a.grid);
    for (size_t n = 0; n < a.values.size(); ++n) out.values[n] = s * a.values[n];
    return out;
}

namespace {
template <typename F>
double max_abs_impl(const F& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}
template <typename F>
bool finite_impl(const F& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}
}  // namespace

double max_abs(const ScalarField& f) { return max_abs_impl(f); }
double max_abs(const VectorField& f) { return std::max(max_abs_impl(f.c1), max_abs_impl(f.c2)); }
double max_abs(const BeamField& f) { return max_abs_impl(f); }
bool all_finite(const ScalarField& f) { return finite_impl(f); }
bool all_finite(const VectorField& f) { return finite_impl(f.c1) && finite_impl(f.c2); }
bool all_finite(const BeamField& f) { return finite_impl(f); }

}  // namespace fsi

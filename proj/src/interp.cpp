#include "fsi/interp.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace fsi {

namespace {

inline int wrap(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

// snap fractional coordinates that are within roundoff of a node, so that
// sampling at exact node positions returns the nodal value verbatim
inline double snap(double f) {
    const double r = std::round(f);
    return (std::abs(f - r) < 1e-9 * std::max(1.0, std::abs(f))) ? r : f;
}

// fractional position: f = x/dx split into base node and offset in [0,1)
inline void split_periodic(double x, double dx, int n, int& base, double& s) {
    const double f = snap(x / dx);
    double fl = std::floor(f);
    base = wrap(static_cast<int>(fl), n);
    s = f - fl;
}

inline std::array<double, 4> lagrange_weights(double s) {
    // nodes at local positions -1, 0, 1, 2
    return {-s * (s - 1.0) * (s - 2.0) / 6.0, (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
            -(s + 1.0) * s * (s - 2.0) / 2.0, (s + 1.0) * s * (s - 1.0) / 6.0};
}

}  // namespace

double bilinear_sample(const ScalarField& f, double x, double z) {
    const Grid& g = f.grid;
    int i0;
    double sx;
    split_periodic(x, g.dx, g.nx, i0, sx);
    const int i1 = wrap(i0 + 1, g.nx);

    const double zc = std::clamp(z, 0.0, 1.0);
    double kf = snap(zc / g.dz);
    int k0 = std::min(static_cast<int>(std::floor(kf)), g.nz - 1);
    const double sz = kf - k0;
    const int k1 = k0 + 1;

    return (1.0 - sx) * (1.0 - sz) * f(i0, k0) + sx * (1.0 - sz) * f(i1, k0) +
           (1.0 - sx) * sz * f(i0, k1) + sx * sz * f(i1, k1);
}

double cubic_sample(const ScalarField& f, double x, double z, bool monotone) {
    const Grid& g = f.grid;
    int i0;
    double sx;
    split_periodic(x, g.dx, g.nx, i0, sx);
    const auto wx = lagrange_weights(sx);

    const double zc = std::clamp(z, 0.0, 1.0);
    const double kf = snap(zc / g.dz);
    // base so that {base-1 .. base+2} stays inside [0, nz]
    int kbase = std::clamp(static_cast<int>(std::floor(kf)), 1, g.nz - 2);
    const double sz = kf - kbase;
    const auto wz = lagrange_weights(sz);

    double acc = 0.0;
    double lo = f(i0, kbase);
    double hi = lo;
    for (int b = -1; b <= 2; ++b) {
        const int k = kbase + b;
        double row = 0.0;
        for (int a = -1; a <= 2; ++a) {
            const int i = wrap(i0 + a, g.nx);
            const double v = f(i, k);
            row += wx[static_cast<size_t>(a + 1)] * v;
            if (monotone) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        acc += wz[static_cast<size_t>(b + 1)] * row;
    }
    if (monotone) acc = std::clamp(acc, lo, hi);
    return acc;
}

double beam_sample_linear(const BeamField& f, double x) {
    const Grid& g = f.grid;
    int i0;
    double s;
    split_periodic(x, g.dx, g.nx, i0, s);
    return (1.0 - s) * f[i0] + s * f[wrap(i0 + 1, g.nx)];
}

double beam_sample_cubic(const BeamField& f, double x) {
    const Grid& g = f.grid;
    int i0;
    double s;
    split_periodic(x, g.dx, g.nx, i0, s);
    const auto w = lagrange_weights(s);
    double acc = 0.0;
    for (int a = -1; a <= 2; ++a) acc += w[static_cast<size_t>(a + 1)] * f[wrap(i0 + a, g.nx)];
    return acc;
}

}  // namespace fsi

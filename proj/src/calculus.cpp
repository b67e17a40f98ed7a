#include "fsi/calculus.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <unordered_map>

namespace fsi {

ScalarField ddx(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const double inv2dx = 1.0 / (2.0 * g.dx);
    for (int k = 0; k <= g.nz; ++k) {
        for (int i = 0; i < g.nx; ++i) {
            const int ip = (i + 1) % g.nx;
            const int im = (i + g.nx - 1) % g.nx;
            out(i, k) = (f(ip, k) - f(im, k)) * inv2dx;
        }
    }
    return out;
}

ScalarField ddz(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const double inv2dz = 1.0 / (2.0 * g.dz);
    for (int i = 0; i < g.nx; ++i) {
        out(i, 0) = (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) * inv2dz;
        out(i, g.nz) = (3.0 * f(i, g.nz) - 4.0 * f(i, g.nz - 1) + f(i, g.nz - 2)) * inv2dz;
    }
    for (int k = 1; k < g.nz; ++k)
        for (int i = 0; i < g.nx; ++i) out(i, k) = (f(i, k + 1) - f(i, k - 1)) * inv2dz;
    return out;
}

ScalarField d2dx2(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const double invdx2 = 1.0 / (g.dx * g.dx);
    for (int k = 0; k <= g.nz; ++k) {
        for (int i = 0; i < g.nx; ++i) {
            const int ip = (i + 1) % g.nx;
            const int im = (i + g.nx - 1) % g.nx;
            out(i, k) = (f(ip, k) - 2.0 * f(i, k) + f(im, k)) * invdx2;
        }
    }
    return out;
}

ScalarField d2dz2(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const double invdz2 = 1.0 / (g.dz * g.dz);
    for (int i = 0; i < g.nx; ++i) {
        out(i, 0) = (2.0 * f(i, 0) - 5.0 * f(i, 1) + 4.0 * f(i, 2) - f(i, 3)) * invdz2;
        out(i, g.nz) = (2.0 * f(i, g.nz) - 5.0 * f(i, g.nz - 1) + 4.0 * f(i, g.nz - 2) -
                        f(i, g.nz - 3)) *
                       invdz2;
    }
    for (int k = 1; k < g.nz; ++k)
        for (int i = 0; i < g.nx; ++i)
            out(i, k) = (f(i, k + 1) - 2.0 * f(i, k) + f(i, k - 1)) * invdz2;
    return out;
}

ScalarField d2dxdz(const ScalarField& f) { return ddx(ddz(f)); }

ScalarField laplacian(const ScalarField& f) { return d2dx2(f) + d2dz2(f); }

VectorField gradient(const ScalarField& f) {
    VectorField out;
    out.c1 = ddx(f);
    out.c2 = ddz(f);
    return out;
}

ScalarField divergence(const VectorField& u) { return ddx(u.c1) + ddz(u.c2); }

BeamField ddx(const BeamField& f) {
    const Grid& g = f.grid;
    BeamField out(g);
    const double inv2dx = 1.0 / (2.0 * g.dx);
    for (int i = 0; i < g.nx; ++i) {
        const int ip = (i + 1) % g.nx;
        const int im = (i + g.nx - 1) % g.nx;
        out[i] = (f[ip] - f[im]) * inv2dx;
    }
    return out;
}

BeamField d2dx2(const BeamField& f) {
    const Grid& g = f.grid;
    BeamField out(g);
    const double invdx2 = 1.0 / (g.dx * g.dx);
    for (int i = 0; i < g.nx; ++i) {
        const int ip = (i + 1) % g.nx;
        const int im = (i + g.nx - 1) % g.nx;
        out[i] = (f[ip] - 2.0 * f[i] + f[im]) * invdx2;
    }
    return out;
}

namespace {

// One cached c2c plan pair per transform size. Plans are created against
// persistent fftw buffers and data is copied through them; single-threaded use.
struct DftPlans {
    fftw_complex* buf_in = nullptr;
    fftw_complex* buf_out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    int n = 0;

    explicit DftPlans(int size) : n(size) {
        buf_in = fftw_alloc_complex(static_cast<size_t>(n));
        buf_out = fftw_alloc_complex(static_cast<size_t>(n));
        fwd = fftw_plan_dft_1d(n, buf_in, buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, buf_in, buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~DftPlans() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf_in);
        fftw_free(buf_out);
    }
    DftPlans(const DftPlans&) = delete;
    DftPlans& operator=(const DftPlans&) = delete;
};

DftPlans& plans_for(int n) {
    static std::unordered_map<int, std::unique_ptr<DftPlans>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<DftPlans>(n)).first;
    return *it->second;
}

}  // namespace

std::vector<std::complex<double>> dft_x(const BeamField& f) {
    const int n = f.grid.nx;
    DftPlans& p = plans_for(n);
    for (int i = 0; i < n; ++i) {
        p.buf_in[i][0] = f[i];
        p.buf_in[i][1] = 0.0;
    }
    fftw_execute(p.fwd);
    std::vector<std::complex<double>> modes(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) modes[static_cast<size_t>(i)] = {p.buf_out[i][0], p.buf_out[i][1]};
    return modes;
}

BeamField idft_x(const std::vector<std::complex<double>>& modes, const Grid& grid,
                 double* imag_residue) {
    const int n = grid.nx;
    if (static_cast<int>(modes.size()) != n)
        throw ShapeMismatch("idft_x: mode count does not match grid nx");
    DftPlans& p = plans_for(n);
    for (int i = 0; i < n; ++i) {
        p.buf_in[i][0] = modes[static_cast<size_t>(i)].real();
        p.buf_in[i][1] = modes[static_cast<size_t>(i)].imag();
    }
    fftw_execute(p.bwd);
    BeamField out(grid);
    double residue = 0.0;
    const double inv_n = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        out[i] = p.buf_out[i][0] * inv_n;
        residue = std::max(residue, std::abs(p.buf_out[i][1]) * inv_n);
    }
    if (imag_residue) *imag_residue = residue;
    return out;
}

double wavenumber(int bin, const Grid& grid) {
    const int n = grid.nx;
    const int jsigned = (bin <= n / 2) ? bin : bin - n;
    return 2.0 * M_PI * jsigned / grid.length;
}

BeamField spectral_derivative(const BeamField& f, int order) {
    const Grid& g = f.grid;
    auto modes = dft_x(f);
    const int n = g.nx;
    for (int j = 0; j < n; ++j) {
        const double kappa = wavenumber(j, g);
        std::complex<double> factor = std::pow(std::complex<double>(0.0, kappa), order);
        if (order % 2 == 1 && n % 2 == 0 && j == n / 2) factor = 0.0;  // odd derivative: drop Nyquist
        modes[static_cast<size_t>(j)] *= factor;
    }
    return idft_x(modes, g);
}

double integrate_weighted(const ScalarField& f, const ScalarField& wgt) {
    require_same_grid(f.grid, wgt.grid, "integrate_weighted");
    const Grid& g = f.grid;
    double acc = 0.0;
    for (int k = 0; k <= g.nz; ++k) {
        const double wz = (k == 0 || k == g.nz) ? 0.5 : 1.0;
        double row = 0.0;
        for (int i = 0; i < g.nx; ++i) row += f(i, k) * wgt(i, k);
        acc += wz * row;
    }
    return acc * g.dx * g.dz;
}

double integrate_line(const BeamField& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v;
    return acc * f.grid.dx;
}

double l2_norm(const ScalarField& f) {
    const Grid& g = f.grid;
    double acc = 0.0;
    for (int k = 0; k <= g.nz; ++k) {
        const double wz = (k == 0 || k == g.nz) ? 0.5 : 1.0;
        double row = 0.0;
        for (int i = 0; i < g.nx; ++i) row += f(i, k) * f(i, k);
        acc += wz * row;
    }
    return std::sqrt(acc * g.dx * g.dz);
}

double l2_norm(const VectorField& f) {
    const double a = l2_norm(f.c1);
    const double b = l2_norm(f.c2);
    return std::sqrt(a * a + b * b);
}

double l2_norm(const BeamField& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v * v;
    return std::sqrt(acc * f.grid.dx);
}

}  // namespace fsi

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fsi/calculus.hpp"

using namespace fsi;

namespace {

ScalarField fill(const Grid& g, double (*f)(double, double)) {
    ScalarField out(g);
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i < g.nx; ++i) out(i, k) = f(g.x(i), g.z(k));
    return out;
}

double slope(double e_coarse, double e_fine, int ratio) {
    return std::log(e_coarse / e_fine) / std::log(static_cast<double>(ratio));
}

}  // namespace

TEST_CASE("make_grid spacing and validation") {
    const Grid g = make_grid(8, 4, 2.0);
    CHECK(g.dx == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.dz == doctest::Approx(0.25).epsilon(1e-15));
    const Grid g2 = make_grid(4, 4, 1.0);
    CHECK(g2.dx == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(make_grid(2, 4, 1.0), DimensionTooSmall);
    CHECK_THROWS_AS(make_grid(8, 3, 1.0), DimensionTooSmall);
    CHECK_THROWS_AS(make_grid(8, 4, 0.0), NonpositiveLength);
    CHECK_THROWS_AS(make_grid(8, 4, -1.0), NonpositiveLength);
}

TEST_CASE("ddx and ddz annihilate constants") {
    const Grid g = make_grid(16, 8, 3.0);
    const ScalarField c(g, 7.0);
    CHECK(max_abs(ddx(c)) <= 1e-14 * 7.0);
    CHECK(max_abs(ddz(c)) <= 1e-14 * 7.0);
}

TEST_CASE("ddx converges at order 2 on a harmonic") {
    const double L = 2.0;
    std::vector<double> errs;
    for (int n : {16, 32, 64, 128}) {
        const Grid g = make_grid(n, 4, L);
        ScalarField f(g);
        for (int k = 0; k <= g.nz; ++k)
            for (int i = 0; i < g.nx; ++i) f(i, k) = std::sin(2.0 * M_PI * g.x(i) / L);
        const ScalarField d = ddx(f);
        double err = 0.0;
        for (int k = 0; k <= g.nz; ++k)
            for (int i = 0; i < g.nx; ++i)
                err = std::max(err, std::abs(d(i, k) - (2.0 * M_PI / L) *
                                                           std::cos(2.0 * M_PI * g.x(i) / L)));
        errs.push_back(err);
    }
    for (size_t m = 1; m < errs.size(); ++m)
        CHECK(slope(errs[m - 1], errs[m], 2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("ddx of a non-smooth sawtooth stays finite") {
    const Grid g = make_grid(16, 4, 1.0);
    ScalarField f(g);
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i < g.nx; ++i) f(i, k) = g.x(i);  // jumps at the wrap
    CHECK(all_finite(ddx(f)));
}

TEST_CASE("ddz is exact on polynomials up to degree two") {
    const Grid g = make_grid(8, 8, 1.0);
    const ScalarField lin = fill(g, [](double, double z) { return z; });
    const ScalarField dlin = ddz(lin);
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i < g.nx; ++i) CHECK(dlin(i, k) == doctest::Approx(1.0).epsilon(1e-13));

    const ScalarField quad = fill(g, [](double, double z) { return z * z; });
    const ScalarField dquad = ddz(quad);
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i < g.nx; ++i)
            CHECK(dquad(i, k) == doctest::Approx(2.0 * g.z(k)).epsilon(1e-12));
}

TEST_CASE("gradient of z is exactly (0,1); divergence of constants vanishes") {
    const Grid g = make_grid(8, 8, 1.0);
    const VectorField grad = gradient(fill(g, [](double, double z) { return z; }));
    CHECK(max_abs(grad.c1) <= 1e-14);
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i < g.nx; ++i) CHECK(grad.c2(i, k) == doctest::Approx(1.0).epsilon(1e-13));

    const VectorField u(g, 3.0, -2.0);
    CHECK(max_abs(divergence(u)) <= 1e-13);
}

TEST_CASE("laplacian converges at order 2 on a product harmonic") {
    const double L = 2.0;
    std::vector<double> errs;
    for (int n : {16, 32, 64}) {
        const Grid g = make_grid(n, n, L);
        ScalarField f(g);
        for (int k = 0; k <= g.nz; ++k)
            for (int i = 0; i < g.nx; ++i)
                f(i, k) = std::sin(2.0 * M_PI * g.x(i) / L) * std::sin(M_PI * g.z(k));
        const ScalarField lap = laplacian(f);
        const double lam = std::pow(2.0 * M_PI / L, 2) + M_PI * M_PI;
        double err = 0.0;
        for (int k = 0; k <= g.nz; ++k)
            for (int i = 0; i < g.nx; ++i)
                err = std::max(err, std::abs(lap(i, k) + lam * f(i, k)));
        errs.push_back(err);
    }
    CHECK(slope(errs[0], errs[2], 4) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("dft_x picks out single modes") {
    const Grid g = make_grid(16, 4, 2.0);
    BeamField ones(g, 1.0);
    auto modes = dft_x(ones);
    CHECK(std::abs(modes[0] - std::complex<double>(16.0, 0.0)) < 1e-12);
    for (int j = 1; j < 16; ++j) CHECK(std::abs(modes[static_cast<size_t>(j)]) < 1e-12);

    BeamField cosx(g);
    for (int i = 0; i < g.nx; ++i) cosx[i] = std::cos(2.0 * M_PI * g.x(i) / g.length);
    modes = dft_x(cosx);
    CHECK(std::abs(modes[1] - std::complex<double>(8.0, 0.0)) < 1e-11);
    CHECK(std::abs(modes[15] - std::complex<double>(8.0, 0.0)) < 1e-11);
    for (int j = 0; j < 16; ++j)
        if (j != 1 && j != 15) CHECK(std::abs(modes[static_cast<size_t>(j)]) < 1e-11);
}

TEST_CASE("dft_x round trip below 1e-12 for random data on several sizes") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int n : {8, 12, 16, 32, 64}) {
        const Grid g = make_grid(n, 4, 1.5);
        BeamField f(g);
        double scale = 0.0;
        for (int i = 0; i < n; ++i) {
            f[i] = dist(rng);
            scale = std::max(scale, std::abs(f[i]));
        }
        const BeamField back = idft_x(dft_x(f), g);
        double err = 0.0;
        for (int i = 0; i < n; ++i) err = std::max(err, std::abs(back[i] - f[i]));
        CHECK(err < 1e-12 * scale);
    }
}

TEST_CASE("wavenumber convention") {
    const Grid g = make_grid(8, 4, 2.0);
    CHECK(wavenumber(0, g) == 0.0);
    CHECK(wavenumber(1, g) == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(wavenumber(7, g) == doctest::Approx(-M_PI).epsilon(1e-15));
    CHECK(std::abs(wavenumber(4, g)) == doctest::Approx(M_PI * 8 / 2.0).epsilon(1e-15));
}

TEST_CASE("spectral derivative is exact on band-limited data") {
    const Grid g = make_grid(16, 4, 2.0);
    BeamField f(g);
    const double kappa = 2.0 * M_PI / g.length;
    for (int i = 0; i < g.nx; ++i) f[i] = std::sin(kappa * g.x(i));
    const BeamField d1 = spectral_derivative(f, 1);
    const BeamField d2 = spectral_derivative(f, 2);
    for (int i = 0; i < g.nx; ++i) {
        CHECK(d1[i] == doctest::Approx(kappa * std::cos(kappa * g.x(i))).epsilon(1e-12));
        CHECK(d2[i] == doctest::Approx(-kappa * kappa * f[i]).epsilon(1e-12));
    }
}

TEST_CASE("integrate_weighted basics") {
    const Grid g = make_grid(16, 8, 2.0);
    const ScalarField ones(g, 1.0);
    CHECK(integrate_weighted(ones, ones) == doctest::Approx(2.0).epsilon(1e-14));

    ScalarField harmonic(g);
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i < g.nx; ++i)
            harmonic(i, k) = std::sin(2.0 * M_PI * g.x(i) / g.length);
    CHECK(std::abs(integrate_weighted(harmonic, ones)) < 1e-14);

    ScalarField wgt(g, 1.1);  // (1 + eta) with eta = 0.1
    CHECK(integrate_weighted(ones, wgt) == doctest::Approx(1.1 * 2.0).epsilon(1e-14));
}

TEST_CASE("integrate_weighted is bilinear") {
    const Grid g = make_grid(8, 6, 1.3);
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto rand_field = [&]() {
        ScalarField f(g);
        for (auto& v : f.values) v = dist(rng);
        return f;
    };
    for (int rep = 0; rep < 10; ++rep) {
        const ScalarField f = rand_field(), h = rand_field(), w = rand_field();
        const double a = dist(rng), b = dist(rng);
        ScalarField comb(g);
        for (size_t n = 0; n < comb.values.size(); ++n)
            comb.values[n] = a * f.values[n] + b * h.values[n];
        const double lhs = integrate_weighted(comb, w);
        const double rhs = a * integrate_weighted(f, w) + b * integrate_weighted(h, w);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

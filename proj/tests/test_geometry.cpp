#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fsi/geometry.hpp"
#include "fsi/interp.hpp"

using namespace fsi;

TEST_CASE("build_geometry on the flat beam") {
    const Grid g = make_grid(16, 4, 2.0);
    const BeamField eta(g);
    const BeamGeometry geo = build_geometry(eta, 0.5);
    for (int i = 0; i < g.nx; ++i) {
        CHECK(geo.one_plus_eta[i] == 1.0);
        CHECK(geo.eta_x[i] == 0.0);
        CHECK(geo.inv_one_plus_eta[i] == 1.0);
    }
    CHECK(geo.min_one_plus_eta == 1.0);
}

TEST_CASE("build_geometry rejects a beam touching the bottom") {
    const Grid g = make_grid(8, 4, 1.0);
    BeamField eta(g, -0.95);
    try {
        build_geometry(eta, 0.1);
        FAIL("expected AdmissibilityViolated");
    } catch (const AdmissibilityViolated& e) {
        CHECK(e.min_one_plus_eta == doctest::Approx(0.05).epsilon(1e-12));
    }
    CHECK_THROWS_AS(build_geometry(eta, 1.5), ValidationError);
    CHECK_THROWS_AS(build_geometry(eta, 0.0), ValidationError);
}

TEST_CASE("reciprocal identity of the column heights") {
    const Grid g = make_grid(32, 4, 1.0);
    BeamField eta(g);
    for (int i = 0; i < g.nx; ++i) eta[i] = 0.1 * std::sin(2.0 * M_PI * g.x(i) / g.length);
    const BeamGeometry geo = build_geometry(eta, 0.5);
    for (int i = 0; i < g.nx; ++i)
        CHECK(geo.inv_one_plus_eta[i] * geo.one_plus_eta[i] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("map_to_physical") {
    const Grid g = make_grid(16, 4, 1.0);
    const BeamGeometry flat = build_geometry(BeamField(g), 0.5);
    const auto p = map_to_physical(0.3, 0.7, flat);
    CHECK(p[0] == 0.3);
    CHECK(p[1] == doctest::Approx(0.7).epsilon(1e-15));

    const BeamGeometry lifted = build_geometry(BeamField(g, 0.5), 0.5);
    CHECK(map_to_physical(0.1, 1.0, lifted)[1] == doctest::Approx(1.5).epsilon(1e-15));

    // forward map recovers z
    BeamField eta(g);
    for (int i = 0; i < g.nx; ++i) eta[i] = 0.2 * std::cos(2.0 * M_PI * g.x(i) / g.length);
    const BeamGeometry geo = build_geometry(eta, 0.5);
    for (double z : {0.0, 0.25, 0.9, 1.0}) {
        const double x = g.x(5);
        const auto q = map_to_physical(x, z, geo);
        CHECK(q[1] / (1.0 + eta[5]) == doctest::Approx(z).epsilon(1e-14));
    }
}

TEST_CASE("normal_vector") {
    auto n0 = normal_vector(0.0);
    CHECK(n0[0] == 0.0);
    CHECK(n0[1] == 1.0);
    auto n1 = normal_vector(1.0);
    CHECK(n1[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(n1[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int rep = 0; rep < 50; ++rep) {
        const auto n = normal_vector(dist(rng));
        CHECK(std::abs(std::hypot(n[0], n[1]) - 1.0) < 1e-15);
        CHECK(n[1] > 0.0);
    }
}

TEST_CASE("jacobian_weight") {
    const Grid g = make_grid(32, 6, 1.7);
    CHECK(max_abs(jacobian_weight(build_geometry(BeamField(g), 0.5)) - ScalarField(g, 1.0)) <=
          1e-15);

    const ScalarField w1 = jacobian_weight(build_geometry(BeamField(g, 1.0), 0.5));
    const ScalarField ones(g, 1.0);
    CHECK(integrate_weighted(w1, ones) == doctest::Approx(2.0 * g.length).epsilon(1e-13));

    BeamField eta(g);
    for (int i = 0; i < g.nx; ++i) eta[i] = 0.1 * std::sin(2.0 * M_PI * g.x(i) / g.length);
    const ScalarField wh = jacobian_weight(build_geometry(eta, 0.5));
    CHECK(integrate_weighted(wh, ones) == doctest::Approx(g.length).epsilon(1e-12));

    // weight never drops below delta0 once construction succeeded
    for (double v : wh.values) CHECK(v >= 0.5);
}

TEST_CASE("pull_back_field") {
    const Grid g = make_grid(16, 8, 1.0);
    const BeamGeometry flat = build_geometry(BeamField(g), 0.5);
    const ScalarField zf =
        pull_back_field([](double, double y) { return y; }, flat, g);
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i < g.nx; ++i) CHECK(zf(i, k) == doctest::Approx(g.z(k)).epsilon(1e-15));

    const BeamGeometry lifted = build_geometry(BeamField(g, 1.0), 0.5);
    const ScalarField z2 =
        pull_back_field([](double, double y) { return y; }, lifted, g);
    for (int k = 0; k <= g.nz; ++k)
        for (int i = 0; i < g.nx; ++i)
            CHECK(z2(i, k) == doctest::Approx(2.0 * g.z(k)).epsilon(1e-15));

    BeamField eta(g);
    for (int i = 0; i < g.nx; ++i) eta[i] = 0.3 * std::cos(2.0 * M_PI * g.x(i));
    const ScalarField onef =
        pull_back_field([](double, double) { return 1.0; }, build_geometry(eta, 0.5), g);
    CHECK(max_abs(onef - ScalarField(g, 1.0)) == 0.0);
}

TEST_CASE("push-forward then pull-back reproduces smooth fields at interpolation accuracy") {
    // sample a smooth reference field on a coarse grid, interpolate it onto
    // the moving domain, and pull it back on a finer grid; the composite must
    // converge to the analytic field as the coarse grid refines
    auto f_ref = [](double x, double z) {
        return std::sin(2.0 * M_PI * x) * (0.5 + 0.4 * std::cos(1.3 * z));
    };
    auto eta_fn = [](double x) { return 0.2 * std::sin(2.0 * M_PI * x); };

    std::vector<double> errs;
    for (int n : {16, 32, 64}) {
        const Grid coarse = make_grid(n, n, 1.0);
        ScalarField F(coarse);
        BeamField eta(coarse);
        for (int i = 0; i < coarse.nx; ++i) eta[i] = eta_fn(coarse.x(i));
        for (int k = 0; k <= coarse.nz; ++k)
            for (int i = 0; i < coarse.nx; ++i) F(i, k) = f_ref(coarse.x(i), coarse.z(k));

        auto pushed = [&](double x, double y) {
            return cubic_sample(F, x, y / (1.0 + beam_sample_cubic(eta, x)));
        };

        const Grid fine = make_grid(2 * n, 2 * n, 1.0);
        BeamField eta_fine(fine);
        for (int i = 0; i < fine.nx; ++i) eta_fine[i] = eta_fn(fine.x(i));
        const BeamGeometry geo_fine = build_geometry(eta_fine, 0.5);
        const ScalarField back = pull_back_field(pushed, geo_fine, fine);

        double err = 0.0;
        for (int k = 0; k <= fine.nz; ++k)
            for (int i = 0; i < fine.nx; ++i)
                err = std::max(err, std::abs(back(i, k) - f_ref(fine.x(i), fine.z(k))));
        errs.push_back(err);
    }
    const double order = std::log2(errs[0] / errs[2]) / 2.0;
    CHECK(order >= 2.0);
}

TEST_CASE("beam samplers: node exactness and interpolation order") {
    const double L = 2.0;
    auto fn = [L](double x) { return std::sin(2.0 * M_PI * x / L) + 0.3 * std::cos(4.0 * M_PI * x / L); };
    // node exactness
    {
        const Grid g = make_grid(32, 4, L);
        BeamField f(g);
        for (int i = 0; i < g.nx; ++i) f[i] = fn(g.x(i));
        for (int i = 0; i < g.nx; ++i) {
            CHECK(beam_sample_linear(f, g.x(i)) == f[i]);
            CHECK(beam_sample_cubic(f, g.x(i)) == f[i]);
        }
    }
    // convergence: linear is 2nd order, cubic is 4th order
    double lin_prev = 0.0, cub_prev = 0.0;
    for (int n : {32, 64}) {
        const Grid g = make_grid(n, 4, L);
        BeamField f(g);
        for (int i = 0; i < g.nx; ++i) f[i] = fn(g.x(i));
        double lin_err = 0.0, cub_err = 0.0;
        for (int m = 0; m < 100; ++m) {
            const double x = (m + 0.37) * L / 100.0;
            lin_err = std::max(lin_err, std::abs(beam_sample_linear(f, x) - fn(x)));
            cub_err = std::max(cub_err, std::abs(beam_sample_cubic(f, x) - fn(x)));
        }
        if (n == 64) {
            CHECK(lin_prev / lin_err > 3.2);   // ~2^2
            CHECK(cub_prev / cub_err > 12.0);  // ~2^4
        }
        lin_prev = lin_err;
        cub_prev = cub_err;
    }
}

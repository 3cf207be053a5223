#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "btl/calculus.hpp"
#include "common.hpp"

using namespace btl;

TEST_CASE("cycle spectrum matches the circulant formula") {
    for (int n : {8, 33, 64}) {
        ModelSpace m = btltest::cycle(n);
        SpectralData sd = eigendecompose(m);
        std::vector<double> ref;
        for (int k = 0; k < n; ++k) ref.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n));
        std::sort(ref.begin(), ref.end());
        for (int k = 0; k < n; ++k) CHECK(sd.lambda(k) == doctest::Approx(ref[k]).epsilon(1e-12).scale(1.0));
        CHECK(sd.nullspace_dim == 1);
        CHECK(eigen_reconstruction_error(m, sd) < 1e-12);
    }
}

TEST_CASE("negative and positive powers of L round trip") {
    ModelSpace m = btltest::cycle(32);
    SpectralData sd = eigendecompose(m);
    for (const Vec& g : btltest::random_mean_zero(32, 5, 3)) {
        Vec back = apply_L_power(sd, apply_L_power(sd, g, -1, true), 1, false);
        CHECK((back - g).norm() <= 1e-10 * g.norm());
        // L^1 is the operator itself
        CHECK((apply_L_power(sd, g, 1, false) - m.L * g).norm() <= 1e-12 * g.norm());
    }
    Vec ones = Vec::Ones(32);
    CHECK_THROWS_AS(apply_L_power(sd, ones, -1, true), PreconditionError);
    CHECK_THROWS_AS(apply_L_power(sd, ones, -1, false), PreconditionError);
}

TEST_CASE("cutoff shapes") {
    Cutoff a = make_cutoff(CutoffKind::A, 2.0);
    CHECK(a(0.0) == 1.0);
    CHECK(a(1.0) == 1.0);
    CHECK(a(2.0) == 0.0);
    CHECK(a(-0.5) == 1.0);
    Cutoff b = make_cutoff(CutoffKind::B, 2.0);
    CHECK(b(0.49) == 0.0);
    CHECK(b(2.01) == 0.0);
    CHECK(b(1.0) > 0.0);
    Cutoff c = make_cutoff(CutoffKind::C, 2.0);
    double s = 0.0;
    for (int j = -20; j <= 20; ++j) {
        double v = c(std::pow(2.0, -j) * 3.7);
        s += v * v;
    }
    CHECK(std::abs(s - 1.0) <= 1e-12);
    CHECK(quadratic_partition_error(c) <= 1e-12);
}

TEST_CASE("band indicator reproduces the band projection") {
    ModelSpace m = btltest::cycle(32);
    SpectralData sd = eigendecompose(m);
    const double lo = 0.5, hi = 1.3;
    Kernel k = apply_symbol(sd, [&](double u) { return (u >= lo && u <= hi) ? 1.0 : 0.0; }, 1.0);
    // oracle: an independent eigensolver on the plain Laplacian (mu = 1)
    Eigen::SelfAdjointEigenSolver<Mat> es(m.L);
    Mat P = Mat::Zero(32, 32);
    for (int i = 0; i < 32; ++i) {
        double u = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
        if (u >= lo && u <= hi) P += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
    }
    for (const Vec& g : btltest::random_mean_zero(32, 3, 5)) CHECK((k.apply(g) - P * g).norm() <= 1e-10 * g.norm());
    CHECK(!k.band_empty);
    CHECK(k.band_lo >= lo);
    CHECK(k.band_hi <= hi);
}

TEST_CASE("heat kernel equals exp(-tL) by scaling and squaring") {
    ModelSpace m = btltest::cycle(16);
    SpectralData sd = eigendecompose(m);
    const double t = 2.0;
    Mat A = -t * m.L / 64.0;
    Mat E = Mat::Identity(16, 16), term = Mat::Identity(16, 16);
    for (int k = 1; k < 30; ++k) {
        term = term * A / k;
        E += term;
    }
    for (int k = 0; k < 6; ++k) E = E * E;
    Kernel h = heat_kernel(sd, t);
    CHECK((h.table - E).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Littlewood-Paley telescoping on C_64") {
    ModelSpace m = btltest::cycle(64);
    SpectralData sd = eigendecompose(m);
    LevelWindow w = default_window(sd, 2.0);
    for (const Vec& f : btltest::random_mean_zero(64, 20, 7))
        CHECK((f - lp_sum(sd, w, 2.0, Mode::Homogeneous, f)).norm() <= 1e-10 * f.norm());
    // inhomogeneous: constants are kept
    LevelWindow wi = default_window(sd, 2.0, Mode::Inhomogeneous);
    CHECK(wi.j_min == 0);
    Vec one = Vec::Ones(64);
    CHECK((lp_sum(sd, wi, 2.0, Mode::Inhomogeneous, one) - one).norm() < 1e-10);
}

TEST_CASE("localization and heat Holder profiles are finite") {
    ModelSpace m = btltest::cycle(32);
    SpectralData sd = eigendecompose(m);
    Cutoff c = make_cutoff(CutoffKind::C, 2.0);
    Kernel k = apply_symbol(sd, c.symbol(), 4.0);
    auto rep = measure_localization(m, k, 4.0, {1, 3, 5});
    REQUIRE(rep.a_eff.size() == 3);
    for (double a : rep.a_eff) CHECK(std::isfinite(a));
    // higher orders weigh the tails more
    CHECK(rep.a_eff[2] >= rep.a_eff[0]);
    HolderReport h = heat_holder_profile(m, sd, {1.0, 4.0});
    for (double r : h.max_ratio) CHECK(std::isfinite(r));
}

TEST_CASE("speed calibration and effective support") {
    ModelSpace m = btltest::cycle(32);
    SpectralData sd = eigendecompose(m);
    SpeedCalibration sc = calibrate_speed_constant(m, sd);
    CHECK(sc.c_star > 0.0);
    CHECK(sc.c_tilde == doctest::Approx(1.0 / (2.0 * std::sqrt(sc.c_star))));
    Vec e = Vec::Zero(32);
    e(5) = 1.0;
    CHECK(effective_support_radius(m, e, 5) == 0.0);
    e(9) = 0.5;
    CHECK(effective_support_radius(m, e, 5) == 4.0);
    CHECK_THROWS_AS(check_finite_speed(m, sd, [](double u) { return std::cos(u); }, 0.0, 1.0, sc.c_tilde),
                    PreconditionError);
}

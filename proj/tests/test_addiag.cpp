#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "btl/addiag.hpp"
#include "btl/battery.hpp"
#include "common.hpp"

using namespace btl;

namespace {

struct Fixture {
    ModelSpace m = btltest::cycle(32);
    SpectralData sd = eigendecompose(m);
    FramePair fp = build_frame_pair(m, sd, FrameConfig{});
    DoublingProfile prof = measure_doubling(m);
    NetGeometry g = net_geometry(m, fp.hierarchy);
    SequenceNorms seq{m, fp.hierarchy};

    SpaceParams prm(double s = 0.0, Flavor fl = Flavor::Classical, Family fam = Family::TriebelLizorkin) const {
        SpaceParams r;
        r.s = s;
        r.flavor = fl;
        r.family = fam;
        r.d = prof.d;
        r.dstar = prof.dstar;
        return r;
    }
};

Fixture& fx() {
    static Fixture f;
    return f;
}

Mat random_signs(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    Mat s(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) s(i, j) = (rng() & 1u) ? 1.0 : -1.0;
    return s;
}

}  // namespace

TEST_CASE("omega on the diagonal and the two-parameter identity") {
    auto& f = fx();
    for (Flavor fl : {Flavor::Classical, Flavor::Tilde})
        for (double s : {-1.0, 0.0, 1.0}) {
            SpaceParams p = f.prm(s, fl);
            for (int x = 0; x < f.g.size(); x += 5) {
                CHECK(omega(f.g, x, x, 0.5, p, fl) == 1.0);
                CHECK(omega2(f.g, x, x, 0.3, 0.9, p, fl) == 1.0);
                int y = (x * 7 + 3) % f.g.size();
                CHECK(omega2(f.g, x, y, 0.4, 0.4, p, fl) == doctest::Approx(omega(f.g, x, y, 0.4, p, fl)).epsilon(1e-14));
            }
        }
}

TEST_CASE("omega for a center shared by consecutive levels") {
    auto& f = fx();
    // point 0 is the first greedy center on every level
    int xi = -1, eta = -1;
    for (int k = 0; k < f.g.size(); ++k) {
        if (f.g.center[k] != 0) continue;
        if (f.g.level[k] == 0) xi = k;
        if (f.g.level[k] == 1) eta = k;
    }
    REQUIRE(xi >= 0);
    REQUIRE(eta >= 0);
    const double b = 2.0, delta = 0.5;
    for (double s : {-1.0, 0.5}) {
        SpaceParams p = f.prm(s);
        double J = p.J();
        double ref = std::pow(b, s) * std::sqrt(f.g.bvol[xi] / f.g.bvol[eta]) * std::pow(b, -(J + delta));
        CHECK(omega(f.g, xi, eta, delta, p, Flavor::Classical) == doctest::Approx(ref).epsilon(1e-14));
    }
}

TEST_CASE("omega is nonincreasing in beta") {
    auto& f = fx();
    SpaceParams p = f.prm();
    for (int x = 0; x < f.g.size(); x += 11)
        for (int y = 1; y < f.g.size(); y += 13) {
            if (f.g.rho(x, y) == 0.0) continue;
            double prev = 1e300;
            for (double beta = 0.1; beta <= 2.0; beta += 0.1) {
                double w = omega2(f.g, x, y, beta, 0.5, p, Flavor::Classical);
                CHECK(w <= prev);
                prev = w;
            }
        }
}

TEST_CASE("ad norm equals the brute-force maximum") {
    auto& f = fx();
    SpaceParams p = f.prm();
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    Mat a(f.g.size(), f.g.size());
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i) a(i, j) = nd(rng) * std::exp(-f.g.rho(i, j));
    double ref = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            ref = std::max(ref, std::abs(a(i, j)) / omega(f.g, i, j, 0.5, p, Flavor::Classical));
    CHECK(ad_norm(f.g, a, 0.5, p, Flavor::Classical).value == doctest::Approx(ref).epsilon(1e-15));
}

TEST_CASE("composition is associative on vectors") {
    auto& f = fx();
    SpaceParams p = f.prm();
    const int n = f.g.size();
    NetMatrix A{omega_matrix(f.g, 1.0, 1.0, p, Flavor::Classical).cwiseProduct(random_signs(n, 1)), p, Flavor::Classical};
    NetMatrix B{omega_matrix(f.g, 0.5, 0.5, p, Flavor::Classical).cwiseProduct(random_signs(n, 2)), p, Flavor::Classical};
    Vec h = sequence_battery(n, 1, 5).front();
    Vec lhs = apply(compose(A, B), h), rhs = apply(A, apply(B, h));
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    NetMatrix I{Mat::Identity(n, n), p, Flavor::Classical};
    CHECK(ad_norm(f.g, compose(I, I), 0.5).value == 1.0);
    AlgebraReport ar = algebra_check(f.g, A, B, 1.0, 0.5);
    CHECK(std::isfinite(ar.constant));
    CHECK(ar.norm_a == doctest::Approx(1.0));
}

TEST_CASE("boundedness probe: identity and signed diagonal") {
    auto& f = fx();
    const int n = f.g.size();
    auto bat = sequence_battery(n, 20, 8);
    for (Family fam : {Family::Besov, Family::TriebelLizorkin})
        for (Flavor fl : {Flavor::Classical, Flavor::Tilde}) {
            SpaceParams p = f.prm(0.0, fl, fam);
            Mat D = Mat::Zero(n, n);
            for (int k = 0; k < n; ++k) D(k, k) = (k % 3 == 0) ? -1.0 : 1.0;
            BoundednessReport r = boundedness_probe(f.g, NetMatrix{D, p, fl}, 0.5, f.seq, p, bat);
            CHECK(r.ad == 1.0);
            CHECK(r.max_ratio == doctest::Approx(1.0).epsilon(1e-13));
        }
}

TEST_CASE("W by triple loop") {
    auto& f = fx();
    SpaceParams p = f.prm();
    const double beta = 0.3, g1 = 0.7, g2 = 1.1;
    Mat W = lemma64_W(f.g, beta, g1, g2, p, Flavor::Classical);
    const int n = f.g.size();
    for (int x = 0; x < n; x += 17)
        for (int y = 0; y < n; y += 19) {
            double s = 0.0;
            for (int z = 0; z < n; ++z)
                s += omega2(f.g, x, z, beta, g1, p, Flavor::Classical) * omega2(f.g, z, y, beta, g2, p, Flavor::Classical);
            CHECK(W(x, y) == doctest::Approx(s).epsilon(1e-12));
        }
    for (int x = 0; x < n; ++x) CHECK(W(x, x) >= 1.0);
    WBoundReport r = w_bound_check(f.g, beta, g1, g2, p, Flavor::Classical);
    CHECK(std::isfinite(r.max_ratio));
    CHECK(r.max_ratio >= 1.0);
    CHECK_THROWS_AS(w_bound_check(f.g, 0.3, 0.7, 0.7, p, Flavor::Classical), PreconditionError);
    CHECK_THROWS_AS(w_bound_check(f.g, 2.0, 0.7, 1.1, p, Flavor::Classical), PreconditionError);
}

TEST_CASE("Neumann inversion") {
    auto& f = fx();
    SpaceParams p = f.prm();
    const int n = f.g.size();
    NetMatrix I{Mat::Identity(n, n), p, Flavor::Classical};
    NeumannResult ri = neumann_invert(f.g, I, 0.5);
    CHECK(ri.report.terms <= 1);
    CHECK((ri.inverse.a - Mat::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);

    Mat pert = omega_matrix(f.g, 0.5, 0.5, p, Flavor::Classical).cwiseProduct(random_signs(n, 9));
    NetMatrix A{Mat::Identity(n, n) + 0.01 * pert, p, Flavor::Classical};
    NeumannResult r = neumann_invert(f.g, A, 0.5);
    CHECK(r.report.d_norm == doctest::Approx(0.01));
    CHECK(r.report.bound_violations == 0);
    CHECK((A.a * r.inverse.a - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(r.report.residual_right <= 1e-9);
    CHECK(std::isfinite(r.report.inverse_ad));

    // past the threshold the precondition fails
    NetMatrix Bad{Mat::Identity(n, n) + (1.5 / r.report.c_star) * pert, p, Flavor::Classical};
    CHECK_THROWS_AS(neumann_invert(f.g, Bad, 0.5), PreconditionError);
}

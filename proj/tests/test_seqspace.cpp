#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "btl/seqspace.hpp"
#include "common.hpp"

using namespace btl;

namespace {

struct Fixture {
    ModelSpace m = btltest::cycle(32);
    SpectralData sd = eigendecompose(m);
    FramePair fp = build_frame_pair(m, sd, FrameConfig{});
    DoublingProfile prof = measure_doubling(m);
    FunctionNorms fn{m, sd, fp.window, 2.0, Mode::Homogeneous, make_cutoff(CutoffKind::C, 2.0)};
    FunctionNorms fnb{m, sd, fp.window, 2.0, Mode::Homogeneous, make_cutoff(CutoffKind::B, 2.0)};
    SequenceNorms seq{m, fp.hierarchy};

    SpaceParams prm(double s, double p, double q, Flavor fl, Family fam) const {
        SpaceParams r;
        r.s = s;
        r.p = p;
        r.q = q;
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

}  // namespace

TEST_CASE("J index") {
    SpaceParams p;
    p.s = 0;
    p.p = p.q = 2;
    p.d = 1.0;
    CHECK(p.J() == doctest::Approx(1.0));
    p.q = 0.5;
    CHECK(p.J() == doctest::Approx(2.0));
    p.family = Family::Besov;
    CHECK(p.J() == doctest::Approx(1.0));
}

TEST_CASE("eigenfunctions have unit (0,2,2) norm with the quadratic cutoff") {
    auto& f = fx();
    for (Family fam : {Family::TriebelLizorkin, Family::Besov})
        for (Flavor fl : {Flavor::Classical, Flavor::Tilde})
            for (int i = 1; i < f.sd.n(); i += 3) {
                Vec e = f.sd.E.col(i);
                CHECK(f.fn.norm(e, f.prm(0, 2, 2, fl, fam)) == doctest::Approx(f.sd.norm2(e)).epsilon(1e-10));
            }
}

TEST_CASE("(0,2,2) function norm is the L2 norm on mean-zero functions") {
    auto& f = fx();
    for (const Vec& g : btltest::random_mean_zero(32, 10, 2))
        CHECK(f.fn.norm(g, f.prm(0, 2, 2, Flavor::Classical, Family::Besov)) ==
              doctest::Approx(g.norm()).epsilon(1e-10));
}

TEST_CASE("maximal function of a point mass on C_8") {
    ModelSpace m = btltest::cycle(8);
    Vec f = Vec::Zero(8);
    f(0) = 1.0;
    Vec M = maximal_Mt(m, f, 1.0);
    // oracle: all open balls B(c, r) containing x
    for (int x = 0; x < 8; ++x) {
        double best = 0.0;
        for (int c = 0; c < 8; ++c)
            for (double r = 0.5; r <= 5.0; r += 0.5) {
                if (!(m.dist(c, x) < r)) continue;
                double vol = 0.0, mass = 0.0;
                for (int y = 0; y < 8; ++y)
                    if (m.dist(c, y) < r) {
                        vol += 1.0;
                        mass += std::abs(f(y));
                    }
                best = std::max(best, mass / vol);
            }
        CHECK(M(x) == doctest::Approx(best));
    }
    // constant function: ratio 1
    ProbeResult pr = fs_maximal_probe(m, {Vec::Ones(8)}, 2.0, 2.0, 1.0);
    CHECK(pr.ratio == doctest::Approx(1.0));
    CHECK_THROWS_AS(fs_maximal_probe(m, {Vec::Ones(8)}, 2.0, 2.0, 2.0), PreconditionError);
}

TEST_CASE("Hardy sums: unit sequence and the geometric bound") {
    const double b = 2.0, gamma = 1.0, q = 1.0;
    std::vector<double> a(20, 0.0);
    a[19] = 1.0;   // everything flows down from the top index
    HardyReport h = hardy_check(a, gamma, q, b);
    double geo = 0.0;
    for (int k = 0; k < 20; ++k) geo += std::pow(b, -k * gamma * q);
    CHECK(h.lhs1 == doctest::Approx(std::pow(geo, 1.0 / q)));
    CHECK(h.lhs1 <= 1.0 / (1.0 - std::pow(b, -gamma * q)));
    CHECK(h.pass);
    // q = 1 rearrangement bound on a random window
    std::vector<double> r{0.3, 2.0, 0.0, 1.5, 0.7, 0.1, 3.0};
    HardyReport hr = hardy_check(r, 0.5, 1.0, 2.0);
    double l1 = 0.0;
    for (double v : r) l1 += v;
    double geo2 = 0.0;
    for (int k = 0; k < 7; ++k) geo2 += std::pow(2.0, -0.5 * k);
    CHECK(hr.lhs1 <= geo2 * l1 + 1e-12);
    CHECK(hr.lhs2 <= geo2 * l1 + 1e-12);
    CHECK(hardy_constant(0.5, 1.0, 2.0) == doctest::Approx(1.0 / (1.0 - std::pow(2.0, -0.5))));
}

TEST_CASE("f-norm two ways for p = q") {
    auto& f = fx();
    const auto& h = f.fp.hierarchy;
    // band of |A_xi| / |B(xi, b^{-j})|
    double lo = 1e300, hi = 0.0;
    for (const Net& net : h.levels)
        for (size_t a = 0; a < net.centers.size(); ++a) {
            double r = net.a_vol[a] / net.scale_vol[a];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    SpaceParams p = f.prm(0.5, 1, 1, Flavor::Classical, Family::TriebelLizorkin);
    SpaceParams pb = f.prm(0.5, 1, 1, Flavor::Classical, Family::Besov);
    for (const Vec& t : btltest::random_mean_zero(f.seq.size(), 5, 4)) {
        double a = f.seq.f_norm(t, p), c = f.seq.f_norm_via_cells(t, p), b = f.seq.b_norm(t, pb);
        CHECK(c == doctest::Approx(a).epsilon(1e-12));
        // cells against balls: weights differ by (|A|/|B|)^{1/2} at p = 1
        CHECK(c / b >= std::sqrt(lo) * (1 - 1e-12));
        CHECK(c / b <= std::sqrt(hi) * (1 + 1e-12));
    }
}

TEST_CASE("frame characterization at (0,2,2)") {
    auto& f = fx();
    auto bat = btltest::random_mean_zero(32, 20, 9);
    auto rep = check_frame_characterization(f.sd, bat, f.prm(0, 2, 2, Flavor::Classical, Family::TriebelLizorkin),
                                            f.fp, f.fn, f.fnb, f.seq);
    CHECK(rep.min_ratio >= 0.05);
    CHECK(rep.max_ratio <= 20.0);
    CHECK(rep.reconstruction <= 1e-9);
    CHECK(rep.phi_ratio_lo > 0.0);
    CHECK(std::isfinite(rep.phi_ratio_hi));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "btl/compact.hpp"
#include "common.hpp"

using namespace btl;

namespace {

struct Fixture {
    ModelSpace m = btltest::cycle(32);
    SpectralData sd = eigendecompose(m);
    FramePair fp = build_frame_pair(m, sd, FrameConfig{});
    std::vector<Vec> bat = btltest::random_mean_zero(32, 20, 11);
};

Fixture& fx() {
    static Fixture f;
    return f;
}

}  // namespace

TEST_CASE("primal elements equal the scaled level kernel at the center") {
    auto& f = fx();
    // oracle kernel from an independent eigensolver (mu = 1)
    Eigen::SelfAdjointEigenSolver<Mat> es(f.m.L);
    const auto& h = f.fp.hierarchy;
    for (int k = 0; k < f.fp.primal.size(); k += 7) {
        int j = f.fp.primal.level[k], xi = f.fp.primal.center[k];
        Vec col = Vec::Zero(32);
        for (int i = 0; i < 32; ++i) {
            double u = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
            double psi = cutoff_psi(std::pow(h.b, -j) * u, h.b);
            col += psi * es.eigenvectors()(xi, i) * es.eigenvectors().col(i);
        }
        col *= std::sqrt(f.fp.primal.a_vol[k]);
        CHECK((f.fp.primal.values.col(k) - col).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("sampling, reconstruction and band leakage on C_32") {
    auto& f = fx();
    CHECK(f.fp.report.epsilon < 0.5);
    for (const auto& s : f.fp.report.sampling) CHECK(s.eps < 0.5);
    ReconstructionReport r = check_reconstruction(f.sd, f.fp.primal, f.fp.dual, f.bat);
    CHECK(r.dual_then_primal <= 1e-9);
    CHECK(r.primal_then_dual <= 1e-9);
    CHECK(band_leakage(f.sd, f.fp.dual) <= 1e-10);
    // direct residual, recomputed here
    for (const Vec& g : f.bat) {
        Vec rec = f.fp.primal.values * (f.fp.dual.values.transpose() * g);
        CHECK((rec - g).norm() <= 1e-9 * g.norm());
    }
}

TEST_CASE("single primal element is reproduced") {
    auto& f = fx();
    Vec g = f.fp.primal.values.col(40);
    Vec t = f.fp.dual.analysis(f.sd, g);
    CHECK((f.fp.primal.synthesis(t) - g).norm() <= 1e-9 * g.norm());
}

TEST_CASE("frame bounds are finite and bracket the Rayleigh quotients") {
    auto& f = fx();
    FrameBounds b = frame_bounds(f.sd, f.fp.dual);
    CHECK(b.lower > 0.0);
    CHECK(std::isfinite(b.upper));
    for (const Vec& g : f.bat) {
        double q = f.fp.dual.analysis(f.sd, g).squaredNorm() / f.sd.inner(g, g);
        CHECK(q >= b.lower * (1 - 1e-10));
        CHECK(q <= b.upper * (1 + 1e-10));
    }
}

TEST_CASE("frame properties: p = 2 norm band and shell decay") {
    auto& f = fx();
    auto rep = check_frame_properties(f.m, f.sd, f.fp.primal, f.fp.hierarchy);
    Eigen::SelfAdjointEigenSolver<Mat> es(f.m.L);
    const auto& h = f.fp.hierarchy;
    // |psi_xi|^2 = |A_xi| sum_i Psi(b^-j sqrt(l_i))^2 e_i(xi)^2; the edge levels of the
    // window see no eigenvalue in the support of Psi and are identically zero
    double lo = INFINITY, hi = 0.0;
    for (int k = 0; k < f.fp.primal.size(); ++k) {
        int j = f.fp.primal.level[k], xi = f.fp.primal.center[k];
        double e2 = 0.0;
        for (int i = 0; i < 32; ++i) {
            double psi = cutoff_psi(std::pow(h.b, -j) * std::sqrt(std::max(0.0, es.eigenvalues()(i))), h.b);
            e2 += psi * psi * std::pow(es.eigenvectors()(xi, i), 2);
        }
        e2 *= f.fp.primal.a_vol[k];
        double nrm = f.fp.primal.values.col(k).norm();
        CHECK(nrm * nrm == doctest::Approx(e2).epsilon(1e-10).scale(1.0));
        if (e2 == 0.0) continue;
        lo = std::min(lo, nrm);
        hi = std::max(hi, nrm);
    }
    CHECK(lo > 0.0);
    CHECK(hi <= 10.0);
    bool saw2 = false;
    for (const auto& nb : rep.norms)
        if (nb.p == 2.0) {
            saw2 = true;
            CHECK(nb.max_ratio == doctest::Approx(hi));
            CHECK(nb.min_ratio <= lo);
        }
    CHECK(saw2);
    CHECK(rep.shells > 0);
}

TEST_CASE("Theta vanishes to high order at zero") {
    ThetaSymbol th(2.0, 64.0, 2, 2, 8.0);
    CHECK(std::abs(th(0.0)) == 0.0);
    CHECK(std::abs(th.eval(0.0, 1)) == 0.0);
    CHECK(th.vanishing_order() >= 4);
    // far beyond the band Theta is negligible
    CHECK(std::abs(th(40.0)) < 1e-8);
}

TEST_CASE("compact pipeline on C_32") {
    auto& f = fx();
    DoublingProfile p = measure_doubling(f.m);
    SpaceParams prm;
    prm.d = p.d;
    prm.dstar = p.dstar;
    NetGeometry g = net_geometry(f.m, f.fp.hierarchy);
    SpeedCalibration sc = calibrate_speed_constant(f.m, f.sd);
    CompactPipeline pl = run_compact_pipeline(f.m, f.sd, f.fp, g, prm, p.d, sc.c_tilde, f.bat, CompactPipelineOptions{});
    CHECK(pl.dual.residual <= 1e-6);
    CHECK(pl.compact.support_violations == 0);
    CHECK(pl.dual.neumann.d_norm < pl.dual.neumann.threshold);
    REQUIRE(!pl.attempts.empty());
    CHECK(pl.attempts.back().accepted);
    // rejected attempts really failed the precondition
    for (size_t i = 0; i + 1 < pl.attempts.size(); ++i)
        CHECK(pl.attempts[i].d_norm >= pl.attempts[i].threshold);
}

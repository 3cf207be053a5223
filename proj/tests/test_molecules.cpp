#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "btl/molecules.hpp"
#include "common.hpp"

using namespace btl;

namespace {

struct Fixture {
    ModelSpace m = btltest::cycle(32);
    SpectralData sd = eigendecompose(m);
    FramePair fp = build_frame_pair(m, sd, FrameConfig{});
    DoublingProfile prof = measure_doubling(m);
    NetGeometry g = net_geometry(m, fp.hierarchy);
    FunctionNorms fn{m, sd, fp.window, 2.0, Mode::Homogeneous, make_cutoff(CutoffKind::C, 2.0)};
    SequenceNorms seq{m, fp.hierarchy};

    SpaceParams prm(double s = 0.0, Flavor fl = Flavor::Classical) const {
        SpaceParams r;
        r.s = s;
        r.flavor = fl;
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

TEST_CASE("orders at s = 0, p = q = 2, d = 1") {
    SpaceParams p;
    p.d = p.dstar = 1.0;
    MoleculeOrders o = compute_orders(p, Flavor::Classical);
    CHECK(o.J == 1.0);
    CHECK(o.K == 1);
    CHECK(o.N == 1);
    CHECK(o.M > o.M_threshold);
    CHECK_THROWS_AS(compute_orders(p, Flavor::Classical, 1.0), PreconditionError);
    p.s = 1.5;
    MoleculeOrders t = compute_orders(p, Flavor::Tilde);
    CHECK(t.M_threshold == doctest::Approx(2.5));
}

TEST_CASE("which conditions apply") {
    SpaceParams p;
    p.d = p.dstar = 1.0;
    auto cond = [&](double s, MoleculeKind k) {
        p.s = s;
        return molecule_conditions(compute_orders(p, Flavor::Classical), k, s);
    };
    MoleculeConditions c0 = cond(0.0, MoleculeKind::Synthesis);
    CHECK(c0.smooth);
    CHECK(c0.cancel);
    CHECK(!cond(2.0, MoleculeKind::Synthesis).cancel);
    CHECK(!cond(-1.0, MoleculeKind::Synthesis).smooth);
    CHECK(!cond(-1.0, MoleculeKind::Analysis).cancel);
    CHECK(!cond(2.0, MoleculeKind::Analysis).smooth);
}

TEST_CASE("atom orders") {
    SpaceParams p;
    p.d = 1.0;
    AtomOrders a = atom_orders(p);
    CHECK(a.K == 1);
    CHECK(a.K_tilde == 2);
    p.s = 5.0;
    AtomOrders b = atom_orders(p);
    CHECK(b.K == 0);
    CHECK(b.K_tilde == 4);
}

TEST_CASE("scaled frames are molecules and their Gram matrix is almost diagonal") {
    auto& f = fx();
    for (Flavor fl : {Flavor::Classical, Flavor::Tilde}) {
        SpaceParams p = f.prm(0.0, fl);
        auto cs = validate_molecule(f.m, f.sd, f.g, f.fp.primal.values, MoleculeKind::Synthesis, p, fl);
        auto ca = validate_molecule(f.m, f.sd, f.g, f.fp.dual.values, MoleculeKind::Analysis, p, fl);
        CHECK(std::isfinite(cs.max_constant));
        CHECK(std::isfinite(ca.max_constant));
        Mat S = cs.scaling() * f.fp.primal.values, A = ca.scaling() * f.fp.dual.values;
        auto again = validate_molecule(f.m, f.sd, f.g, S, MoleculeKind::Synthesis, p, fl);
        CHECK(again.max_constant == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(again.pass);
        std::vector<double> ds;
        for (int i = 1; i <= 40; ++i) ds.push_back(0.05 * i);
        GramCertificate gc = gram(f.m, f.g, S, A, p, fl, ds, 1.0);
        CHECK(gc.pass);
        CHECK(gc.best_delta > 0.0);
        // entries are inner products in mu
        CHECK(gc.a(3, 5) == doctest::Approx(A.col(3).dot(f.sd.mu.cwiseProduct(S.col(5)))).epsilon(1e-12).scale(1e-12));
    }
}

TEST_CASE("a family moved away from its centers fails the decay condition") {
    auto& f = fx();
    SpaceParams p = f.prm();
    auto base = validate_molecule(f.m, f.sd, f.g, f.fp.primal.values, MoleculeKind::Synthesis, p, Flavor::Classical);
    Mat moved(f.m.n, f.fp.primal.size());
    for (int k = 0; k < moved.cols(); ++k)
        for (int x = 0; x < f.m.n; ++x) moved(x, k) = f.fp.primal.values((x + 16) % f.m.n, k);
    MoleculeOptions o;
    o.budget = base.max_constant;
    auto bad = validate_molecule(f.m, f.sd, f.g, moved, MoleculeKind::Synthesis, p, Flavor::Classical, o);
    CHECK(!bad.pass);
    CHECK(bad.max_constant > o.budget);
}

TEST_CASE("molecular analysis with the dual frame gives frame coefficients") {
    auto& f = fx();
    SpaceParams p = f.prm();
    for (const Vec& g : btltest::random_mean_zero(32, 5, 21)) {
        MolecularAnalysis a = molecular_analysis(f.sd, g, f.fp.dual.values, f.fp, f.fn, f.seq, p);
        Vec ref = f.fp.dual.values.transpose() * f.sd.mu.cwiseProduct(g);
        CHECK((a.t - ref).cwiseAbs().maxCoeff() <= 1e-10 * ref.cwiseAbs().maxCoeff());
        CHECK(a.direct_gap <= 1e-9);
    }
}

TEST_CASE("molecular synthesis of a unit sequence") {
    auto& f = fx();
    SpaceParams p = f.prm();
    Vec t = Vec::Zero(f.fp.primal.size());
    t(17) = 1.0;
    MolecularSynthesis s = molecular_synthesis(t, f.fp.primal.values, f.fn, f.seq, p);
    double ref = f.fn.norm(f.fp.primal.values.col(17), p) / f.seq.norm(t, p);
    CHECK(s.ratio == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("band-limited frame elements are not atoms at a tight support budget") {
    auto& f = fx();
    AtomOptions o;
    o.support_budget = 2.0;
    AtomCertificate c = validate_atoms(f.m, f.sd, f.g, f.fp.primal.values, f.prm(), o);
    CHECK(!c.pass);
    CHECK(c.support_constant > 2.0);
}

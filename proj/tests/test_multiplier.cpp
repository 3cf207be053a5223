#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "btl/multiplier.hpp"
#include "common.hpp"

using namespace btl;

namespace {

struct Fixture {
    ModelSpace m = btltest::cycle(32);
    SpectralData sd = eigendecompose(m);
    FramePair fp = build_frame_pair(m, sd, FrameConfig{});
    DoublingProfile prof = measure_doubling(m);
    FunctionNorms fn{m, sd, fp.window, 2.0, Mode::Homogeneous, make_cutoff(CutoffKind::C, 2.0)};
    std::vector<Vec> bat = btltest::random_mean_zero(32, 10, 31);

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

}  // namespace

TEST_CASE("expression grammar") {
    auto m = SymbolExpr::parse("lambda^2/(1+lambda^2)");
    CHECK(m(2.0) == doctest::Approx(0.8));
    CHECK(m(-2.0) == doctest::Approx(0.8));
    // m' = 2l / (1 + l^2)^2
    for (double l : {0.3, 1.0, 2.5}) {
        CHECK(m.derivative(l, 1) == doctest::Approx(2 * l / std::pow(1 + l * l, 2)).epsilon(1e-12));
        CHECK(m.derivative(l, 2) == doctest::Approx((2 - 6 * l * l) / std::pow(1 + l * l, 3)).epsilon(1e-12));
    }
    CHECK(SymbolExpr::parse("-x^2")(3.0) == doctest::Approx(-9.0));
    CHECK(SymbolExpr::parse("2^3^2")(0.0) == doctest::Approx(512.0));
    CHECK(SymbolExpr::parse("exp(-λ^2)")(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(SymbolExpr::parse("sqrt(abs(x)) + cos(pi*x)")(4.0) == doctest::Approx(3.0));
    CHECK(SymbolExpr::parse("x^-1")(4.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(SymbolExpr::parse("x +"), PreconditionError);
    CHECK_THROWS_AS(SymbolExpr::parse("foo(x)"), PreconditionError);
    CHECK_THROWS_AS(SymbolExpr::parse("(x"), PreconditionError);
    // fractional powers parse but need a positive base
    auto root = SymbolExpr::parse("x^0.5");
    CHECK(root(4.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(root(-1.0), PreconditionError);
}

TEST_CASE("Mihlin constant of l^2/(1+l^2)") {
    auto& f = fx();
    auto m = SymbolExpr::parse("lambda^2/(1+lambda^2)");
    // oracle: sup |l m'(l)| = sup 2 l^2 / (1 + l^2)^2 = 1/2 at l = 1
    double sup1 = 0.0;
    for (int i = 0; i <= 200000; ++i) {
        double l = 1e-3 * std::pow(1e6, i / 200000.0);
        sup1 = std::max(sup1, 2 * l * l / std::pow(1 + l * l, 2));
    }
    CHECK(sup1 == doctest::Approx(0.5).epsilon(1e-8));
    MihlinSymbol ms = check_mihlin(m, 4, f.prm(), f.sd, 2.0);
    REQUIRE(ms.sup_per_order.size() >= 2);
    CHECK(ms.sup_per_order[0] <= 1.0);
    CHECK(ms.sup_per_order[1] == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(!ms.range_restricted);
    CHECK(ms.spectrum_sup == doctest::Approx(4.0 / 5.0));
    CHECK_THROWS_AS(check_mihlin(m, 1, f.prm(), f.sd, 2.0), PreconditionError);
}

TEST_CASE("m = lambda is only range restricted, and needs the even extension") {
    auto& f = fx();
    auto m = SymbolExpr::parse("lambda");
    CHECK_THROWS_AS(check_mihlin(m, 4, f.prm(), f.sd, 2.0), PreconditionError);
    MihlinOptions o;
    o.even_extension = true;
    MihlinSymbol ms = check_mihlin(m, 4, f.prm(), f.sd, 2.0, o);
    CHECK(ms.even_extended);
    CHECK(ms.range_restricted);
    CHECK(ms.widened_sup > ms.mihlin_sup);
}

TEST_CASE("Ahlfors scan on the cycle") {
    auto& f = fx();
    AhlforsScan a = ahlfors_scan(f.m, 1.0);
    // |B(x,r)| = 2 ceil(r) - 1 against r on the cycle: worst at r = 1 and r = diameter
    double c4 = 0.0;
    for (int r = 1; r <= 16; ++r) {
        double v = std::min(32.0, 2.0 * r - 1.0);
        c4 = std::max({c4, v / r, r / v});
    }
    CHECK(a.c4 == doctest::Approx(c4));
    CHECK(a.regular == (c4 <= 4.0));
}

TEST_CASE("multiplier routes and the heat symbol") {
    auto& f = fx();
    auto m = SymbolExpr::parse("lambda^2/(1+lambda^2)");
    for (const Vec& g : f.bat) CHECK(apply_multiplier(f.sd, m.symbol(), g, f.fp).gap <= 1e-9);
    auto heat = SymbolExpr::parse("exp(-lambda^2)");
    Kernel h = heat_kernel(f.sd, 1.0);
    for (const Vec& g : f.bat) {
        auto r = apply_multiplier(f.sd, heat.symbol(), g, f.fp);
        CHECK((r.direct - h.apply(g)).norm() <= 1e-12 * g.norm());
    }
    CHECK(multiplicativity_gap(f.sd, m.symbol(), heat.symbol(), f.bat) <= 1e-10);
}

TEST_CASE("boundedness ratio at (0,2,2) stays below sup |m|") {
    auto& f = fx();
    auto m = SymbolExpr::parse("lambda^2/(1+lambda^2)");
    std::vector<SpaceParams> grid{f.prm(), f.prm(0.0, Flavor::Tilde), f.prm(0.0, Flavor::Classical, Family::Besov)};
    Vec sl = f.sd.sqrt_lambda();
    double sup = 0.0;
    for (int i = 1; i < sl.size(); ++i) sup = std::max(sup, m(sl(i)));
    for (const auto& row : boundedness_report(f.sd, m.symbol(), grid, f.bat, f.fn)) {
        CHECK(row.samples == 10);
        CHECK(row.max_ratio <= sup + 1e-9);
    }
    // oscillating symbols have larger Mihlin constants
    auto slow = SymbolExpr::parse("cos(lambda)"), fast = SymbolExpr::parse("cos(8*lambda)");
    MihlinOptions o;
    double a = check_mihlin(slow, 4, f.prm(), f.sd, 2.0, o).mihlin_sup;
    double b = check_mihlin(fast, 4, f.prm(), f.sd, 2.0, o).mihlin_sup;
    CHECK(b > a);
}

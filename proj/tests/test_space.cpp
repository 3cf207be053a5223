#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "btl/space.hpp"
#include "common.hpp"

using namespace btl;
using btltest::cycle;
using btltest::path;
using btltest::torus;

TEST_CASE("cycle distances and the two point path") {
    ModelSpace c8 = cycle(8);
    CHECK(c8.n == 8);
    CHECK(c8.dist(0, 3) == 3.0);
    CHECK(c8.dist(0, 5) == 3.0);
    ModelSpace p2 = path(2);
    CHECK(p2.L(0, 0) == doctest::Approx(1.0));
    CHECK(p2.L(0, 1) == doctest::Approx(-1.0));
    CHECK(p2.L(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("torus balls are five points at radius 1.5") {
    ModelSpace t = torus(4);
    for (int x = 0; x < t.n; ++x) {
        CHECK(ball(t, x, 1.5).points.size() == 5);
        CHECK(ball_volume(t, x, 1.5) == 5.0);
    }
}

TEST_CASE("bad models are rejected") {
    ModelSpec s;
    s.kind = GraphKind::Tree;
    s.n = 4;
    s.edges = {{0, 1, 1.0}, {2, 3, 1.0}};
    CHECK_THROWS_AS(build_model(s), PreconditionError);
    ModelSpec w;
    w.n = 8;
    w.mu = {1.0, 2.0};
    CHECK_THROWS_AS(build_model(w), PreconditionError);
}

TEST_CASE("doubling constant of C_64 from closed-form ball sizes") {
    ModelSpace m = cycle(64);
    // |B(x,r)| = min(n, 2 ceil(r) - 1) for the open ball on a cycle
    auto vol = [](double r) { return std::min(64.0, 2.0 * std::ceil(r) - 1.0); };
    double c0 = 0.0;
    for (int k = 0; k < 64; ++k)
        for (double e : {1e-9, 0.25, 0.5, 0.75}) {
            double r = k + e;
            if (r <= 0) continue;
            c0 = std::max(c0, vol(2 * r) / vol(r));
        }
    DoublingProfile p = measure_doubling(m);
    CHECK(p.c0 == doctest::Approx(c0));
    CHECK(p.d == doctest::Approx(std::log2(c0)));
    CHECK(p.dstar <= p.d);
}

TEST_CASE("greedy nets") {
    ModelSpace p10 = path(10);
    CHECK(build_maximal_net(p10, 2.0) == std::vector<int>{0, 2, 4, 6, 8});

    ModelSpace c8 = cycle(8);
    auto centers = build_maximal_net(c8, 3.0);
    CHECK(centers == std::vector<int>{0, 3});
    // brute-force separation and maximality
    for (size_t a = 0; a < centers.size(); ++a)
        for (size_t b = a + 1; b < centers.size(); ++b) CHECK(c8.dist(centers[a], centers[b]) >= 3.0);
    for (int x = 0; x < 8; ++x) {
        double dmin = 1e9;
        for (int c : centers) dmin = std::min(dmin, c8.dist(x, c));
        CHECK(dmin < 3.0);
    }
}

TEST_CASE("partition is nearest center with lowest index on ties") {
    ModelSpace c8 = cycle(8);
    std::vector<int> centers{0, 3};
    auto owner = build_partition(c8, centers, 3.0);
    for (int x = 0; x < 8; ++x) {
        int best = 0;
        for (int k = 1; k < 2; ++k)
            if (c8.dist(x, centers[k]) < c8.dist(x, centers[best])) best = k;
        CHECK(owner[x] == best);
        // sandwich: B(xi, 1.5) inside A_xi inside B(xi, 3)
        CHECK(c8.dist(x, centers[owner[x]]) < 3.0);
    }
    for (int k = 0; k < 2; ++k)
        for (int x = 0; x < 8; ++x)
            if (c8.dist(x, centers[k]) < 1.5) CHECK(owner[x] == k);
    CHECK(check_net(c8, centers, owner, 3.0).ok());
}

TEST_CASE("net hierarchy invariants") {
    ModelSpace m = cycle(32);
    NetHierarchy h = build_hierarchy(m, 2.0, 1.0, -5, 2);
    for (size_t i = 0; i < h.levels.size(); ++i) {
        const Net& net = h.levels[i];
        CHECK(net.delta == doctest::Approx(std::pow(2.0, -net.level - 2)));
        CHECK(check_net(m, net.centers, net.owner, net.delta).ok());
        double total = 0.0;
        for (double a : net.a_vol) total += a;
        CHECK(total == doctest::Approx(32.0));
    }
}

TEST_CASE("net point count on C_8 and P_10") {
    ModelSpace c8 = cycle(8);
    DoublingProfile p = measure_doubling(c8);
    std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
    CountReport r = check_net_count(c8, all, 1.0, 2.0, p);
    CHECK(r.lhs_max == 3.0);
    CHECK(r.rhs == doctest::Approx(p.c0 * std::pow(6.0, p.d) * std::pow(2.0, p.d)));
    CHECK(r.pass);
    CHECK_THROWS_AS(check_net_count(c8, all, 2.0, 1.0, p), PreconditionError);

    ModelSpace p10 = path(10);
    DoublingProfile pp = measure_doubling(p10);
    std::vector<int> net{0, 2, 4, 6, 8};
    int worst = 0;
    for (int x = 0; x < 10; ++x) {
        int cnt = 0;
        for (int c : net) cnt += p10.dist(x, c) < 4.0 ? 1 : 0;
        worst = std::max(worst, cnt);
    }
    CountReport q = check_net_count(p10, net, 2.0, 4.0, pp);
    CHECK(q.lhs_max == worst);
    CHECK(q.pass);
}

TEST_CASE("net sums against direct summation") {
    ModelSpace m = cycle(64);
    DoublingProfile p = measure_doubling(m);
    auto net = build_maximal_net(m, 1.0);
    const double sigma = 2.0;
    SumReport s = check_net_sum(m, net, 1.0, 2.0, sigma, p);
    double bound = p.c0 * std::pow(6.0, p.d) * std::pow(2.0, sigma) / (1.0 - std::pow(2.0, p.d - sigma)) *
                   std::pow(2.0, p.d);
    double worst = 0.0;
    for (int x = 0; x < m.n; ++x) {
        double sum = 0.0;
        for (int c : net) sum += std::pow(1.0 + m.dist(x, c) / 2.0, -sigma);
        worst = std::max(worst, sum);
    }
    CHECK(s.ratio == doctest::Approx(worst / bound));
    CHECK(s.pass);

    SumReport d = check_discrete_sum(m, net, 1.0, sigma, 2.0, 2.0, p);
    CHECK(d.pass);
    CHECK(d.ratio > 0.0);
    CHECK_THROWS_AS(check_discrete_sum(m, net, 1.0, 1.0, 2.0, 2.0, p), PreconditionError);
}

TEST_CASE("Peetre integrals on C_32") {
    ModelSpace m = cycle(32);
    DoublingProfile p = measure_doubling(m);
    PeetreReport r = check_peetre_integrals(m, 2.0, 2.0, 2.0, 2.0, p);
    // direct single-integral constant
    double c = 0.0;
    for (int x = 0; x < m.n; ++x) {
        double s = 0.0;
        for (int u = 0; u < m.n; ++u) s += std::pow(1.0 + m.dist(x, u) / 2.0, -2.0);
        c = std::max(c, s / ball_volume(m, x, 2.0));
    }
    CHECK(r.c_single == doctest::Approx(c));
    CHECK(std::isfinite(r.c_pair));
    // delta beyond the diameter: constant 1 suffices
    PeetreReport big = check_peetre_integrals(m, 2.0, 2.0, 64.0, 64.0, p);
    CHECK(big.c_single <= 1.0 + 1e-12);
}

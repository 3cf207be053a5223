#include "btl/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace btl {

const char* to_string(Flavor f) { return f == Flavor::Classical ? "classical" : "tilde"; }
const char* to_string(Family f) { return f == Family::Besov ? "besov" : "triebel_lizorkin"; }
const char* to_string(Mode m) { return m == Mode::Homogeneous ? "homogeneous" : "inhomogeneous"; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Graph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj;  // (neighbor, length)
    void add(int u, int v, double len) {
        adj[u].push_back({v, len});
        adj[v].push_back({u, len});
    }
};

Graph make_graph(const ModelSpec& s) {
    Graph g;
    switch (s.kind) {
    case GraphKind::Cycle:
        if (s.n < 3) throw PreconditionError("cycle needs n >= 3");
        g.n = s.n;
        g.adj.resize(g.n);
        for (int i = 0; i < s.n; ++i) g.add(i, (i + 1) % s.n, 1.0);
        break;
    case GraphKind::Path:
        if (s.n < 2) throw PreconditionError("path needs n >= 2");
        g.n = s.n;
        g.adj.resize(g.n);
        for (int i = 0; i + 1 < s.n; ++i) g.add(i, i + 1, 1.0);
        break;
    case GraphKind::Torus: {
        if (s.n < 3) throw PreconditionError("torus needs n >= 3");
        g.n = s.n * s.n;
        g.adj.resize(g.n);
        for (int r = 0; r < s.n; ++r)
            for (int c = 0; c < s.n; ++c) {
                int v = r * s.n + c;
                g.add(v, r * s.n + (c + 1) % s.n, 1.0);
                g.add(v, ((r + 1) % s.n) * s.n + c, 1.0);
            }
        break;
    }
    case GraphKind::Tree:
        if (s.n < 2) throw PreconditionError("tree needs at least 2 vertices");
        g.n = s.n;
        g.adj.resize(g.n);
        for (const auto& e : s.edges) {
            if (e.u < 0 || e.v < 0 || e.u >= s.n || e.v >= s.n || e.u == e.v)
                throw PreconditionError("tree edge endpoint out of range");
            if (!(e.length > 0.0)) throw PreconditionError("tree edge length must be positive");
            g.add(e.u, e.v, e.length);
        }
        break;
    }
    return g;
}

Mat shortest_paths(const Graph& g) {
    Mat d = Mat::Constant(g.n, g.n, kInf);
    using Item = std::pair<double, int>;
    for (int s = 0; s < g.n; ++s) {
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        d(s, s) = 0.0;
        pq.push({0.0, s});
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du > d(s, u)) continue;
            for (auto [v, len] : g.adj[u]) {
                if (du + len < d(s, v)) {
                    d(s, v) = du + len;
                    pq.push({d(s, v), v});
                }
            }
        }
    }
    return d;
}

}  // namespace

std::vector<double> ModelSpace::distinct_distances() const {
    std::vector<double> v;
    v.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (dist(i, j) > 0.0) v.push_back(dist(i, j));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::string describe(const ModelSpec& s) {
    std::ostringstream os;
    switch (s.kind) {
    case GraphKind::Cycle: os << "C_" << s.n; break;
    case GraphKind::Path: os << "P_" << s.n; break;
    case GraphKind::Torus: os << "T_" << s.n << "x" << s.n; break;
    case GraphKind::Tree: os << "tree_" << s.n; break;
    }
    return os.str();
}

ModelSpace build_model(const ModelSpec& spec) {
    Graph g = make_graph(spec);
    ModelSpace m;
    m.name = describe(spec);
    m.n = g.n;
    m.dist = shortest_paths(g);
    if (!m.dist.allFinite()) throw PreconditionError("graph is disconnected");

    if (spec.mu.empty()) {
        m.mu = Vec::Ones(m.n);
    } else {
        if (static_cast<int>(spec.mu.size()) != m.n) throw PreconditionError("mu has wrong length");
        m.mu = Eigen::Map<const Vec>(spec.mu.data(), m.n);
    }

    if (spec.L) {
        m.L = *spec.L;
        if (m.L.rows() != m.n || m.L.cols() != m.n) throw PreconditionError("L has wrong shape");
    } else {
        // Symmetric conductances; L = diag(mu)^{-1}(D - W) is self-adjoint in the mu inner product.
        Mat W = Mat::Zero(m.n, m.n);
        for (int u = 0; u < g.n; ++u)
            for (auto [v, len] : g.adj[u]) W(u, v) += 1.0 / (len * len);
        Vec deg = W.rowwise().sum();
        m.L = spec.scale * (Mat(deg.asDiagonal()) - W);
        for (int x = 0; x < m.n; ++x) m.L.row(x) /= m.mu(x);
    }
    validate_model(m);
    return m;
}

void validate_model(const ModelSpace& m) {
    const int n = m.n;
    if (m.dist.rows() != n || m.mu.size() != n || m.L.rows() != n) throw PreconditionError("inconsistent model sizes");
    for (int x = 0; x < n; ++x) {
        if (!(m.mu(x) > 0.0)) throw PreconditionError("mu must be positive");
        if (m.dist(x, x) != 0.0) throw PreconditionError("distance diagonal must vanish");
        for (int y = 0; y < n; ++y) {
            if (m.dist(x, y) != m.dist(y, x)) throw PreconditionError("distance not symmetric");
            if (x != y && !(m.dist(x, y) > 0.0)) throw PreconditionError("distinct points at distance 0");
        }
    }
    for (int z = 0; z < n; ++z)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (m.dist(x, y) > m.dist(x, z) + m.dist(z, y) + 1e-12 * m.dist(x, y))
                    throw PreconditionError("triangle inequality fails");

    const double Lnorm = std::max(m.L.cwiseAbs().maxCoeff(), 1e-300);
    Mat S = m.mu.asDiagonal() * m.L;  // must be symmetric
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-12 * Lnorm * m.mu.maxCoeff())
        throw PreconditionError("L is not self-adjoint in the mu inner product");
    if ((m.L * Vec::Ones(n)).cwiseAbs().maxCoeff() > 1e-10 * Lnorm)
        throw PreconditionError("L does not annihilate constants");
    Vec rs = m.mu.cwiseSqrt();
    Vec rsi = rs.cwiseInverse();
    Mat sym = rs.asDiagonal() * m.L * rsi.asDiagonal();
    sym = 0.5 * (sym + sym.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver failed in model validation");
    if (es.eigenvalues().minCoeff() < -1e-10 * Lnorm) throw PreconditionError("L is not positive semidefinite");
}

Ball ball(const ModelSpace& m, int x, double r) {
    Ball b;
    for (int y = 0; y < m.n; ++y)
        if (m.dist(x, y) < r) {
            b.points.push_back(y);
            b.volume += m.mu(y);
        }
    return b;
}

double ball_volume(const ModelSpace& m, int x, double r) {
    double v = 0.0;
    for (int y = 0; y < m.n; ++y)
        if (m.dist(x, y) < r) v += m.mu(y);
    return v;
}

namespace {

// Per-point sorted distance profile for fast open-ball volumes.
struct BallTable {
    std::vector<std::vector<double>> d;   // sorted distances from x
    std::vector<std::vector<double>> cum; // cum[x][k] = sum of mu over first k entries

    explicit BallTable(const ModelSpace& m) : d(m.n), cum(m.n) {
        for (int x = 0; x < m.n; ++x) {
            std::vector<int> idx(m.n);
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end(), [&](int a, int b) { return m.dist(x, a) < m.dist(x, b); });
            d[x].resize(m.n);
            cum[x].assign(m.n + 1, 0.0);
            for (int k = 0; k < m.n; ++k) {
                d[x][k] = m.dist(x, idx[k]);
                cum[x][k + 1] = cum[x][k] + m.mu(idx[k]);
            }
        }
    }
    double volume(int x, double r) const {
        auto it = std::lower_bound(d[x].begin(), d[x].end(), r);
        return cum[x][it - d[x].begin()];
    }
};

}  // namespace

DoublingProfile measure_doubling(const ModelSpace& m, double r_min, double r_max) {
    if (!(r_min > 0.0) || !(r_max >= r_min)) throw PreconditionError("degenerate radius range");
    const double diam = m.diameter();
    std::vector<double> radii;
    for (double r : m.distinct_distances())
        if (r >= r_min && r <= r_max) radii.push_back(r);
    if (radii.empty()) throw PreconditionError("degenerate radius range: no distance values inside");

    BallTable bt(m);
    DoublingProfile p;
    p.r_min = r_min;
    p.r_max = r_max;
    p.c0 = 0.0;
    p.c2 = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        const bool saturated = 2.0 * r > diam;
        if (saturated) p.truncated = true;
        for (int x = 0; x < m.n; ++x) {
            double ratio = bt.volume(x, 2.0 * r) / bt.volume(x, r);
            p.c0 = std::max(p.c0, ratio);
            if (!saturated) p.c2 = std::min(p.c2, ratio);
        }
    }
    if (!std::isfinite(p.c2)) p.c2 = 1.0;
    p.d = std::log2(p.c0);
    p.dstar = std::log2(p.c2);
    return p;
}

DoublingProfile measure_doubling(const ModelSpace& m) {
    auto dd = m.distinct_distances();
    return measure_doubling(m, dd.front(), m.diameter());
}

std::vector<int> build_maximal_net(const ModelSpace& m, double delta, const std::vector<int>& order) {
    if (!(delta > 0.0)) throw PreconditionError("net separation must be positive");
    std::vector<int> ord = order;
    if (ord.empty()) {
        ord.resize(m.n);
        std::iota(ord.begin(), ord.end(), 0);
    }
    std::vector<int> centers;
    for (int x : ord) {
        bool ok = true;
        for (int c : centers)
            if (m.dist(x, c) < delta) { ok = false; break; }
        if (ok) centers.push_back(x);
    }
    return centers;
}

std::vector<int> build_partition(const ModelSpace& m, const std::vector<int>& centers, double delta) {
    std::vector<int> owner(m.n, -1);
    for (int x = 0; x < m.n; ++x) {
        double best = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < centers.size(); ++k) {
            double dd = m.dist(x, centers[k]);
            if (dd < best) { best = dd; owner[x] = static_cast<int>(k); }
        }
    }
    // Safety check of the sandwich property.
    for (int x = 0; x < m.n; ++x) {
        const int c = centers[owner[x]];
        if (!(m.dist(x, c) < delta)) throw Error("partition violates A_xi ⊂ B(xi, delta)");
    }
    return owner;
}

NetCheck check_net(const ModelSpace& m, const std::vector<int>& centers, const std::vector<int>& owner,
                   double delta) {
    NetCheck r;
    for (size_t a = 0; a < centers.size(); ++a)
        for (size_t b = a + 1; b < centers.size(); ++b)
            if (m.dist(centers[a], centers[b]) < delta) ++r.separation_violations;
    for (int x = 0; x < m.n; ++x) {
        bool covered = false;
        for (int c : centers)
            if (m.dist(x, c) < delta) { covered = true; break; }
        if (!covered) ++r.maximality_violations;
    }
    if (static_cast<int>(owner.size()) != m.n) {
        r.cover_violations = m.n;
        return r;
    }
    for (int x = 0; x < m.n; ++x) {
        if (owner[x] < 0 || owner[x] >= static_cast<int>(centers.size())) { ++r.cover_violations; continue; }
        const int own = centers[owner[x]];
        if (!(m.dist(x, own) < delta)) ++r.sandwich_violations;
        for (size_t k = 0; k < centers.size(); ++k)
            if (static_cast<int>(k) != owner[x] && m.dist(x, centers[k]) < delta / 2) ++r.sandwich_violations;
    }
    for (size_t k = 0; k < centers.size(); ++k)
        if (owner[centers[k]] != static_cast<int>(k)) ++r.cover_violations;
    return r;
}

int NetHierarchy::size() const {
    int s = 0;
    for (const auto& l : levels) s += static_cast<int>(l.centers.size());
    return s;
}

int NetHierarchy::offset(int level_index) const {
    int s = 0;
    for (int i = 0; i < level_index; ++i) s += static_cast<int>(levels[i].centers.size());
    return s;
}

std::vector<int> NetHierarchy::level_of() const {
    std::vector<int> v;
    for (const auto& l : levels) v.insert(v.end(), l.centers.size(), l.level);
    return v;
}

std::vector<int> NetHierarchy::center_of() const {
    std::vector<int> v;
    for (const auto& l : levels) v.insert(v.end(), l.centers.begin(), l.centers.end());
    return v;
}

Net build_net(const ModelSpace& m, int j, double b, double gamma) {
    Net net;
    net.level = j;
    net.delta = gamma * std::pow(b, -j - 2);
    net.ell = std::pow(b, -j);
    net.centers = build_maximal_net(m, net.delta);
    net.owner = build_partition(m, net.centers, net.delta);
    const size_t k = net.centers.size();
    net.a_vol.assign(k, 0.0);
    for (int x = 0; x < m.n; ++x) net.a_vol[net.owner[x]] += m.mu(x);
    net.b_vol.resize(k);
    net.scale_vol.resize(k);
    for (size_t i = 0; i < k; ++i) {
        net.b_vol[i] = ball_volume(m, net.centers[i], net.delta);
        net.scale_vol[i] = ball_volume(m, net.centers[i], net.ell);
    }
    return net;
}

NetHierarchy build_hierarchy(const ModelSpace& m, double b, double gamma, int j_min, int j_max, Mode mode) {
    if (!(b > 1.0)) throw PreconditionError("scale base b must exceed 1");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw PreconditionError("gamma must lie in (0,1]");
    if (j_max < j_min) throw PreconditionError("empty level window");
    if (mode == Mode::Inhomogeneous && j_min < 0) throw PreconditionError("inhomogeneous window must start at j >= 0");
    NetHierarchy h;
    h.b = b;
    h.gamma = gamma;
    h.mode = mode;
    for (int j = j_min; j <= j_max; ++j) h.levels.push_back(build_net(m, j, b, gamma));
    return h;
}

CountReport check_net_count(const ModelSpace& m, const std::vector<int>& centers, double delta,
                            double delta_star, const DoublingProfile& prof) {
    if (!(delta > 0.0) || delta_star < delta) throw PreconditionError("need 0 < delta <= delta_star");
    CountReport r;
    r.rhs = prof.c0 * std::pow(6.0, prof.d) * std::pow(delta_star / delta, prof.d);
    for (int x = 0; x < m.n; ++x) {
        int cnt = 0;
        for (int c : centers)
            if (m.dist(x, c) < delta_star) ++cnt;
        if (cnt > r.lhs_max) { r.lhs_max = cnt; r.argmax = x; }
    }
    r.pass = r.lhs_max <= r.rhs;
    return r;
}

double net_sum_constant(double sigma, const DoublingProfile& prof) {
    if (!(sigma > prof.d)) throw PreconditionError("sigma must exceed d");
    return prof.c0 * std::pow(6.0, prof.d) * std::pow(2.0, sigma) / (1.0 - std::pow(2.0, prof.d - sigma));
}

SumReport check_net_sum(const ModelSpace& m, const std::vector<int>& centers, double delta, double delta_star,
                        double sigma, const DoublingProfile& prof) {
    if (!(delta > 0.0) || delta_star < delta) throw PreconditionError("need 0 < delta <= delta_star");
    SumReport r;
    r.rhs = net_sum_constant(sigma, prof) * std::pow(delta_star / delta, prof.d);
    for (int x = 0; x < m.n; ++x) {
        double s = 0.0;
        for (int c : centers) s += std::pow(1.0 + m.dist(x, c) / delta_star, -sigma);
        if (s / r.rhs > r.ratio) { r.ratio = s / r.rhs; r.lhs = s; r.worst_x = x; }
    }
    r.pass = r.ratio <= 1.0;
    return r;
}

SumReport check_discrete_sum(const ModelSpace& m, const std::vector<int>& centers, double delta, double sigma,
                             double delta1, double delta2, const DoublingProfile& prof) {
    if (!(sigma > prof.d)) throw PreconditionError("sigma must exceed d");
    if (!(delta > 0.0 && delta <= delta1 && delta1 <= delta2)) throw PreconditionError("need 0 < delta <= delta1 <= delta2");
    const double c = net_sum_constant(sigma, prof) * (std::pow(2.0, sigma) + std::pow(4.0, sigma));
    const double scale = c * std::pow(delta1 / delta, prof.d);
    const size_t k = centers.size();
    Mat fx(m.n, k), fy(m.n, k);
    for (int x = 0; x < m.n; ++x)
        for (size_t i = 0; i < k; ++i) {
            fx(x, i) = std::pow(1.0 + m.dist(x, centers[i]) / delta1, -sigma);
            fy(x, i) = std::pow(1.0 + m.dist(x, centers[i]) / delta2, -sigma);
        }
    Mat lhs = fx * fy.transpose();
    SumReport r;
    for (int x = 0; x < m.n; ++x)
        for (int y = 0; y < m.n; ++y) {
            double rhs = scale * std::pow(1.0 + m.dist(x, y) / delta2, -sigma);
            double ratio = lhs(x, y) / rhs;
            if (ratio > r.ratio) {
                r.ratio = ratio;
                r.lhs = lhs(x, y);
                r.rhs = rhs;
                r.worst_x = x;
                r.worst_y = y;
            }
        }
    r.pass = r.ratio <= 1.0;
    return r;
}

PeetreReport check_peetre_integrals(const ModelSpace& m, double sigma1, double sigma2, double delta1,
                                    double delta2, const DoublingProfile& prof) {
    if (!(sigma1 > prof.d && sigma2 > prof.d)) throw PreconditionError("exponents must exceed d");
    if (!(delta1 > 0.0 && delta2 > 0.0)) throw PreconditionError("scales must be positive");
    const int n = m.n;
    Mat g1(n, n), g2(n, n);
    for (int x = 0; x < n; ++x)
        for (int u = 0; u < n; ++u) {
            g1(x, u) = std::pow(1.0 + m.dist(x, u) / delta1, -sigma1);
            g2(x, u) = std::pow(1.0 + m.dist(x, u) / delta2, -sigma2);
        }
    Vec v1(n), v2(n);
    for (int x = 0; x < n; ++x) {
        v1(x) = ball_volume(m, x, delta1);
        v2(x) = ball_volume(m, x, delta2);
    }
    PeetreReport r;
    for (int x = 0; x < n; ++x) r.c_single = std::max(r.c_single, g1.row(x).dot(m.mu) / v1(x));
    Mat I = g1 * m.mu.asDiagonal() * g2.transpose();
    const double dmax = std::max(delta1, delta2);
    const double e_a = std::min(sigma1 - prof.d, sigma2);
    const double e_b = std::min(sigma1, sigma2 - prof.d);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const double rho = m.dist(x, y);
            double rhs1 = v1(x) * std::pow(1.0 + rho / delta2, -sigma2) + v2(y) * std::pow(1.0 + rho / delta1, -sigma1);
            double rhs2a = v1(x) * std::pow(1.0 + rho / dmax, -e_a);
            double rhs2b = v2(y) * std::pow(1.0 + rho / dmax, -e_b);
            r.c_pair = std::max(r.c_pair, I(x, y) / rhs1);
            r.c_pair_a = std::max(r.c_pair_a, I(x, y) / rhs2a);
            r.c_pair_b = std::max(r.c_pair_b, I(x, y) / rhs2b);
        }
    return r;
}

}  // namespace btl

#pragma once
// Finite metric-measure models, ball geometry, doubling measurement,
// maximal nets with their partitions, and the counting/summation lemmas.

#include <optional>
#include <string>
#include <vector>

#include "btl/types.hpp"

namespace btl {

enum class GraphKind { Cycle, Torus, Path, Tree };

struct TreeEdge {
    int u = 0;
    int v = 0;
    double length = 1.0;
};

struct ModelSpec {
    GraphKind kind = GraphKind::Cycle;
    int n = 8;                       // C_n, P_n, n×n torus, or vertex count for trees
    std::vector<TreeEdge> edges;     // tree only
    double scale = 1.0;              // L = scale · graph Laplacian
    std::vector<double> mu;          // empty: uniform 1
    std::optional<Mat> L;            // explicit operator table (overrides the Laplacian)
};

struct ModelSpace {
    std::string name;
    int n = 0;
    Mat dist;   // symmetric, zero diagonal
    Vec mu;     // positive weights
    Mat L;      // (Lf)(x) = sum_y L(x,y) f(y); self-adjoint in the mu inner product

    double diameter() const { return dist.maxCoeff(); }
    double total_measure() const { return mu.sum(); }
    std::vector<double> distinct_distances() const;  // sorted positive values
};

ModelSpace build_model(const ModelSpec& spec);

// Validates the ModelSpace invariants; throws PreconditionError on failure.
void validate_model(const ModelSpace& m);

std::string describe(const ModelSpec& spec);

struct Ball {
    std::vector<int> points;
    double volume = 0.0;
};

// Open ball {y : dist(x,y) < r}.
Ball ball(const ModelSpace& m, int x, double r);
double ball_volume(const ModelSpace& m, int x, double r);

struct DoublingProfile {
    double c0 = 1.0;
    double d = 0.0;
    double c2 = 1.0;
    double dstar = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    bool truncated = false;   // some radius had 2r > diameter (excluded from c2)
};

DoublingProfile measure_doubling(const ModelSpace& m, double r_min, double r_max);
// Full range (0, diameter]: c0 is then the exact sup over all r > 0.
DoublingProfile measure_doubling(const ModelSpace& m);

// Greedy maximal delta-net; order defaults to 0..n-1.
std::vector<int> build_maximal_net(const ModelSpace& m, double delta,
                                   const std::vector<int>& order = {});

// owner[x] = index (into centers) of the nearest center, lowest index on ties.
std::vector<int> build_partition(const ModelSpace& m, const std::vector<int>& centers, double delta);

struct NetCheck {
    int separation_violations = 0;
    int maximality_violations = 0;
    int sandwich_violations = 0;
    int cover_violations = 0;
    bool ok() const {
        return separation_violations + maximality_violations + sandwich_violations + cover_violations == 0;
    }
};

NetCheck check_net(const ModelSpace& m, const std::vector<int>& centers,
                   const std::vector<int>& owner, double delta);

struct Net {
    int level = 0;
    double delta = 0.0;
    double ell = 1.0;               // b^{-j}
    std::vector<int> centers;
    std::vector<int> owner;         // per point, index into centers
    std::vector<double> a_vol;      // |A_xi|
    std::vector<double> b_vol;      // |B(xi, delta_j)|
    std::vector<double> scale_vol;  // |B(xi, b^{-j})|
};

struct NetHierarchy {
    double b = 2.0;
    double gamma = 1.0;
    Mode mode = Mode::Homogeneous;
    std::vector<Net> levels;

    // Flattened index over X = union of the levels, level by level.
    int size() const;
    int offset(int level_index) const;
    int j_min() const { return levels.front().level; }
    int j_max() const { return levels.back().level; }
    std::vector<int> level_of() const;     // j per flattened index
    std::vector<int> center_of() const;    // point per flattened index
};

Net build_net(const ModelSpace& m, int j, double b, double gamma);
NetHierarchy build_hierarchy(const ModelSpace& m, double b, double gamma, int j_min, int j_max,
                             Mode mode = Mode::Homogeneous);

struct CountReport {
    double lhs_max = 0.0;
    double rhs = 0.0;
    int argmax = -1;
    bool pass = false;
};

// #(X ∩ B(x, delta_star)) <= c0 6^d (delta_star/delta)^d for all x.
CountReport check_net_count(const ModelSpace& m, const std::vector<int>& centers, double delta,
                            double delta_star, const DoublingProfile& prof);

struct SumReport {
    double lhs = 0.0;     // value at the worst point
    double rhs = 0.0;
    double ratio = 0.0;   // max lhs/rhs
    int worst_x = -1;
    int worst_y = -1;
    bool pass = false;
};

double net_sum_constant(double sigma, const DoublingProfile& prof);

// One-sided sum: sum_xi (1 + rho(x,xi)/delta_star)^{-sigma} against the explicit doubling bound.
SumReport check_net_sum(const ModelSpace& m, const std::vector<int>& centers, double delta,
                        double delta_star, double sigma, const DoublingProfile& prof);

// Two-point sum, worst ratio over all (x, y).
SumReport check_discrete_sum(const ModelSpace& m, const std::vector<int>& centers, double delta,
                             double sigma, double delta1, double delta2, const DoublingProfile& prof);

struct PeetreReport {
    double c_single = 0.0;  // max_x sum_u (1+rho/delta1)^{-sigma1} mu(u) / |B(x,delta1)|
    double c_pair = 0.0;    // two-term bound on the two-point sum I(x,y)
    double c_pair_a = 0.0;  // consequence with |B(x,delta1)| and exponent (sigma1-d) ∧ sigma2
    double c_pair_b = 0.0;  // consequence with |B(y,delta2)| and exponent sigma1 ∧ (sigma2-d)
};

PeetreReport check_peetre_integrals(const ModelSpace& m, double sigma1, double sigma2, double delta1,
                                    double delta2, const DoublingProfile& prof);

}  // namespace btl

#pragma once
// Almost-diagonal operators on net-indexed sequences: decay weights,
// the norm ||A||_delta, composition, Neumann inversion.

#include <vector>

#include "btl/seqspace.hpp"
#include "btl/space.hpp"

namespace btl {

// Geometry of the flattened index set X needed by the weights.
struct NetGeometry {
    std::vector<int> level;      // j
    std::vector<int> center;     // point
    std::vector<double> ell;     // b^{-j}
    std::vector<double> bvol;    // |B_xi| = |B(xi, delta_j)|
    std::vector<double> delta;   // delta_j
    Mat rho;                     // distances between centers

    int size() const { return static_cast<int>(level.size()); }
};

NetGeometry net_geometry(const ModelSpace& m, const NetHierarchy& h);

// omega_{xi eta}(beta, gamma); the one-parameter weight is omega(delta, delta).
double omega2(const NetGeometry& g, int xi, int eta, double beta, double gamma, const SpaceParams& prm,
              Flavor flavor);
inline double omega(const NetGeometry& g, int xi, int eta, double delta, const SpaceParams& prm, Flavor flavor) {
    return omega2(g, xi, eta, delta, delta, prm, flavor);
}
Mat omega_matrix(const NetGeometry& g, double beta, double gamma, const SpaceParams& prm, Flavor flavor);

struct NetMatrix {
    Mat a;
    SpaceParams params;
    Flavor flavor = Flavor::Classical;
};

struct AdNorm {
    double delta = 0.0;
    double value = 0.0;
    int arg_xi = -1;
    int arg_eta = -1;
};

AdNorm ad_norm(const NetGeometry& g, const Mat& a, double delta, const SpaceParams& prm, Flavor flavor);
AdNorm ad_norm(const NetGeometry& g, const NetMatrix& A, double delta);

Vec apply(const NetMatrix& A, const Vec& h);
NetMatrix compose(const NetMatrix& A, const NetMatrix& B);

struct BoundednessReport {
    double ad = 0.0;          // ||A||_delta
    double max_ratio = 0.0;   // max ||Ah|| / (||A||_delta ||h||)
    int samples = 0;
};

BoundednessReport boundedness_probe(const NetGeometry& g, const NetMatrix& A, double delta,
                                    const SequenceNorms& seq, const SpaceParams& prm,
                                    const std::vector<Vec>& battery);

struct WBoundReport {
    double beta = 0.0, gamma1 = 0.0, gamma2 = 0.0;
    double max_ratio = 0.0;   // max W / omega(beta, gamma1 ∧ gamma2)
    int arg_xi = -1, arg_eta = -1;
};

// W_{xi eta} = sum_zeta omega_{xi zeta}(beta, gamma1) omega_{zeta eta}(beta, gamma2)
Mat lemma64_W(const NetGeometry& g, double beta, double gamma1, double gamma2, const SpaceParams& prm,
              Flavor flavor);
WBoundReport w_bound_check(const NetGeometry& g, double beta, double gamma1, double gamma2,
                            const SpaceParams& prm, Flavor flavor);

// c* = max W(eps1, eps, eps1) / omega(eps1): the constant in |d^(n)| <= (delta c*)^n omega(eps1).
double neumann_constant(const NetGeometry& g, double eps, double eps1, const SpaceParams& prm, Flavor flavor);

struct AlgebraReport {
    double norm_a = 0.0, norm_b = 0.0, norm_ab = 0.0;
    double constant = 0.0;  // ||AB||_{eps_b} / (||A||_{eps_a} ||B||_{eps_b})
};

AlgebraReport algebra_check(const NetGeometry& g, const NetMatrix& A, const NetMatrix& B, double eps_a,
                            double eps_b);

struct NeumannReport {
    double d_norm = 0.0;           // ||I - A||_eps
    double c_star = 0.0;
    double threshold = 0.0;        // 1 / c*
    int terms = 0;
    std::vector<double> term_ad;   // ||D^n||_{eps1}
    std::vector<double> term_bound;  // (d_norm c*)^n
    int bound_violations = 0;
    double residual_right = 0.0;   // max |A Ainv - I|
    double residual_left = 0.0;    // max |Ainv A - I|
    double inverse_ad = 0.0;       // ||Ainv||_{eps1}
    double eps = 0.0, eps1 = 0.0;
};

struct NeumannResult {
    NetMatrix inverse;
    NeumannReport report;
};

// Requires ||I - A||_eps < 1/c* (c* measured at (eps1, eps)); throws
// PreconditionError otherwise and ConvergenceError on divergence.
NeumannResult neumann_invert(const NetGeometry& g, const NetMatrix& A, double eps, double eps1 = -1.0,
                             double delta_threshold = -1.0);

}  // namespace btl

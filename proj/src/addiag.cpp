#include "btl/addiag.hpp"

#include <algorithm>
#include <cmath>

namespace btl {

NetGeometry net_geometry(const ModelSpace& m, const NetHierarchy& h) {
    NetGeometry g;
    for (const Net& net : h.levels)
        for (size_t k = 0; k < net.centers.size(); ++k) {
            g.level.push_back(net.level);
            g.center.push_back(net.centers[k]);
            g.ell.push_back(net.ell);
            g.bvol.push_back(net.b_vol[k]);
            g.delta.push_back(net.delta);
        }
    const int n = g.size();
    g.rho.resize(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.rho(a, b) = m.dist(g.center[a], g.center[b]);
    return g;
}

double omega2(const NetGeometry& g, int xi, int eta, double beta, double gamma, const SpaceParams& prm,
              Flavor flavor) {
    const double J = prm.J();
    double lx = g.ell[xi], le = g.ell[eta];
    double lr = lx / le;
    double br = g.bvol[xi] / g.bvol[eta];
    double front = (flavor == Flavor::Classical) ? std::pow(lr, prm.s) * std::sqrt(br)
                                                 : std::pow(br, prm.s / prm.d + 0.5);
    double decay = std::pow(1.0 + g.rho(xi, eta) / std::max(lx, le), -J - beta);
    double scale = std::min(std::pow(lr, gamma), std::pow(1.0 / lr, J + gamma));
    return front * decay * scale;
}

Mat omega_matrix(const NetGeometry& g, double beta, double gamma, const SpaceParams& prm, Flavor flavor) {
    const int n = g.size();
    Mat W(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) W(a, b) = omega2(g, a, b, beta, gamma, prm, flavor);
    return W;
}

AdNorm ad_norm(const NetGeometry& g, const Mat& a, double delta, const SpaceParams& prm, Flavor flavor) {
    if (!(delta > 0.0)) throw PreconditionError("ad norm needs delta > 0");
    if (a.rows() != g.size() || a.cols() != g.size()) throw PreconditionError("matrix does not match the net");
    AdNorm r;
    r.delta = delta;
    for (int x = 0; x < g.size(); ++x)
        for (int y = 0; y < g.size(); ++y) {
            double v = std::abs(a(x, y)) / omega(g, x, y, delta, prm, flavor);
            if (v > r.value) {
                r.value = v;
                r.arg_xi = x;
                r.arg_eta = y;
            }
        }
    return r;
}

AdNorm ad_norm(const NetGeometry& g, const NetMatrix& A, double delta) {
    return ad_norm(g, A.a, delta, A.params, A.flavor);
}

Vec apply(const NetMatrix& A, const Vec& h) {
    if (A.a.cols() != h.size()) throw PreconditionError("sequence does not match the matrix");
    return A.a * h;
}

NetMatrix compose(const NetMatrix& A, const NetMatrix& B) {
    if (A.a.cols() != B.a.rows()) throw PreconditionError("matrix sizes do not compose");
    return NetMatrix{A.a * B.a, A.params, A.flavor};
}

BoundednessReport boundedness_probe(const NetGeometry& g, const NetMatrix& A, double delta,
                                    const SequenceNorms& seq, const SpaceParams& prm,
                                    const std::vector<Vec>& battery) {
    BoundednessReport r;
    r.ad = ad_norm(g, A.a, delta, prm, prm.flavor).value;
    if (r.ad == 0.0) return r;
    for (const Vec& h : battery) {
        double nh = seq.norm(h, prm);
        if (nh == 0.0) continue;
        r.max_ratio = std::max(r.max_ratio, seq.norm(A.a * h, prm) / (r.ad * nh));
        ++r.samples;
    }
    return r;
}

Mat lemma64_W(const NetGeometry& g, double beta, double gamma1, double gamma2, const SpaceParams& prm,
              Flavor flavor) {
    return omega_matrix(g, beta, gamma1, prm, flavor) * omega_matrix(g, beta, gamma2, prm, flavor);
}

WBoundReport w_bound_check(const NetGeometry& g, double beta, double gamma1, double gamma2,
                            const SpaceParams& prm, Flavor flavor) {
    if (!(beta > 0 && gamma1 > 0 && gamma2 > 0)) throw PreconditionError("W bound needs positive parameters");
    if (gamma1 == gamma2) throw PreconditionError("W bound needs gamma1 != gamma2");
    if (!(beta < gamma1 + gamma2)) throw PreconditionError("W bound needs beta < gamma1 + gamma2");
    Mat W = lemma64_W(g, beta, gamma1, gamma2, prm, flavor);
    Mat O = omega_matrix(g, beta, std::min(gamma1, gamma2), prm, flavor);
    WBoundReport r{beta, gamma1, gamma2, 0.0, -1, -1};
    for (int x = 0; x < g.size(); ++x)
        for (int y = 0; y < g.size(); ++y) {
            double v = W(x, y) / O(x, y);
            if (v > r.max_ratio) {
                r.max_ratio = v;
                r.arg_xi = x;
                r.arg_eta = y;
            }
        }
    return r;
}

double neumann_constant(const NetGeometry& g, double eps, double eps1, const SpaceParams& prm, Flavor flavor) {
    Mat W = omega_matrix(g, eps1, eps, prm, flavor) * omega_matrix(g, eps1, eps1, prm, flavor);
    Mat O = omega_matrix(g, eps1, eps1, prm, flavor);
    return W.cwiseQuotient(O).maxCoeff();
}

AlgebraReport algebra_check(const NetGeometry& g, const NetMatrix& A, const NetMatrix& B, double eps_a,
                            double eps_b) {
    AlgebraReport r;
    r.norm_a = ad_norm(g, A, eps_a).value;
    r.norm_b = ad_norm(g, B, eps_b).value;
    r.norm_ab = ad_norm(g, compose(A, B), eps_b).value;
    double den = r.norm_a * r.norm_b;
    r.constant = den > 0 ? r.norm_ab / den : 0.0;
    return r;
}

NeumannResult neumann_invert(const NetGeometry& g, const NetMatrix& A, double eps, double eps1,
                             double delta_threshold) {
    if (!(eps > 0.0)) throw PreconditionError("Neumann inversion needs eps > 0");
    if (eps1 <= 0.0) eps1 = eps / 2.0;
    if (!(eps1 < eps)) throw PreconditionError("Neumann inversion needs eps1 < eps");
    const int n = g.size();
    NeumannResult out;
    NeumannReport& r = out.report;
    r.eps = eps;
    r.eps1 = eps1;
    Mat I = Mat::Identity(n, n);
    Mat D = I - A.a;
    r.c_star = neumann_constant(g, eps, eps1, A.params, A.flavor);
    r.threshold = (delta_threshold > 0.0) ? std::min(delta_threshold, 1.0 / r.c_star) : 1.0 / r.c_star;
    r.d_norm = ad_norm(g, D, eps, A.params, A.flavor).value;
    if (!(r.d_norm < r.threshold))
        throw PreconditionError("Neumann precondition fails: ||I-A||_eps = " + std::to_string(r.d_norm) +
                                " >= " + std::to_string(r.threshold));

    const Mat O1 = omega_matrix(g, eps1, eps1, A.params, A.flavor);
    Mat S = I;
    Mat term = I;
    double first = std::max(D.cwiseAbs().maxCoeff(), 1e-300);
    double prev = first;
    int slow = 0;
    if (D.cwiseAbs().maxCoeff() > 0.0) {
        for (int k = 1; k <= 10000; ++k) {
            term = term * D;
            S += term;
            r.terms = k;
            double ad = term.cwiseAbs().cwiseQuotient(O1).maxCoeff();
            double bound = std::pow(r.d_norm * r.c_star, k);
            r.term_ad.push_back(ad);
            r.term_bound.push_back(bound);
            if (ad > bound * (1.0 + 1e-9) + 1e-300) ++r.bound_violations;
            double tn = term.cwiseAbs().maxCoeff();
            if (tn < 1e-12) break;
            slow = (tn > 0.999 * prev) ? slow + 1 : 0;
            if (slow >= 5) throw ConvergenceError("Neumann series diverges");
            prev = tn;
        }
    }
    out.inverse = NetMatrix{S, A.params, A.flavor};
    r.residual_right = (A.a * S - I).cwiseAbs().maxCoeff();
    r.residual_left = (S * A.a - I).cwiseAbs().maxCoeff();
    r.inverse_ad = S.cwiseAbs().cwiseQuotient(O1).maxCoeff();
    return out;
}

}  // namespace btl

#include "btl/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace btl {

const char* to_string(FrameKind k) {
    switch (k) {
    case FrameKind::Primal: return "primal";
    case FrameKind::Dual: return "dual";
    case FrameKind::Compact: return "compact";
    default: return "compact_dual";
    }
}

namespace {

Vec gamma_multiplier(const SpectralData& sd, int j, double b, Mode mode) {
    Vec sl = sd.sqrt_lambda();
    Vec out(sl.size());
    bool low = (mode == Mode::Inhomogeneous && j == 0);
    double s = std::pow(b, -j + 1);
    for (int i = 0; i < sl.size(); ++i)
        out(i) = low ? cutoff_phi(sl(i) / b, b) : cutoff_gamma(s * sl(i), b);
    return out;
}

// rows of E at the net centers
Mat center_rows(const SpectralData& sd, const std::vector<int>& centers) {
    Mat Ec(centers.size(), sd.n());
    for (size_t a = 0; a < centers.size(); ++a) Ec.row(a) = sd.E.row(centers[a]);
    return Ec;
}

}  // namespace

SamplingReport check_sampling(const SpectralData& sd, const Net& net, double b) {
    SamplingReport r;
    r.level = net.level;
    Vec sl = sd.sqrt_lambda();
    double top = std::pow(b, net.level + 2) * (1.0 + 1e-12);
    std::vector<int> idx;
    for (int i = 0; i < sl.size(); ++i)
        if (sl(i) <= top) idx.push_back(i);
    r.dim = static_cast<int>(idx.size());
    if (idx.empty()) {
        r.empty = true;
        return r;
    }
    Mat Es(net.centers.size(), idx.size());
    for (size_t a = 0; a < net.centers.size(); ++a)
        for (size_t k = 0; k < idx.size(); ++k) Es(a, k) = sd.E(net.centers[a], idx[k]);
    Vec w = Eigen::Map<const Vec>(net.a_vol.data(), net.a_vol.size());
    // Gram form of f -> sum |A_xi| |f(xi)|^2 in the orthonormal basis of the space
    Mat G = Es.transpose() * w.asDiagonal() * Es;
    Eigen::SelfAdjointEigenSolver<Mat> es(G, Eigen::EigenvaluesOnly);
    r.lower = es.eigenvalues().minCoeff();
    r.upper = es.eigenvalues().maxCoeff();
    r.eps = std::max(1.0 - r.lower, r.upper - 1.0);
    return r;
}

Frame build_frame1(const ModelSpace& m, const SpectralData& sd, const NetHierarchy& h, const Cutoff& phi) {
    if (phi.kind != CutoffKind::A) throw PreconditionError("frame #1 needs a type (a) cutoff");
    if (std::abs(phi.b - h.b) > 1e-14) throw PreconditionError("cutoff and hierarchy use different b");
    const int n = m.n;
    Frame f;
    f.kind = FrameKind::Primal;
    const int total = h.size();
    f.values.resize(n, total);
    f.coeffs.resize(n, total);
    int k = 0;
    for (const Net& net : h.levels) {
        Vec psi = level_multiplier(sd, net.level, h.b, h.mode);
        bool low = (h.mode == Mode::Inhomogeneous && net.level == 0);
        double lo = low ? 0.0 : std::pow(h.b, net.level - 1);
        double hi = std::pow(h.b, net.level + 1);
        for (size_t a = 0; a < net.centers.size(); ++a, ++k) {
            int xi = net.centers[a];
            Vec c = std::sqrt(net.a_vol[a]) * psi.cwiseProduct(sd.E.row(xi).transpose());
            f.coeffs.col(k) = c;
            f.values.col(k) = sd.from_coeffs(c);
            f.level.push_back(net.level);
            f.center.push_back(xi);
            f.a_vol.push_back(net.a_vol[a]);
            f.band_lo.push_back(lo);
            f.band_hi.push_back(hi);
        }
    }
    return f;
}

DualResult build_dual_frame(const ModelSpace& m, const SpectralData& sd, const NetHierarchy& h,
                            const Frame& primal, const Cutoff& phi) {
    if (std::abs(phi.b - h.b) > 1e-14) throw PreconditionError("cutoff and hierarchy use different b");
    if (primal.size() != h.size()) throw PreconditionError("primal frame does not match the hierarchy");
    const int n = m.n;
    DualResult out;
    Frame& f = out.dual;
    f.kind = FrameKind::Dual;
    f.values.resize(n, h.size());
    f.coeffs.resize(n, h.size());
    DualBuildReport& rep = out.report;
    int k = 0;
    for (const Net& net : h.levels) {
        SamplingReport s = check_sampling(sd, net, h.b);
        rep.sampling.push_back(s);
        if (!(s.eps < 0.5))
            throw PreconditionError("sampling precondition unmet at level " + std::to_string(net.level) +
                                    " (eps = " + std::to_string(s.eps) + "), gamma must shrink");
        rep.epsilon = std::max(rep.epsilon, s.eps);
        double ce = 1.0 / (1.0 + s.eps);

        Vec g = gamma_multiplier(sd, net.level, h.b, h.mode);
        Mat Ec = center_rows(sd, net.centers);
        Vec w = Eigen::Map<const Vec>(net.a_vol.data(), net.a_vol.size()) * ce;
        // P = E_C^T diag(omega) E_C, R = G (I - P) G in spectral coordinates
        Mat P = Ec.transpose() * w.asDiagonal() * Ec;
        Mat R = g.asDiagonal() * (Mat::Identity(n, n) - P) * g.asDiagonal();

        Mat T = Mat::Identity(n, n);
        Mat term = Mat::Identity(n, n);
        double first = R.cwiseAbs().maxCoeff();
        double prev = first;
        double tail = 0.0;
        int terms = 0, slow = 0;
        if (first > 1e-300) {
            for (terms = 1; terms <= 5000; ++terms) {
                term = term * R;
                T += term;
                double tn = term.cwiseAbs().maxCoeff();
                tail = tn / first;
                if (tail < 1e-12) break;
                slow = (tn > 0.999 * prev) ? slow + 1 : 0;
                if (slow >= 5)
                    throw ConvergenceError("Neumann series for T diverges at level " + std::to_string(net.level));
                prev = tn;
            }
            if (terms > 5000) throw ConvergenceError("Neumann series for T did not reach its tail tolerance");
        }
        rep.neumann_terms = std::max(rep.neumann_terms, terms);
        rep.neumann_tail = std::max(rep.neumann_tail, tail);
        rep.level_terms.push_back(terms);

        bool low = (h.mode == Mode::Inhomogeneous && net.level == 0);
        double lo = low ? 0.0 : std::pow(h.b, net.level - 2);
        double hi = std::pow(h.b, net.level + 2);
        for (size_t a = 0; a < net.centers.size(); ++a, ++k) {
            int xi = net.centers[a];
            Vec c = ce * std::sqrt(net.a_vol[a]) * (T * g.cwiseProduct(sd.E.row(xi).transpose()));
            // T preserves the band of G exactly; clear the roundoff outside it
            for (int i = 0; i < n; ++i)
                if (g(i) == 0.0) c(i) = 0.0;
            f.coeffs.col(k) = c;
            f.values.col(k) = sd.from_coeffs(c);
            f.level.push_back(net.level);
            f.center.push_back(xi);
            f.a_vol.push_back(net.a_vol[a]);
            f.band_lo.push_back(lo);
            f.band_hi.push_back(hi);
        }
    }
    return out;
}

FramePair build_frame_pair(const ModelSpace& m, const SpectralData& sd, const FrameConfig& cfg) {
    FramePair fp;
    fp.window = cfg.auto_window ? default_window(sd, cfg.b, cfg.mode) : cfg.window;
    Cutoff phi = make_cutoff(CutoffKind::A, cfg.b);
    double gamma = cfg.gamma;
    for (int halv = 0; halv <= cfg.max_halvings; ++halv, gamma *= 0.5) {
        NetHierarchy h = build_hierarchy(m, cfg.b, gamma, fp.window.j_min, fp.window.j_max, cfg.mode);
        bool ok = true;
        for (const Net& net : h.levels)
            if (!(check_sampling(sd, net, cfg.b).eps < 0.5)) ok = false;
        if (!ok) continue;
        fp.hierarchy = std::move(h);
        fp.gamma = gamma;
        fp.halvings = halv;
        fp.primal = build_frame1(m, sd, fp.hierarchy, phi);
        DualResult d = build_dual_frame(m, sd, fp.hierarchy, fp.primal, phi);
        fp.dual = std::move(d.dual);
        fp.report = std::move(d.report);
        return fp;
    }
    throw PreconditionError("no gamma within the halving budget gives sampling eps < 1/2");
}

FrameBounds frame_bounds(const SpectralData& sd, const Frame& f, bool include_nullspace) {
    int start = include_nullspace ? 0 : sd.nullspace_dim;
    Mat Q = f.coeffs.bottomRows(sd.n() - start);
    Mat G = Q * Q.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(G, Eigen::EigenvaluesOnly);
    return FrameBounds{es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

ReconstructionReport check_reconstruction(const SpectralData& sd, const Frame& primal, const Frame& dual,
                                          const std::vector<Vec>& battery) {
    ReconstructionReport r;
    for (const Vec& f : battery) {
        double nf = sd.norm2(f);
        if (nf == 0.0) continue;
        Vec a = primal.synthesis(dual.analysis(sd, f));
        Vec b = dual.synthesis(primal.analysis(sd, f));
        r.dual_then_primal = std::max(r.dual_then_primal, sd.norm2(a - f) / nf);
        r.primal_then_dual = std::max(r.primal_then_dual, sd.norm2(b - f) / nf);
    }
    return r;
}

double band_leakage(const SpectralData& sd, const Frame& f, double rel_slack) {
    Vec sl = sd.sqrt_lambda();
    double worst = 0.0;
    for (int k = 0; k < f.size(); ++k) {
        double lo = f.band_lo[k] * (1.0 - rel_slack), hi = f.band_hi[k] * (1.0 + rel_slack);
        for (int i = 0; i < sl.size(); ++i) {
            bool inside = (f.band_lo[k] == 0.0 ? sl(i) <= hi : (sl(i) >= lo && sl(i) <= hi));
            if (!inside) worst = std::max(worst, std::abs(f.coeffs(i, k)));
        }
    }
    return worst;
}

namespace {

LocalizationFit fit_decay(const std::vector<double>& r, const std::vector<double>& y, int m) {
    LocalizationFit best;
    best.m = m;
    best.samples = static_cast<int>(r.size());
    best.rms = std::numeric_limits<double>::infinity();
    if (r.size() < 3) {
        best.rms = 0.0;
        return best;
    }
    for (int k = 1; k <= 40; ++k) {
        double beta = 0.05 * k;
        // y = a - kappa r^beta, ordinary least squares
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double N = static_cast<double>(r.size());
        for (size_t i = 0; i < r.size(); ++i) {
            double x = -std::pow(r[i], beta);
            sx += x;
            sy += y[i];
            sxx += x * x;
            sxy += x * y[i];
        }
        double den = N * sxx - sx * sx;
        if (std::abs(den) < 1e-300) continue;
        double kappa = (N * sxy - sx * sy) / den;
        double a = (sy - kappa * sx) / N;
        double ss = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            double e = y[i] - (a - kappa * std::pow(r[i], beta));
            ss += e * e;
        }
        double rms = std::sqrt(ss / N);
        if (rms < best.rms) {
            best.rms = rms;
            best.kappa = kappa;
            best.beta = beta;
        }
    }
    return best;
}

}  // namespace

FramePropertiesReport check_frame_properties(const ModelSpace& m, const SpectralData& sd, const Frame& f,
                                             const NetHierarchy& h, const std::vector<int>& powers) {
    FramePropertiesReport rep;
    const int n = m.n;
    // |B(xi, b^{-j})| per element
    std::vector<double> sv;
    for (const Net& net : h.levels) sv.insert(sv.end(), net.scale_vol.begin(), net.scale_vol.end());
    if (static_cast<int>(sv.size()) != f.size()) throw PreconditionError("frame does not match the hierarchy");

    for (int pw : powers) {
        Vec lam_pow = sd.lambda.array().pow(pw);
        std::vector<double> r, y;
        double global = 0.0;
        Mat V(n, f.size());
        for (int k = 0; k < f.size(); ++k) {
            Vec c = f.coeffs.col(k).cwiseProduct(lam_pow);
            Vec v = sd.from_coeffs(c);
            v /= std::pow(h.b, 2.0 * f.level[k] * pw) / std::sqrt(sv[k]);
            V.col(k) = v;
            global = std::max(global, v.cwiseAbs().maxCoeff());
        }
        for (int k = 0; k < f.size(); ++k)
            for (int x = 0; x < n; ++x) {
                double a = std::abs(V(x, k));
                if (a <= 1e-12 * global) continue;
                r.push_back(std::pow(h.b, f.level[k]) * m.dist(x, f.center[k]));
                y.push_back(std::log(a));
            }
        rep.fits.push_back(fit_decay(r, y, pw));

        if (pw == 0) {
            // shell maxima in units of ell(xi), pooled over the frame
            std::vector<double> shell;
            for (int k = 0; k < f.size(); ++k)
                for (int x = 0; x < n; ++x) {
                    int s = static_cast<int>(std::floor(std::pow(h.b, f.level[k]) * m.dist(x, f.center[k])));
                    if (s >= static_cast<int>(shell.size())) shell.resize(s + 1, 0.0);
                    shell[s] = std::max(shell[s], std::abs(V(x, k)));
                }
            rep.shells = static_cast<int>(shell.size());
            for (size_t s = 1; s < shell.size(); ++s)
                if (shell[s] > shell[s - 1] * (1.0 + 1e-9) && shell[s] > 1e-12 * global) ++rep.shell_increases;
        }
    }

    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
        NormBand nb;
        nb.p = p;
        nb.min_ratio = std::numeric_limits<double>::infinity();
        for (int k = 0; k < f.size(); ++k) {
            Vec v = f.values.col(k);
            double norm;
            double expo;
            if (std::isinf(p)) {
                norm = v.cwiseAbs().maxCoeff();
                expo = -0.5;
            } else {
                norm = std::pow((v.cwiseAbs().array().pow(p) * sd.mu.array()).sum(), 1.0 / p);
                expo = 1.0 / p - 0.5;
            }
            double ratio = norm / std::pow(sv[k], expo);
            nb.min_ratio = std::min(nb.min_ratio, ratio);
            nb.max_ratio = std::max(nb.max_ratio, ratio);
        }
        rep.norms.push_back(nb);
    }
    rep.band_leakage = band_leakage(sd, f);
    return rep;
}

}  // namespace btl

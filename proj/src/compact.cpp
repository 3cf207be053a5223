#include "btl/compact.hpp"

#include <algorithm>
#include <cmath>

namespace btl {

CompactFrame build_compact_frame(const ModelSpace& m, const SpectralData& sd, const NetHierarchy& h,
                                 const ThetaSymbol& theta, double c_tilde, double threshold) {
    if (h.mode != Mode::Homogeneous) throw PreconditionError("compact frames are built in homogeneous mode");
    if (std::abs(theta.b() - h.b) > 1e-14) throw PreconditionError("Theta and hierarchy use different b");
    CompactFrame cf;
    cf.R = theta.R();
    cf.c_tilde = c_tilde;
    Frame& f = cf.frame;
    f.kind = FrameKind::Compact;
    const int n = m.n;
    f.values.resize(n, h.size());
    f.coeffs.resize(n, h.size());
    Vec sl = sd.sqrt_lambda();
    int k = 0;
    for (const Net& net : h.levels) {
        Vec th(n);
        double s = std::pow(h.b, -net.level);
        for (int i = 0; i < n; ++i) th(i) = theta(s * sl(i));
        double bound = c_tilde * cf.R * net.ell;
        double sup = 0.0;
        for (size_t a = 0; a < net.centers.size(); ++a, ++k) {
            int xi = net.centers[a];
            Vec c = std::sqrt(net.a_vol[a]) * th.cwiseProduct(sd.E.row(xi).transpose());
            f.coeffs.col(k) = c;
            f.values.col(k) = sd.from_coeffs(c);
            f.level.push_back(net.level);
            f.center.push_back(xi);
            f.a_vol.push_back(net.a_vol[a]);
            // transform support [-R, R] but no spectral band
            f.band_lo.push_back(0.0);
            f.band_hi.push_back(sl(n - 1));
            double r = effective_support_radius(m, f.values.col(k), xi, threshold);
            sup = std::max(sup, r);
            if (r > bound && bound < m.diameter()) ++cf.support_violations;
        }
        cf.levels.push_back(net.level);
        cf.level_support.push_back(sup);
        cf.level_bound.push_back(bound);
    }
    return cf;
}

CompactDualResult build_compact_dual(const SpectralData& sd, const FramePair& fp, const CompactFrame& cf,
                                     const NetGeometry& g, const SpaceParams& prm, double eps_ad,
                                     const std::vector<Vec>& battery) {
    const Mat& Qp = fp.primal.coeffs;
    const Mat& Qd = fp.dual.coeffs;
    const Mat& Qt = cf.frame.coeffs;
    CompactDualResult out;
    out.D = Qd.transpose() * (Qp - Qt);
    const int X = static_cast<int>(out.D.rows());
    NetMatrix A{Mat::Identity(X, X) - out.D, prm, prm.flavor};
    NeumannResult inv = neumann_invert(g, A, eps_ad, eps_ad / 2.0);
    out.neumann = inv.report;
    Mat P = Qd.transpose() * Qp;
    out.C = P * inv.inverse.a * P;
    // theta~_xi = sum_eta C_{xi eta} psi~_eta
    Frame& f = out.dual;
    f = fp.dual;
    f.kind = FrameKind::CompactDual;
    f.coeffs = Qd * out.C.transpose();
    f.values = sd.from_coeffs_mat(f.coeffs);
    for (const Vec& v : battery) {
        Vec t = sd.project_mean_zero(v);
        double nt = sd.norm2(t);
        if (nt == 0.0) continue;
        Vec rec = cf.frame.synthesis(f.analysis(sd, t));
        out.residual = std::max(out.residual, sd.norm2(rec - t) / nt);
    }
    return out;
}

CompactPipeline run_compact_pipeline(const ModelSpace& m, const SpectralData& sd, const FramePair& fp,
                                     const NetGeometry& g, const SpaceParams& prm, double d, double c_tilde,
                                     const std::vector<Vec>& battery, const CompactPipelineOptions& opt) {
    CompactPipeline pl;
    double J0 = d / std::min({1.0, opt.p0, opt.q0});
    pl.orders = theta_orders(opt.s0, J0, d);
    const double b = fp.hierarchy.b;
    double u_max = std::pow(b, -fp.hierarchy.j_min()) * std::sqrt(sd.lambda(sd.n() - 1)) * 1.05;
    for (double R = opt.R0; R <= opt.R_max * (1 + 1e-12); R *= 2.0) {
        ThetaSymbol th(b, R, pl.orders.N, pl.orders.K, u_max);
        CompactAttempt at;
        at.R = R;
        ThetaErrorReport te = theta_error(th, std::min(u_max, 8.0 * b));
        at.theta_eps = te.eps;
        CompactFrame cf = build_compact_frame(m, sd, fp.hierarchy, th, c_tilde, opt.support_threshold);
        Mat D = fp.dual.coeffs.transpose() * (fp.primal.coeffs - cf.frame.coeffs);
        at.d_norm = ad_norm(g, D, opt.eps_ad, prm, prm.flavor).value;
        at.threshold = 1.0 / neumann_constant(g, opt.eps_ad, opt.eps_ad / 2.0, prm, prm.flavor);
        at.accepted = at.d_norm < at.threshold;
        pl.attempts.push_back(at);
        if (!at.accepted) continue;
        pl.theta = th;
        pl.theta_error = te;
        pl.compact = std::move(cf);
        pl.dual = build_compact_dual(sd, fp, pl.compact, g, prm, opt.eps_ad, battery);
        return pl;
    }
    throw PreconditionError("compact dual: ||I - A_T||_eps stays above 1/c* up to R_max; shrink the Theta tolerance");
}

}  // namespace btl

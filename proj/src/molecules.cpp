#include "btl/molecules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace btl {

const char* to_string(MoleculeKind k) { return k == MoleculeKind::Synthesis ? "synthesis" : "analysis"; }

MoleculeOrders compute_orders(const SpaceParams& prm, Flavor flavor, double M) {
    prm.validate();
    MoleculeOrders o;
    o.flavor = flavor;
    o.J = prm.J();
    const double s = prm.s;
    if (flavor == Flavor::Classical) {
        o.cancel_limit = o.J;
        o.K_defined = s <= o.J;
        if (o.K_defined) o.K = static_cast<int>(std::floor((o.J - s) / 2.0)) + 1;
        o.M_threshold = o.J;
    } else {
        o.cancel_limit = o.J * prm.d / prm.dstar;
        o.K_defined = s <= o.cancel_limit;
        if (o.K_defined) {
            double top = s < 0 ? o.J - s : o.J - s * prm.dstar / prm.d;
            o.K = static_cast<int>(std::floor(top / 2.0)) + 1;
        }
        o.M_threshold = o.J + std::abs(s);
    }
    o.N_defined = s >= 0;
    if (o.N_defined) o.N = static_cast<int>(std::floor(s / 2.0)) + 1;
    if (M <= 0.0) M = std::floor(o.M_threshold) + 1.0;
    if (!(M > o.M_threshold)) throw PreconditionError("decay exponent must exceed " + std::to_string(o.M_threshold));
    o.M = M;
    return o;
}

MoleculeConditions molecule_conditions(const MoleculeOrders& o, MoleculeKind kind, double s) {
    MoleculeConditions c;
    const bool classical = o.flavor == Flavor::Classical;
    if (kind == MoleculeKind::Synthesis) {
        // smoothness from N when s >= 0, cancellation m = L^K b when s <= limit
        c.smooth = s >= 0;
        c.smooth_lo = classical ? 1 : 0;
        c.smooth_hi = o.N;
        // tilde: required whenever s <= J d/d*, the s < 0 branch of K included
        c.cancel = s <= o.cancel_limit;
        c.cancel_power = o.K;
        c.cancel_lo = 0;
        c.cancel_hi = classical ? o.K - 1 : o.K;
    } else {
        c.smooth = s <= o.cancel_limit;
        c.smooth_lo = 0;
        c.smooth_hi = o.K;
        c.cancel = s >= 0;
        c.cancel_power = o.N;
        c.cancel_lo = 0;
        c.cancel_hi = o.N;
    }
    return c;
}

namespace {

// L^nu applied to columns given by spectral coefficients (nu >= 0, or < 0 on mean-zero columns)
Mat power_values(const SpectralData& sd, const Mat& coeffs, int nu) {
    Mat c = coeffs;
    for (int i = 0; i < c.rows(); ++i) {
        double f = (i < sd.nullspace_dim) ? 0.0 : std::pow(sd.lambda(i), nu);
        c.row(i) *= f;
    }
    return sd.from_coeffs_mat(c);
}

// |B_xi|^{-1/2} (1 + rho(x, xi)/ell)^{-decay}
Mat envelope(const ModelSpace& m, const NetGeometry& g, double decay) {
    Mat W(m.n, g.size());
    for (int k = 0; k < g.size(); ++k)
        for (int x = 0; x < m.n; ++x)
            W(x, k) = std::pow(g.bvol[k], -0.5) * std::pow(1.0 + m.dist(x, g.center[k]) / g.ell[k], -decay);
    return W;
}

ConditionConstant measure(const std::string& name, int nu, const Mat& V, const Mat& W, const NetGeometry& g,
                          double ell_power, const std::vector<bool>& skip = {}) {
    ConditionConstant c{name, nu, 0.0, -1, -1};
    for (int k = 0; k < V.cols(); ++k) {
        if (!skip.empty() && skip[k]) continue;
        double sc = std::pow(g.ell[k], ell_power);
        for (int x = 0; x < V.rows(); ++x) {
            double r = std::abs(V(x, k)) / (sc * W(x, k));
            if (r > c.constant) {
                c.constant = r;
                c.arg_xi = k;
                c.arg_x = x;
            }
        }
    }
    return c;
}

void require_mean_zero(const SpectralData& sd, const Mat& coeffs, const std::vector<bool>& skip) {
    for (int k = 0; k < coeffs.cols(); ++k) {
        if (!skip.empty() && skip[k]) continue;
        double null = coeffs.col(k).head(sd.nullspace_dim).norm();
        if (null > 1e-10 * std::max(coeffs.col(k).norm(), 1e-300))
            throw PreconditionError("negative power of L requested for a family element with a nullspace component");
    }
}

}  // namespace

MoleculeCertificate validate_molecule(const ModelSpace& m, const SpectralData& sd, const NetGeometry& g,
                                      const Mat& family, MoleculeKind kind, const SpaceParams& prm,
                                      Flavor space_flavor, const MoleculeOptions& opt) {
    if (family.rows() != m.n || family.cols() != g.size()) throw PreconditionError("family does not match the net");
    MoleculeCertificate cert;
    cert.kind = kind;
    cert.space_flavor = space_flavor;
    cert.budget = opt.budget;
    cert.orders = compute_orders(prm, space_flavor, opt.M);
    cert.conditions = molecule_conditions(cert.orders, kind, prm.s);
    const MoleculeConditions& cd = cert.conditions;
    double decay = cert.orders.M + (kind == MoleculeKind::Analysis ? prm.d : 0.0);
    Mat W = envelope(m, g, decay);
    Mat C = sd.to_coeffs_mat(family);

    cert.constants.push_back(measure("size", 0, family, W, g, 0.0));
    if (cd.smooth)
        for (int nu = cd.smooth_lo; nu <= cd.smooth_hi; ++nu)
            cert.constants.push_back(
                measure("smooth", nu, nu == 0 ? family : power_values(sd, C, nu), W, g, -2.0 * nu));
    if (cd.cancel) {
        std::vector<bool> skip(g.size(), false);
        if (opt.mode == Mode::Inhomogeneous)
            for (int k = 0; k < g.size(); ++k) skip[k] = g.level[k] == 0;
        const int P = cd.cancel_power;
        Mat Cb;
        if (opt.companion) {
            if (opt.companion->rows() != m.n || opt.companion->cols() != g.size())
                throw PreconditionError("companion does not match the family");
            cert.companion_supplied = true;
            Cb = sd.to_coeffs_mat(*opt.companion);
            Mat back = P == 0 ? *opt.companion : power_values(sd, Cb, P);
            double den = std::max(family.cwiseAbs().maxCoeff(), 1e-300);
            for (int k = 0; k < g.size(); ++k)
                if (!skip[k])
                    cert.factorization_residual =
                        std::max(cert.factorization_residual, (back.col(k) - family.col(k)).cwiseAbs().maxCoeff() / den);
        } else {
            if (P > 0) require_mean_zero(sd, C, skip);
            Cb = C;
            for (int i = 0; i < Cb.rows(); ++i) {
                double f = (i < sd.nullspace_dim) ? (P == 0 ? 1.0 : 0.0) : std::pow(sd.lambda(i), -P);
                Cb.row(i) *= f;
            }
        }
        for (int nu = cd.cancel_lo; nu <= cd.cancel_hi; ++nu) {
            Mat V = (nu == 0) ? sd.from_coeffs_mat(Cb) : power_values(sd, Cb, nu);
            cert.constants.push_back(measure("cancel", nu, V, W, g, 2.0 * (P - nu), skip));
        }
    }
    for (const auto& c : cert.constants) cert.max_constant = std::max(cert.max_constant, c.constant);
    cert.pass = cert.max_constant <= cert.budget * (1.0 + 1e-12) && cert.factorization_residual <= 1e-9;
    return cert;
}

GramCertificate gram(const ModelSpace& m, const NetGeometry& g, const Mat& synth, const Mat& anal,
                     const SpaceParams& prm, Flavor flavor, const std::vector<double>& deltas, double budget) {
    if (synth.cols() != g.size() || anal.cols() != g.size()) throw PreconditionError("families do not match the net");
    GramCertificate r;
    r.a = anal.transpose() * (m.mu.asDiagonal() * synth);
    r.deltas = deltas;
    r.budget = budget;
    double best_any = std::numeric_limits<double>::infinity();
    double best_any_delta = 0.0;
    for (double dl : deltas) {
        double c = ad_norm(g, r.a, dl, prm, flavor).value;
        r.constants.push_back(c);
        if (c <= budget && dl >= r.best_delta) {
            r.best_delta = dl;
            r.best_constant = c;
            r.pass = true;
        }
        if (c < best_any) {
            best_any = c;
            best_any_delta = dl;
        }
    }
    if (!r.pass) {
        r.best_delta = best_any_delta;
        r.best_constant = best_any;
    }
    return r;
}

MolecularSynthesis molecular_synthesis(const Vec& t, const Mat& family, const FunctionNorms& fn,
                                       const SequenceNorms& seq, const SpaceParams& prm) {
    if (t.size() != family.cols()) throw PreconditionError("coefficients do not match the family");
    MolecularSynthesis r;
    r.f = family * t;
    double nt = seq.norm(t, prm);
    if (nt > 0) r.ratio = fn.norm(r.f, prm) / nt;
    return r;
}

MolecularAnalysis molecular_analysis(const SpectralData& sd, const Vec& f, const Mat& family,
                                     const FramePair& fp, const FunctionNorms& fn, const SequenceNorms& seq,
                                     const SpaceParams& prm) {
    if (family.cols() != fp.primal.size()) throw PreconditionError("family does not match the frame");
    MolecularAnalysis r;
    // <m~_xi, psi_eta> through coefficients, then against <f, psi~_eta>
    Mat fc = sd.to_coeffs_mat(family);
    Mat G = fc.transpose() * fp.primal.coeffs;
    r.t = G * fp.dual.analysis(sd, f);
    Vec direct = fc.transpose() * sd.to_coeffs(f);
    double den = std::max(direct.cwiseAbs().maxCoeff(), 1e-300);
    r.direct_gap = (r.t - direct).cwiseAbs().maxCoeff() / den;
    double nf = fn.norm(f, prm);
    if (nf > 0) r.ratio = seq.norm(r.t, prm) / nf;
    return r;
}

AtomOrders atom_orders(const SpaceParams& prm) {
    prm.validate();
    AtomOrders o;
    o.K = std::max(0, static_cast<int>(std::floor((prm.J() - prm.s) / 2.0)) + 1);
    o.K_tilde = std::max(0, static_cast<int>(std::floor(prm.s / 2.0)) + 2);
    return o;
}

AtomCertificate validate_atoms(const ModelSpace& m, const SpectralData& sd, const NetGeometry& g,
                               const Mat& family, const SpaceParams& prm, const AtomOptions& opt) {
    if (family.rows() != m.n || family.cols() != g.size()) throw PreconditionError("family does not match the net");
    AtomCertificate cert;
    cert.orders = atom_orders(prm);
    if (opt.K >= 0) {
        if (opt.K < cert.orders.K) throw PreconditionError("atom order K below its minimum");
        cert.orders.K = opt.K;
    }
    if (opt.K_tilde >= 0) {
        if (opt.K_tilde < cert.orders.K_tilde) throw PreconditionError("atom order K~ below its minimum");
        cert.orders.K_tilde = opt.K_tilde;
    }
    cert.budget = opt.budget;
    cert.support_budget = opt.support_budget;
    const int K = cert.orders.K;
    Mat W = envelope(m, g, 0.0);
    Mat C = sd.to_coeffs_mat(family);
    for (int n = 0; n <= cert.orders.K_tilde; ++n)
        cert.constants.push_back(measure("size", n, n == 0 ? family : power_values(sd, C, n), W, g, -2.0 * n));
    if (K > 0) require_mean_zero(sd, C, {});
    Mat Cb = C;
    if (K > 0)
        for (int i = 0; i < Cb.rows(); ++i) Cb.row(i) *= (i < sd.nullspace_dim) ? 0.0 : std::pow(sd.lambda(i), -K);

    std::vector<double> radius(g.size(), 0.0);
    for (int nu = 0; nu <= K; ++nu) {
        Mat V = (nu == 0) ? (K == 0 ? family : sd.from_coeffs_mat(Cb)) : power_values(sd, Cb, nu);
        cert.constants.push_back(measure("companion", nu, V, W, g, 2.0 * (K - nu)));
        for (int k = 0; k < g.size(); ++k)
            radius[k] = std::max(radius[k], effective_support_radius(m, V.col(k), g.center[k], opt.threshold));
    }
    for (int k = 0; k < g.size(); ++k) {
        cert.support_constant = std::max(cert.support_constant, radius[k] / g.delta[k]);
        auto it = std::find(cert.levels.begin(), cert.levels.end(), g.level[k]);
        if (it == cert.levels.end()) {
            cert.levels.push_back(g.level[k]);
            cert.level_support.push_back(radius[k]);
        } else {
            double& v = cert.level_support[it - cert.levels.begin()];
            v = std::max(v, radius[k]);
        }
    }
    for (const auto& c : cert.constants) cert.max_constant = std::max(cert.max_constant, c.constant);
    bool support_ok = opt.support_budget <= 0.0 || cert.support_constant <= opt.support_budget;
    cert.pass = cert.max_constant <= cert.budget * (1.0 + 1e-12) && support_ok;
    return cert;
}

AtomicDecomposition atomic_decompose(const SpectralData& sd, const Vec& f, const CompactPipeline& pl,
                                     double c_star, const FunctionNorms& fn, const SequenceNorms& seq,
                                     const SpaceParams& prm) {
    if (pl.dual.dual.size() == 0) throw PreconditionError("compact dual unavailable");
    if (!(c_star > 0.0)) throw PreconditionError("atom scaling must be positive");
    AtomicDecomposition r;
    r.c_star = c_star;
    r.t = pl.dual.dual.analysis(sd, f);
    Vec a_sum = pl.compact.frame.synthesis(r.t);   // = sum (t/c*) a
    double nf = sd.norm2(f);
    r.residual = nf > 0 ? sd.norm2(f - a_sum) / nf : sd.norm2(a_sum);
    double Ff = fn.norm(f, prm);
    if (Ff > 0) r.coeff_ratio = seq.norm(r.t, prm) / Ff;
    double nt = seq.norm(r.t / c_star, prm);
    if (nt > 0) r.synthesis_ratio = fn.norm(a_sum, prm) / nt;
    return r;
}

}  // namespace btl

#include "btl/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace btl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// (sum |v_k|^q)^{1/q}, sup for q = inf
double lq_sum(const Vec& v, double q) {
    if (std::isinf(q)) return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
    return std::pow(v.cwiseAbs().array().pow(q).sum(), 1.0 / q);
}
}  // namespace

double SpaceParams::J() const {
    double m = std::min(1.0, p);
    if (family == Family::TriebelLizorkin) m = std::min(m, q);
    return d / m;
}

void SpaceParams::validate() const {
    if (!(p > 0.0) || !(q > 0.0)) throw PreconditionError("p and q must be positive");
    if (family == Family::TriebelLizorkin && std::isinf(p))
        throw PreconditionError("Triebel-Lizorkin norms need p < infinity");
    if (!(d > 0.0)) throw PreconditionError("dimension d must be positive");
}

std::string SpaceParams::label() const {
    std::ostringstream o;
    o << (family == Family::Besov ? "B" : "F") << (flavor == Flavor::Tilde ? "~" : "") << "(s=" << s
      << ",p=" << p << ",q=" << q << ")";
    return o.str();
}

double lp_norm(const Vec& v, const Vec& mu, double p) {
    if (std::isinf(p)) return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
    return std::pow((v.cwiseAbs().array().pow(p) * mu.array()).sum(), 1.0 / p);
}

void check_norm_cutoff(const Cutoff& phi) {
    if (phi.kind == CutoffKind::A) throw PreconditionError("norm cutoff must vanish near 0 (type b or c)");
    double lo = std::pow(phi.b, -0.75), hi = std::pow(phi.b, 0.75);
    double c = kInf;
    for (int i = 0; i <= 200; ++i) c = std::min(c, std::abs(phi(lo + (hi - lo) * i / 200.0)));
    if (!(c > 0.0)) throw PreconditionError("norm cutoff vanishes inside [b^{-3/4}, b^{3/4}]");
    if (phi(0.999 / phi.b) != 0.0 || phi(1.001 * phi.b) != 0.0)
        throw PreconditionError("norm cutoff support exceeds [1/b, b]");
}

FunctionNorms::FunctionNorms(const ModelSpace& m, const SpectralData& sd, const LevelWindow& w, double b,
                             Mode mode, const Cutoff& phi)
    : m_(&m), sd_(&sd), w_(w), b_(b), mode_(mode) {
    check_norm_cutoff(phi);
    Vec sl = sd.sqrt_lambda();
    for (int j = w.j_min; j <= w.j_max; ++j) {
        Vec mu(sl.size());
        double s = std::pow(b, -j);
        bool low = (mode == Mode::Inhomogeneous && j == 0);
        for (int i = 0; i < sl.size(); ++i) mu(i) = low ? cutoff_phi(s * sl(i), b) : phi(s * sl(i));
        mult_.push_back(mu);
        Vec v(m.n);
        for (int x = 0; x < m.n; ++x) v(x) = ball_volume(m, x, std::pow(b, -j));
        vol_.push_back(v);
    }
}

Mat FunctionNorms::level_table(const Vec& f_in, const SpaceParams& prm) const {
    prm.validate();
    Vec f = (mode_ == Mode::Homogeneous) ? sd_->project_mean_zero(f_in) : f_in;
    Vec c = sd_->to_coeffs(f);
    Mat T(w_.count(), m_->n);
    for (int l = 0; l < w_.count(); ++l) {
        int j = w_.j_min + l;
        Vec g = sd_->from_coeffs(mult_[l].cwiseProduct(c)).cwiseAbs();
        if (prm.flavor == Flavor::Classical) {
            g *= std::pow(b_, j * prm.s);
        } else if (prm.s != 0.0) {
            g = g.cwiseProduct(vol_[l].array().pow(-prm.s / prm.d).matrix());
        }
        T.row(l) = g.transpose();
    }
    return T;
}

double FunctionNorms::besov(const Vec& f, const SpaceParams& prm) const {
    Mat T = level_table(f, prm);
    Vec per(T.rows());
    for (int l = 0; l < T.rows(); ++l) per(l) = lp_norm(T.row(l).transpose(), sd_->mu, prm.p);
    return lq_sum(per, prm.q);
}

double FunctionNorms::triebel_lizorkin(const Vec& f, const SpaceParams& prm) const {
    Mat T = level_table(f, prm);
    Vec inner(T.cols());
    for (int x = 0; x < T.cols(); ++x) inner(x) = lq_sum(T.col(x), prm.q);
    return lp_norm(inner, sd_->mu, prm.p);
}

double FunctionNorms::norm(const Vec& f, const SpaceParams& prm) const {
    return prm.family == Family::Besov ? besov(f, prm) : triebel_lizorkin(f, prm);
}

SequenceNorms::SequenceNorms(const ModelSpace& m, const NetHierarchy& h) : m_(&m), h_(&h) {
    size_ = h.size();
    for (size_t l = 0; l < h.levels.size(); ++l) offset_.push_back(h.offset(static_cast<int>(l)));
}

double SequenceNorms::b_norm(const Vec& a, const SpaceParams& prm) const {
    if (a.size() != size_) throw PreconditionError("sequence does not match the hierarchy");
    prm.validate();
    const double ip = std::isinf(prm.p) ? 0.0 : 1.0 / prm.p;
    Vec per(h_->levels.size());
    for (size_t l = 0; l < h_->levels.size(); ++l) {
        const Net& net = h_->levels[l];
        Vec v(net.centers.size());
        for (size_t k = 0; k < net.centers.size(); ++k) {
            double e = ip - 0.5;
            if (prm.flavor == Flavor::Tilde) e -= prm.s / prm.d;
            v(k) = std::pow(net.scale_vol[k], e) * std::abs(a(offset_[l] + k));
        }
        double lvl = lq_sum(v, prm.p);
        if (prm.flavor == Flavor::Classical) lvl *= std::pow(h_->b, net.level * prm.s);
        per(l) = lvl;
    }
    return lq_sum(per, prm.q);
}

double SequenceNorms::f_norm(const Vec& a, const SpaceParams& prm) const {
    if (a.size() != size_) throw PreconditionError("sequence does not match the hierarchy");
    prm.validate();
    const int n = m_->n;
    const int L = static_cast<int>(h_->levels.size());
    // at each x exactly one cell per level contains x
    Mat T(L, n);
    for (int l = 0; l < L; ++l) {
        const Net& net = h_->levels[l];
        for (int x = 0; x < n; ++x) {
            int k = net.owner[x];
            double av = net.a_vol[k];
            double v = std::abs(a(offset_[l] + k)) / std::sqrt(av);
            if (prm.flavor == Flavor::Classical) v *= std::pow(h_->b, net.level * prm.s);
            else if (prm.s != 0.0) v *= std::pow(av, -prm.s / prm.d);
            T(l, x) = v;
        }
    }
    Vec inner(n);
    for (int x = 0; x < n; ++x) inner(x) = lq_sum(T.col(x), prm.q);
    return lp_norm(inner, m_->mu, prm.p);
}

double SequenceNorms::f_norm_via_cells(const Vec& a, const SpaceParams& prm) const {
    if (std::abs(prm.p - prm.q) > 0.0) throw PreconditionError("cell route needs p = q");
    const double p = prm.p;
    double total = 0.0;
    for (size_t l = 0; l < h_->levels.size(); ++l) {
        const Net& net = h_->levels[l];
        for (size_t k = 0; k < net.centers.size(); ++k) {
            double av = net.a_vol[k];
            double w = (prm.flavor == Flavor::Classical) ? std::pow(h_->b, net.level * prm.s)
                                                          : std::pow(av, -prm.s / prm.d);
            double v = w * std::pow(av, 1.0 / p - 0.5) * std::abs(a(offset_[l] + k));
            total += std::pow(v, p);
        }
    }
    return std::pow(total, 1.0 / p);
}

double SequenceNorms::norm(const Vec& a, const SpaceParams& prm) const {
    return prm.family == Family::Besov ? b_norm(a, prm) : f_norm(a, prm);
}

Vec maximal_Mt(const ModelSpace& m, const Vec& f, double t) {
    if (!(t > 0.0)) throw PreconditionError("maximal exponent t must be positive");
    const int n = m.n;
    Vec g = f.cwiseAbs().array().pow(t).matrix();
    Vec best = Vec::Zero(n);
    std::vector<int> ord(n);
    for (int z = 0; z < n; ++z) {
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return m.dist(z, a) < m.dist(z, b); });
        // group ends: balls are unions of complete distance groups
        std::vector<double> avg(n);
        std::vector<int> group(n);
        double num = 0.0, den = 0.0;
        int i = 0, gi = 0;
        std::vector<double> gavg;
        while (i < n) {
            int k = i;
            double r = m.dist(z, ord[i]);
            while (k < n && m.dist(z, ord[k]) == r) {
                num += m.mu(ord[k]) * g(ord[k]);
                den += m.mu(ord[k]);
                group[ord[k]] = gi;
                ++k;
            }
            gavg.push_back(num / den);
            ++gi;
            i = k;
        }
        // suffix maxima: best ball whose radius reaches the group of x
        std::vector<double> suf(gavg.size());
        double mx = 0.0;
        for (int k = static_cast<int>(gavg.size()) - 1; k >= 0; --k) {
            mx = std::max(mx, gavg[k]);
            suf[k] = mx;
        }
        for (int x = 0; x < n; ++x) best(x) = std::max(best(x), suf[group[x]]);
    }
    return best.array().pow(1.0 / t).matrix();
}

ProbeResult fs_maximal_probe(const ModelSpace& m, const std::vector<Vec>& family, double p, double q, double t) {
    if (!(t > 0.0 && t < std::min(p, q))) throw PreconditionError("need 0 < t < min{p, q}");
    const int n = m.n;
    Mat A(family.size(), n), B(family.size(), n);
    for (size_t k = 0; k < family.size(); ++k) {
        A.row(k) = maximal_Mt(m, family[k], t).transpose();
        B.row(k) = family[k].cwiseAbs().transpose();
    }
    Vec la(n), lb(n);
    for (int x = 0; x < n; ++x) {
        la(x) = lq_sum(A.col(x), q);
        lb(x) = lq_sum(B.col(x), q);
    }
    ProbeResult r;
    double num = lp_norm(la, m.mu, p), den = lp_norm(lb, m.mu, p);
    if (den == 0.0) {
        r.degenerate = true;
        r.ratio = 0.0;
    } else {
        r.ratio = num / den;
    }
    return r;
}

double hardy_constant(double gamma, double q, double b) {
    if (q >= 1.0) return 1.0 / (1.0 - std::pow(b, -gamma));
    return std::pow(1.0 / (1.0 - std::pow(b, -gamma * q)), 1.0 / q);
}

HardyReport hardy_check(const std::vector<double>& a, double gamma, double q, double b) {
    if (!(gamma > 0.0) || !(q > 0.0) || std::isinf(q)) throw PreconditionError("Hardy check needs gamma > 0, 0 < q < inf");
    const int L = static_cast<int>(a.size());
    HardyReport r;
    double s1 = 0.0, s2 = 0.0, sr = 0.0;
    for (int j = 0; j < L; ++j) {
        double up = 0.0, down = 0.0;
        for (int m = j; m < L; ++m) up += std::pow(b, -(m - j) * gamma) * a[m];
        for (int m = 0; m <= j; ++m) down += std::pow(b, -(j - m) * gamma) * a[m];
        s1 += std::pow(up, q);
        s2 += std::pow(down, q);
        sr += std::pow(a[j], q);
    }
    r.lhs1 = std::pow(s1, 1.0 / q);
    r.lhs2 = std::pow(s2, 1.0 / q);
    r.rhs = std::pow(sr, 1.0 / q);
    r.ratio1 = r.rhs > 0 ? r.lhs1 / r.rhs : 0.0;
    r.ratio2 = r.rhs > 0 ? r.lhs2 / r.rhs : 0.0;
    r.bound = hardy_constant(gamma, q, b);
    const double tol = 1e-12;
    r.pass = r.lhs1 <= r.bound * r.rhs * (1 + tol) + tol && r.lhs2 <= r.bound * r.rhs * (1 + tol) + tol;
    return r;
}

CharacterizationReport check_frame_characterization(const SpectralData& sd, const std::vector<Vec>& battery,
                                                    const SpaceParams& prm, const FramePair& fp,
                                                    const FunctionNorms& norms, const FunctionNorms& norms2,
                                                    const SequenceNorms& seq) {
    CharacterizationReport r;
    r.min_ratio = r.min_ratio_swap = r.phi_ratio_lo = kInf;
    for (const Vec& f : battery) {
        double nf = norms.norm(f, prm);
        if (nf == 0.0) continue;
        Vec cd = fp.dual.analysis(sd, f);
        Vec cp = fp.primal.analysis(sd, f);
        double a = seq.norm(cd, prm) / nf;
        double b = seq.norm(cp, prm) / nf;
        r.min_ratio = std::min(r.min_ratio, a);
        r.max_ratio = std::max(r.max_ratio, a);
        r.min_ratio_swap = std::min(r.min_ratio_swap, b);
        r.max_ratio_swap = std::max(r.max_ratio_swap, b);
        Vec rec = fp.primal.synthesis(cd);
        Vec target = (fp.hierarchy.mode == Mode::Homogeneous) ? sd.project_mean_zero(f) : f;
        double nt = sd.norm2(target);
        if (nt > 0) r.reconstruction = std::max(r.reconstruction, sd.norm2(rec - target) / nt);
        double n2 = norms2.norm(f, prm);
        if (n2 > 0) {
            r.phi_ratio_lo = std::min(r.phi_ratio_lo, nf / n2);
            r.phi_ratio_hi = std::max(r.phi_ratio_hi, nf / n2);
        }
        ++r.count;
    }
    return r;
}

}  // namespace btl

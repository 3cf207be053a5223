#include "btl/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace btl {

namespace {

// Window: 1 on [0, 1/2], smooth step down to 0 at 1.
template <class T>
T window(const T& t_in) {
    T t = detail::abs_even(t_in);
    double tv = value_of(t);
    if (tv <= 0.5) return detail::constant_like(t, 1.0);
    if (tv >= 1.0) return detail::constant_like(t, 0.0);
    T s = (t - 0.5) / 0.5;
    T a = detail::bump_h(T(1.0 - s)), c = detail::bump_h(s);
    return a / (a + c);
}

double falling(int n, int k) {  // n (n-1) ... (n-k+1)
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (n - i);
    return r;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Past this point u^Z Xi amplifies the roundoff in Xi; Theta is summed from its own transform.
constexpr double kDirectFrom = 1.0;

}  // namespace

ThetaSymbol::ThetaSymbol(double b, double R, int N, int K, double u_max)
    : b_(b), R_(R), u_max_(u_max), N_(N), K_(K) {
    if (!(N >= K && K >= 1)) throw PreconditionError("Theta orders need N >= K >= 1");
    if (!(R > 0.0)) throw PreconditionError("Theta radius must be positive");
    Z_ = N + K;
    if (Z_ % 2) ++Z_;

    // node spacing keeps the periodic images of G beyond u_max
    double hmax = 2.0 * std::numbers::pi / (2.0 * (u_max + b) + 40.0);
    int M = std::max(64, static_cast<int>(std::ceil(R / hmax)));
    double h = R / M;
    tau_.resize(M + 1);
    std::vector<double> w(M + 1, h);
    w[0] = w[M] = 0.5 * h;
    for (int k = 0; k <= M; ++k) tau_[k] = k * h;

    // G^{(m)}(tau) = 2 int_{1/b}^{b} G(v) v^m cos(tau v + m pi/2) dv for m = 0..Z,
    // trapezoid (integrand flat at both ends)
    const int Nv = std::max(4000, static_cast<int>(8 * R));
    double v0 = 1.0 / b, hv = (b - v0) / Nv;
    std::vector<std::vector<double>> gd(Z_ + 1, std::vector<double>(M + 1, 0.0));
    std::vector<double> pm(Z_ + 1);
    for (int i = 1; i < Nv; ++i) {
        double v = v0 + i * hv;
        double pv = 2.0 * hv * cutoff_psi(v, b) * std::pow(v, -Z_);
        if (pv == 0.0) continue;
        for (int m = 0; m <= Z_; ++m) pm[m] = pv * std::pow(v, m) * ((m % 4 == 1 || m % 4 == 2) ? -1.0 : 1.0);
        double th = h * v;
        double ct = std::cos(th), st = std::sin(th);
        double c = 1.0, s = 0.0;
        for (int k = 0; k <= M; ++k) {
            if (k % 64 == 0) {
                c = std::cos(k * th);
                s = std::sin(k * th);
            }
            for (int m = 0; m <= Z_; m += 2) gd[m][k] += pm[m] * c;
            for (int m = 1; m <= Z_; m += 2) gd[m][k] += pm[m] * s;
            double cn = c * ct - s * st;
            s = s * ct + c * st;
            c = cn;
        }
    }
    // Xi^ = G^ W(./R); Theta^ = (-1)^{Z/2} d^Z/dtau^Z Xi^
    F_.resize(M + 1);
    H_.resize(M + 1);
    const double zs = (Z_ / 2) % 2 ? -1.0 : 1.0;
    for (int k = 0; k <= M; ++k) {
        Jet W = window(Jet::variable(tau_[k] / R, Z_));
        F_[k] = gd[0][k] * W.value() * w[k] / std::numbers::pi;
        double t = 0.0;
        for (int m = 0; m <= Z_; ++m) {
            double wd = W.derivative(Z_ - m);
            if (wd == 0.0) continue;
            t += binom(Z_, m) * gd[m][k] * std::pow(R, -(Z_ - m)) * wd;
        }
        H_[k] = zs * t * w[k] / std::numbers::pi;
    }
}

std::vector<double> ThetaSymbol::xi_derivatives(double u, int nu) const {
    // d^i/du^i cos(tau u) = tau^i cos(tau u + i pi/2)
    std::vector<double> out(nu + 1, 0.0);
    for (size_t k = 0; k < tau_.size(); ++k) {
        double t = tau_[k];
        double c = std::cos(t * u), s = std::sin(t * u);
        double tp = F_[k];
        for (int i = 0; i <= nu; ++i) {
            switch (i % 4) {
            case 0: out[i] += tp * c; break;
            case 1: out[i] -= tp * s; break;
            case 2: out[i] -= tp * c; break;
            default: out[i] += tp * s; break;
            }
            tp *= t;
        }
    }
    return out;
}

double ThetaSymbol::direct_eval(double u, int nu) const {
    double out = 0.0;
    for (size_t k = 0; k < tau_.size(); ++k) {
        double t = tau_[k];
        double ph = t * u + nu * std::numbers::pi / 2.0;
        out += H_[k] * std::pow(t, nu) * std::cos(ph);
    }
    return out;
}

double ThetaSymbol::eval(double u, int nu) const {
    if (tau_.empty()) throw PreconditionError("Theta symbol is not built");
    // Theta even: Theta^{(nu)}(-u) = (-1)^nu Theta^{(nu)}(u)
    double sign = (u < 0.0 && (nu % 2)) ? -1.0 : 1.0;
    u = std::abs(u);
    if (u > kDirectFrom) return sign * direct_eval(u, nu);
    std::vector<double> xi = xi_derivatives(u, nu);
    double out = 0.0;
    for (int i = 0; i <= std::min(nu, Z_); ++i)
        out += binom(nu, i) * falling(Z_, i) * std::pow(u, Z_ - i) * xi[nu - i];
    return sign * out;
}

Symbol ThetaSymbol::symbol() const {
    ThetaSymbol copy = *this;
    return [copy](double u) { return copy.eval(u, 0); };
}

ThetaErrorReport theta_error(const ThetaSymbol& th, double u_hi, int samples) {
    ThetaErrorReport r;
    const double b = th.b();
    const int N = th.N(), K = th.K();
    std::vector<double> grid;
    int half = samples / 2;
    for (int i = 0; i < half; ++i) grid.push_back(1e-3 * std::pow(u_hi / 1e-3, double(i) / (half - 1)));
    double lo = 0.5 / b, hi = std::min(u_hi, 2.0 * b);
    for (int i = 0; i < samples - half; ++i) grid.push_back(lo + (hi - lo) * i / (samples - half - 1));
    for (double u : grid) {
        Jet ps = cutoff_psi(Jet::variable(u, K), b);
        double wgt = std::pow(u, N) / std::pow(1.0 + u, 2 * N);
        r.max_weight = std::max(r.max_weight, wgt);
        for (int nu = 0; nu <= K; ++nu) {
            double diff = std::abs(ps.derivative(nu) - th.eval(u, nu));
            if (nu == 0) r.max_abs_residual0 = std::max(r.max_abs_residual0, diff);
            double e = diff / wgt;
            if (e > r.eps) {
                r.eps = e;
                r.worst_u = u;
                r.worst_nu = nu;
            }
        }
    }
    return r;
}

ThetaBuild build_band_limited_theta(double b, double eps, const ThetaOptions& opt) {
    ThetaBuild out;
    double u_hi = std::min(opt.u_max, 8.0 * b);
    for (double R = opt.R0; R <= opt.R_max * (1 + 1e-12); R *= 2.0) {
        out.radii_tried.push_back(R);
        ThetaSymbol th(b, R, opt.N, opt.K, opt.u_max);
        ThetaErrorReport e = theta_error(th, u_hi);
        out.theta = th;
        out.error = e;
        if (e.eps <= eps) return out;
    }
    throw ConvergenceError("Theta tolerance " + std::to_string(eps) + " unreachable below R_max; achieved " +
                           std::to_string(out.error.eps));
}

ThetaOrders theta_orders(double s0, double J0, double d) {
    ThetaOrders o;
    o.K = std::max(1, static_cast<int>(std::ceil(s0 + J0 + d / 2.0 + 1.0 - 1e-12)));
    o.N = std::max(o.K, static_cast<int>(std::ceil(o.K + s0 + J0 + 1.5 * d + 1.0 - 1e-12)));
    return o;
}

}  // namespace btl

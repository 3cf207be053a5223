#pragma once
// Spectral functional calculus on a finite model, admissible cutoffs,
// heat kernel, and measured localization / support properties.

#include <cmath>
#include <functional>
#include <vector>

#include "btl/jet.hpp"
#include "btl/space.hpp"
#include "btl/types.hpp"

namespace btl {

struct SpectralData {
    Vec lambda;          // ascending, lambda(0) = 0
    Mat E;               // columns: mu-orthonormal eigenfunctions (point values)
    Vec mu;
    int nullspace_dim = 1;

    int n() const { return static_cast<int>(lambda.size()); }
    Vec sqrt_lambda() const { return lambda.cwiseMax(0.0).cwiseSqrt(); }
    // c_i = <f, e_i>_mu
    Vec to_coeffs(const Vec& f) const { return E.transpose() * mu.cwiseProduct(f); }
    Mat to_coeffs_mat(const Mat& F) const { return E.transpose() * (mu.asDiagonal() * F); }
    Vec from_coeffs(const Vec& c) const { return E * c; }
    Mat from_coeffs_mat(const Mat& C) const { return E * C; }
    // Removes the nullspace component (the finite analogue of working modulo P).
    Vec project_mean_zero(const Vec& f) const;
    double inner(const Vec& f, const Vec& g) const { return f.dot(mu.cwiseProduct(g)); }
    double norm2(const Vec& f) const { return std::sqrt(inner(f, f)); }
    double nullspace_component(const Vec& f) const;  // norm of the projection onto N(L)
};

SpectralData eigendecompose(const ModelSpace& m);
// max |L - sum lambda_i e_i <e_i,.>_mu| entrywise, relative to max |L|
double eigen_reconstruction_error(const ModelSpace& m, const SpectralData& sd);

using Symbol = std::function<double(double)>;

struct Kernel {
    Mat table;            // K(x, y)
    Vec mu;
    double band_lo = 0.0; // in sqrt(L) units
    double band_hi = 0.0;
    bool band_empty = true;

    Vec apply(const Vec& f) const { return table * mu.cwiseProduct(f); }
};

// Values f(delta * sqrt(lambda_i)).
Vec symbol_on_spectrum(const SpectralData& sd, const Symbol& f, double delta);
// g -> E diag(mult) E^T diag(mu) g
Vec apply_spectral(const SpectralData& sd, const Vec& mult, const Vec& g);
Mat kernel_from_multiplier(const SpectralData& sd, const Vec& mult);
Kernel apply_symbol(const SpectralData& sd, const Symbol& f, double delta);
Kernel heat_kernel(const SpectralData& sd, double t);

// L^m g. m = 0 is the identity, m > 0 the true power, m < 0 requires a
// mean-zero g (within 1e-10 relative) and mod_nullspace set.
Vec apply_L_power(const SpectralData& sd, const Vec& g, int m, bool mod_nullspace);

// ---- cutoffs ----

namespace detail {
inline double constant_like(double, double v) { return v; }
inline Jet constant_like(const Jet& x, double v) { return Jet(v, x.order()); }

// exp(-1/s) for s > 0, flat zero otherwise
template <class T>
T bump_h(const T& s) {
    double v = value_of(s);
    if (v <= 0.0 || 1.0 / v > 700.0) return constant_like(s, 0.0);
    using std::exp;
    return exp(-1.0 / s);
}

template <class T>
T abs_even(const T& u) {
    return value_of(u) < 0.0 ? T(-u) : u;
}
}  // namespace detail

// Low-pass Phi: 1 on [0,1], 0 on [b, inf), C-infinity smooth step in between.
template <class T>
T cutoff_phi(const T& u_in, double b) {
    T u = detail::abs_even(u_in);
    T t = (u - 1.0) / (b - 1.0);
    double tv = value_of(t);
    if (tv <= 0.0) return detail::constant_like(u, 1.0);
    if (tv >= 1.0) return detail::constant_like(u, 0.0);
    T a = detail::bump_h(T(1.0 - t));
    T c = detail::bump_h(t);
    return a / (a + c);
}

// Psi(u) = Phi(u) - Phi(bu), supported in [1/b, b].
template <class T>
T cutoff_psi(const T& u, double b) {
    return cutoff_phi(u, b) - cutoff_phi(T(u * b), b);
}

// Gamma(u) = Phi(u/b^2) - Phi(bu); equals 1 on supp Psi(b^{-1} .) ∪ supp Psi ∪ supp Psi(b .)
template <class T>
T cutoff_gamma(const T& u, double b) {
    return cutoff_phi(T(u / (b * b)), b) - cutoff_phi(T(u * b), b);
}

// Type (c): Psi normalized so that sum_j |phi(b^{-j} u)|^2 = 1 on (0, inf).
template <class T>
T cutoff_quadratic(const T& u_in, double b) {
    T u = detail::abs_even(u_in);
    double uv = value_of(u);
    if (uv <= 1.0 / b || uv >= b) return detail::constant_like(u, 0.0);
    T num = cutoff_psi(u, b);
    // all k with Psi(b^{-k} u) possibly nonzero
    int k0 = static_cast<int>(std::floor(std::log(uv) / std::log(b)));
    T den = detail::constant_like(u, 0.0);
    for (int k = k0 - 1; k <= k0 + 2; ++k) {
        T v = cutoff_psi(T(u * std::pow(b, -k)), b);
        den += v * v;
    }
    using std::sqrt;
    return num / sqrt(den);
}

enum class CutoffKind { A, B, C };
const char* to_string(CutoffKind k);

// Admissible cutoff (types a, b, c), parameterized by the base b.
struct Cutoff {
    CutoffKind kind = CutoffKind::A;
    double b = 2.0;

    template <class T>
    T eval(const T& u) const {
        switch (kind) {
        case CutoffKind::A: return cutoff_phi(u, b);
        case CutoffKind::B: return cutoff_psi(u, b);
        default: return cutoff_quadratic(u, b);
        }
    }
    double operator()(double u) const { return eval(u); }
    Symbol symbol() const {
        Cutoff c = *this;
        return [c](double u) { return c.eval(u); };
    }
    // support in u: [support_lo, support_hi]
    double support_lo() const { return kind == CutoffKind::A ? 0.0 : 1.0 / b; }
    double support_hi() const { return b; }
};

Cutoff make_cutoff(CutoffKind kind, double b);

// max over a dense log grid of |sum_j |phi(b^{-j}t)|^2 - 1| for j in [-jr, jr]
double quadratic_partition_error(const Cutoff& c, int jr = 20, int samples = 2000);

// ---- level windows and Littlewood-Paley ----

struct LevelWindow {
    int j_min = 0;
    int j_max = 0;
    int count() const { return j_max - j_min + 1; }
};

// j_max = ceil(log_b sqrt(lambda_n)) + 1, j_min = floor(log_b sqrt(lambda_2)) - 1
// (j_min = 0 in inhomogeneous mode).
LevelWindow default_window(const SpectralData& sd, double b, Mode mode = Mode::Homogeneous);

// Psi_j evaluated on the spectrum (Psi_0 = Phi at level 0 in inhomogeneous mode).
Vec level_multiplier(const SpectralData& sd, int j, double b, Mode mode);
// sum_j Psi_j(sqrt L) f over the window
Vec lp_sum(const SpectralData& sd, const LevelWindow& w, double b, Mode mode, const Vec& f);

// ---- localization and finite speed ----

struct LocalizationReport {
    std::vector<int> orders;
    std::vector<double> a_eff;  // A_N_eff per order
};

LocalizationReport measure_localization(const ModelSpace& m, const Kernel& k, double delta,
                                        const std::vector<int>& orders);

struct HolderReport {
    std::vector<double> times;
    std::vector<double> max_ratio;  // max |p_t(x,y)-p_t(x,y')| (|B(x,√t)||B(y,√t)|)^{1/2} / (rho(y,y')/√t)
    std::vector<int> pairs;         // number of (x,y,y') triples scanned
};

HolderReport heat_holder_profile(const ModelSpace& m, const SpectralData& sd,
                                 const std::vector<double>& times);

struct SpeedCalibration {
    double c_star = 0.0;   // Gaussian decay constant of the heat kernel
    double c_tilde = 0.0;  // 1/(2 sqrt(c_star))
};

SpeedCalibration calibrate_speed_constant(const ModelSpace& m, const SpectralData& sd);

// max rho(x, y) over entries of column y with |K(x,y)| > threshold * max|K|
double effective_support_radius(const ModelSpace& m, const Vec& column, int center,
                                double threshold = 1e-9);

struct FiniteSpeedReport {
    double support = 0.0;  // max over columns of the effective support radius
    double bound = 0.0;    // c_tilde * delta * R
    bool pass = false;
};

// Symbol must carry a certified transform support [-R, R]; R <= 0 means uncertified.
FiniteSpeedReport check_finite_speed(const ModelSpace& m, const SpectralData& sd, const Symbol& f,
                                     double R, double delta, double c_tilde,
                                     double threshold = 1e-9);

}  // namespace btl

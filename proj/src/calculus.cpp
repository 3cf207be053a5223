#include "btl/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace btl {

const char* to_string(CutoffKind k) {
    switch (k) {
    case CutoffKind::A: return "a";
    case CutoffKind::B: return "b";
    default: return "c";
    }
}

Vec SpectralData::project_mean_zero(const Vec& f) const {
    Vec c = to_coeffs(f);
    c.head(nullspace_dim).setZero();
    return from_coeffs(c);
}

double SpectralData::nullspace_component(const Vec& f) const {
    return to_coeffs(f).head(nullspace_dim).norm();
}

SpectralData eigendecompose(const ModelSpace& m) {
    const int n = m.n;
    Vec s = m.mu.cwiseSqrt();
    Vec si = s.cwiseInverse();
    // S L S^{-1} is symmetric when L is mu-self-adjoint
    Mat A = s.asDiagonal() * m.L * si.asDiagonal();
    A = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver failed to converge");

    SpectralData sd;
    sd.mu = m.mu;
    sd.lambda = es.eigenvalues();
    sd.E = si.asDiagonal() * es.eigenvectors();
    double scale = std::max(1.0, sd.lambda.cwiseAbs().maxCoeff());
    int null = 0;
    for (int i = 0; i < n; ++i) {
        if (std::abs(sd.lambda(i)) <= 1e-10 * scale) {
            sd.lambda(i) = 0.0;
            ++null;
        } else if (sd.lambda(i) < 0.0) {
            throw PreconditionError("operator is not positive semidefinite");
        }
    }
    sd.nullspace_dim = null;
    // fix the sign of each eigenfunction so results do not depend on solver internals
    for (int i = 0; i < n; ++i) {
        Eigen::Index k;
        sd.E.col(i).cwiseAbs().maxCoeff(&k);
        if (sd.E(k, i) < 0) sd.E.col(i) *= -1.0;
    }
    return sd;
}

double eigen_reconstruction_error(const ModelSpace& m, const SpectralData& sd) {
    Mat R = sd.E * sd.lambda.asDiagonal() * sd.E.transpose() * sd.mu.asDiagonal();
    double ref = std::max(1e-300, m.L.cwiseAbs().maxCoeff());
    return (R - m.L).cwiseAbs().maxCoeff() / ref;
}

Vec symbol_on_spectrum(const SpectralData& sd, const Symbol& f, double delta) {
    Vec sl = sd.sqrt_lambda();
    Vec out(sl.size());
    for (int i = 0; i < sl.size(); ++i) out(i) = f(delta * sl(i));
    return out;
}

Vec apply_spectral(const SpectralData& sd, const Vec& mult, const Vec& g) {
    return sd.from_coeffs(mult.cwiseProduct(sd.to_coeffs(g)));
}

Mat kernel_from_multiplier(const SpectralData& sd, const Vec& mult) {
    Mat K = sd.E * mult.asDiagonal() * sd.E.transpose();
    return 0.5 * (K + K.transpose());
}

Kernel apply_symbol(const SpectralData& sd, const Symbol& f, double delta) {
    Vec mult = symbol_on_spectrum(sd, f, delta);
    Kernel k;
    k.mu = sd.mu;
    k.table = kernel_from_multiplier(sd, mult);
    Vec sl = sd.sqrt_lambda();
    for (int i = 0; i < mult.size(); ++i) {
        if (std::abs(mult(i)) <= 1e-14) continue;
        if (k.band_empty) {
            k.band_lo = k.band_hi = sl(i);
            k.band_empty = false;
        } else {
            k.band_lo = std::min(k.band_lo, sl(i));
            k.band_hi = std::max(k.band_hi, sl(i));
        }
    }
    return k;
}

Kernel heat_kernel(const SpectralData& sd, double t) {
    return apply_symbol(sd, [](double u) { return std::exp(-u * u); }, std::sqrt(t));
}

Vec apply_L_power(const SpectralData& sd, const Vec& g, int m, bool mod_nullspace) {
    if (m == 0) return g;
    Vec c = sd.to_coeffs(g);
    if (m < 0) {
        if (!mod_nullspace) throw PreconditionError("negative power of L requires mod_nullspace");
        double null = c.head(sd.nullspace_dim).norm();
        double total = std::max(c.norm(), 1e-300);
        if (null > 1e-10 * total)
            throw PreconditionError("negative power of L on a function with a nullspace component");
    }
    for (int i = 0; i < c.size(); ++i) {
        if (i < sd.nullspace_dim) c(i) = 0.0;
        else c(i) *= std::pow(sd.lambda(i), m);
    }
    return sd.from_coeffs(c);
}

Cutoff make_cutoff(CutoffKind kind, double b) {
    if (!(b > 1.0)) throw PreconditionError("cutoff base must exceed 1");
    return Cutoff{kind, b};
}

double quadratic_partition_error(const Cutoff& c, int jr, int samples) {
    double worst = 0.0;
    // t spans one full period [1, b) of the dyadic sum plus margins
    for (int i = 0; i < samples; ++i) {
        double t = std::pow(c.b, -3.0 + 6.0 * i / (samples - 1));
        double s = 0.0;
        for (int j = -jr; j <= jr; ++j) {
            double v = c(std::pow(c.b, -j) * t);
            s += v * v;
        }
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

LevelWindow default_window(const SpectralData& sd, double b, Mode mode) {
    if (sd.n() <= sd.nullspace_dim) throw PreconditionError("spectrum has no positive eigenvalue");
    double top = std::sqrt(sd.lambda(sd.n() - 1));
    double low = std::sqrt(sd.lambda(sd.nullspace_dim));
    LevelWindow w;
    w.j_max = static_cast<int>(std::ceil(std::log(top) / std::log(b) - 1e-12)) + 1;
    w.j_min = static_cast<int>(std::floor(std::log(low) / std::log(b) + 1e-12)) - 1;
    if (mode == Mode::Inhomogeneous) {
        w.j_min = 0;
        w.j_max = std::max(w.j_max, 0);
    }
    return w;
}

Vec level_multiplier(const SpectralData& sd, int j, double b, Mode mode) {
    Vec sl = sd.sqrt_lambda();
    Vec out(sl.size());
    double s = std::pow(b, -j);
    bool low = (mode == Mode::Inhomogeneous && j == 0);
    for (int i = 0; i < sl.size(); ++i)
        out(i) = low ? cutoff_phi(s * sl(i), b) : cutoff_psi(s * sl(i), b);
    return out;
}

Vec lp_sum(const SpectralData& sd, const LevelWindow& w, double b, Mode mode, const Vec& f) {
    Vec mult = Vec::Zero(sd.n());
    for (int j = w.j_min; j <= w.j_max; ++j) mult += level_multiplier(sd, j, b, mode);
    return apply_spectral(sd, mult, f);
}

LocalizationReport measure_localization(const ModelSpace& m, const Kernel& k, double delta,
                                        const std::vector<int>& orders) {
    const int n = m.n;
    Vec bv(n);
    for (int x = 0; x < n; ++x) bv(x) = ball_volume(m, x, delta);
    LocalizationReport r;
    r.orders = orders;
    for (int N : orders) {
        double best = 0.0;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                double v = std::abs(k.table(x, y)) * std::sqrt(bv(x) * bv(y)) *
                           std::pow(1.0 + m.dist(x, y) / delta, N);
                best = std::max(best, v);
            }
        r.a_eff.push_back(best);
    }
    return r;
}

HolderReport heat_holder_profile(const ModelSpace& m, const SpectralData& sd,
                                 const std::vector<double>& times) {
    const int n = m.n;
    HolderReport r;
    for (double t : times) {
        Kernel p = heat_kernel(sd, t);
        double st = std::sqrt(t);
        Vec bv(n);
        for (int x = 0; x < n; ++x) bv(x) = ball_volume(m, x, st);
        double worst = 0.0;
        int count = 0;
        for (int y = 0; y < n; ++y)
            for (int y2 = 0; y2 < n; ++y2) {
                double ryy = m.dist(y, y2);
                if (y == y2 || ryy > st) continue;
                for (int x = 0; x < n; ++x) {
                    double diff = std::abs(p.table(x, y) - p.table(x, y2));
                    double v = diff * std::sqrt(bv(x) * bv(y)) / (ryy / st);
                    worst = std::max(worst, v);
                    ++count;
                }
            }
        r.times.push_back(t);
        r.max_ratio.push_back(worst);
        r.pairs.push_back(count);
    }
    return r;
}

SpeedCalibration calibrate_speed_constant(const ModelSpace& m, const SpectralData& sd) {
    const int n = m.n;
    double diam = m.diameter();
    double cstar = std::numeric_limits<double>::infinity();
    // large t only sees the equilibrium plateau, which says nothing about the Gaussian constant
    double t_hi = std::max(1.0, diam * diam / 16.0);
    for (double t = 1.0; t <= t_hi; t *= 2.0) {
        Kernel p = heat_kernel(sd, t);
        double ct = p.table.diagonal().maxCoeff();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                double r = m.dist(x, y);
                if (r <= 0.0 || r > t) continue;
                double v = p.table(x, y);
                if (v <= 0.0 || v >= ct) continue;
                cstar = std::min(cstar, t * std::log(ct / v) / (r * r));
            }
    }
    SpeedCalibration c;
    if (!std::isfinite(cstar) || cstar <= 0.0) cstar = 1.0;
    c.c_star = cstar;
    c.c_tilde = 1.0 / (2.0 * std::sqrt(cstar));
    return c;
}

double effective_support_radius(const ModelSpace& m, const Vec& column, int center, double threshold) {
    double mx = column.cwiseAbs().maxCoeff();
    double r = 0.0;
    if (mx <= 0.0) return 0.0;
    for (int x = 0; x < column.size(); ++x)
        if (std::abs(column(x)) > threshold * mx) r = std::max(r, m.dist(x, center));
    return r;
}

FiniteSpeedReport check_finite_speed(const ModelSpace& m, const SpectralData& sd, const Symbol& f,
                                     double R, double delta, double c_tilde, double threshold) {
    if (!(R > 0.0)) throw PreconditionError("symbol lacks a certified band limit");
    FiniteSpeedReport r;
    r.bound = c_tilde * delta * R;
    Kernel k = apply_symbol(sd, f, delta);
    double mx = k.table.cwiseAbs().maxCoeff();
    for (int y = 0; y < m.n; ++y)
        for (int x = 0; x < m.n; ++x)
            if (std::abs(k.table(x, y)) > threshold * mx) r.support = std::max(r.support, m.dist(x, y));
    r.pass = r.bound >= m.diameter() || r.support <= r.bound;
    return r;
}

}  // namespace btl

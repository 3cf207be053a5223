#pragma once
// Band-limited approximation Theta of the frame cutoff Psi:
// supp Theta^ in [-R, R], Theta vanishing to order Z at 0.
//
// Theta(u) = u^Z Xi(u), where Xi is the windowed inverse transform of
// G(u) = Psi(u)/u^Z (smooth and compactly supported, since Psi = 0 near 0).
// Multiplying by a polynomial does not enlarge the transform support.
// Large arguments are summed from Theta^ = (-1)^{Z/2} d^Z Xi^ directly.

#include <vector>

#include "btl/calculus.hpp"

namespace btl {

struct ThetaOptions {
    int N = 9;                 // decay order of the vanishing bound
    int K = 4;                 // derivative order of the vanishing bound
    double u_max = 256.0;      // largest argument the symbol must resolve without aliasing
    double R0 = 16.0;          // first radius tried by the R search
    double R_max = 512.0;
};

class ThetaSymbol {
public:
    ThetaSymbol() = default;
    ThetaSymbol(double b, double R, int N, int K, double u_max);

    double eval(double u, int nu = 0) const;   // Theta^{(nu)}(u), Theta even
    double operator()(double u) const { return eval(u, 0); }
    Symbol symbol() const;

    double b() const { return b_; }
    double R() const { return R_; }
    int N() const { return N_; }
    int K() const { return K_; }
    int vanishing_order() const { return Z_; }   // Theta = O(u^Z) at 0
    int nodes() const { return static_cast<int>(tau_.size()); }
    // Xi^{(i)}(u) for i = 0..nu
    std::vector<double> xi_derivatives(double u, int nu) const;

private:
    double direct_eval(double u, int nu) const;

    double b_ = 2.0, R_ = 0.0, u_max_ = 0.0;
    int N_ = 0, K_ = 0, Z_ = 0;
    std::vector<double> tau_;     // nodes in [0, R]
    std::vector<double> F_;       // Xi^ w / pi at the nodes
    std::vector<double> H_;       // Theta^ w / pi at the nodes
};

// Smallest eps such that |Psi^{(nu)} - Theta^{(nu)}| <= eps |u|^N / (1+|u|)^{2N}
// for nu <= K on a grid over (0, u_hi].
struct ThetaErrorReport {
    double eps = 0.0;
    double worst_u = 0.0;
    int worst_nu = 0;
    double max_abs_residual0 = 0.0;  // max |Psi - Theta| (nu = 0) on the grid
    double max_weight = 0.0;         // max |u|^N/(1+|u|)^{2N} on the grid
};

ThetaErrorReport theta_error(const ThetaSymbol& th, double u_hi, int samples = 1200);

struct ThetaBuild {
    ThetaSymbol theta;
    ThetaErrorReport error;
    std::vector<double> radii_tried;
};

// Grows R (doubling from R0) until the measured vanishing-bound eps is <= eps.
// Throws ConvergenceError (with the achieved eps) past R_max.
ThetaBuild build_band_limited_theta(double b, double eps, const ThetaOptions& opt);

// Orders meeting K >= s0 + J0 + d/2 + 1 and N >= K + s0 + J0 + 3d/2 + 1.
struct ThetaOrders {
    int N = 1;
    int K = 1;
};
ThetaOrders theta_orders(double s0, double J0, double d);

}  // namespace btl

#pragma once
// Compactly supported frame theta_xi = |A_xi|^{1/2} Theta(b^{-j} sqrt L)(., xi)
// and its dual, computed at the coefficient level.

#include <string>
#include <vector>

#include "btl/addiag.hpp"
#include "btl/frames.hpp"
#include "btl/theta.hpp"

namespace btl {

struct CompactFrame {
    Frame frame;
    double R = 0.0;
    double c_tilde = 0.0;
    std::vector<int> levels;
    std::vector<double> level_support;  // max effective support radius per level
    std::vector<double> level_bound;    // c_tilde R b^{-j}
    int support_violations = 0;         // elements whose support exceeds the bound
};

CompactFrame build_compact_frame(const ModelSpace& m, const SpectralData& sd, const NetHierarchy& h,
                                 const ThetaSymbol& theta, double c_tilde, double threshold = 1e-9);

struct CompactDualResult {
    Frame dual;
    Mat C;                      // <f, theta~_xi> = sum_eta C_{xi eta} <f, psi~_eta>
    Mat D;                      // D_{xi eta} = <psi_eta - theta_eta, psi~_xi>
    NeumannReport neumann;
    double residual = 0.0;      // max relative residual of f = sum <f, theta~> theta over the battery
};

// Inverts A = I - D by the Neumann series at ad parameter eps_ad (eps1 = eps_ad/2).
// Throws PreconditionError when ||D||_eps >= 1/c*: the Theta tolerance must shrink (R grow).
CompactDualResult build_compact_dual(const SpectralData& sd, const FramePair& fp, const CompactFrame& cf,
                                     const NetGeometry& g, const SpaceParams& prm, double eps_ad,
                                     const std::vector<Vec>& battery);

struct CompactPipelineOptions {
    double s0 = 0.0, p0 = 2.0, q0 = 2.0;   // parameter box for the orders
    double eps_ad = 0.5;
    double R0 = 16.0;
    double R_max = 512.0;
    double support_threshold = 1e-9;
};

struct CompactAttempt {
    double R = 0.0;
    double theta_eps = 0.0;   // achieved vanishing-bound constant
    double d_norm = 0.0;      // ||D||_eps
    double threshold = 0.0;   // 1/c*
    bool accepted = false;
};

struct CompactPipeline {
    ThetaOrders orders;
    ThetaSymbol theta;
    ThetaErrorReport theta_error;
    CompactFrame compact;
    CompactDualResult dual;
    std::vector<CompactAttempt> attempts;
};

// Doubles R (shrinking the achieved Theta tolerance) until the Neumann
// precondition holds, then builds the dual.
CompactPipeline run_compact_pipeline(const ModelSpace& m, const SpectralData& sd, const FramePair& fp,
                                     const NetGeometry& g, const SpaceParams& prm, double d, double c_tilde,
                                     const std::vector<Vec>& battery, const CompactPipelineOptions& opt);

}  // namespace btl

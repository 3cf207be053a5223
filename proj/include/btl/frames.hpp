#pragma once
// Frame #1 (primal), its dual through the Neumann series T = Id + S, and
// measurement of the frame properties.

#include <string>
#include <vector>

#include "btl/calculus.hpp"
#include "btl/space.hpp"

namespace btl {

enum class FrameKind { Primal, Dual, Compact, CompactDual };
const char* to_string(FrameKind k);

struct Frame {
    FrameKind kind = FrameKind::Primal;
    std::vector<int> level;     // j per element
    std::vector<int> center;    // point per element
    std::vector<double> a_vol;  // |A_xi|
    std::vector<double> band_lo, band_hi;  // spectral band per element, sqrt(L) units
    Mat values;  // n x |X|, column = element
    Mat coeffs;  // n x |X|, spectral coefficients <element, e_i>

    int size() const { return static_cast<int>(level.size()); }
    // <f, element_xi> for every xi
    Vec analysis(const SpectralData& sd, const Vec& f) const { return coeffs.transpose() * sd.to_coeffs(f); }
    Vec synthesis(const Vec& t) const { return values * t; }
};

struct FrameConfig {
    double b = 2.0;
    double gamma = 1.0;     // initial net density, halved until sampling is accepted
    int max_halvings = 8;
    Mode mode = Mode::Homogeneous;
    bool auto_window = true;
    LevelWindow window;     // used when auto_window is false
};

struct SamplingReport {
    int level = 0;
    double lower = 1.0;     // 1 - eps
    double upper = 1.0;     // 1 + eps
    double eps = 0.0;
    int dim = 0;            // dimension of the spectral space
    bool empty = false;
};

// Extremal Rayleigh quotients of sum_xi |A_xi||f(xi)|^2 / ||f||^2 over
// Sigma_{b^{j+2}} (sqrt(lambda) <= b^{j+2}).
SamplingReport check_sampling(const SpectralData& sd, const Net& net, double b);

Frame build_frame1(const ModelSpace& m, const SpectralData& sd, const NetHierarchy& h, const Cutoff& phi);

struct DualBuildReport {
    double epsilon = 0.0;        // max over levels of the sampling eps
    int neumann_terms = 0;       // max over levels
    double neumann_tail = 0.0;   // max over levels of last term norm / first term norm
    std::vector<SamplingReport> sampling;
    std::vector<int> level_terms;
};

struct DualResult {
    Frame dual;
    DualBuildReport report;
};

DualResult build_dual_frame(const ModelSpace& m, const SpectralData& sd, const NetHierarchy& h,
                            const Frame& primal, const Cutoff& phi);

struct FramePair {
    NetHierarchy hierarchy;
    LevelWindow window;
    Frame primal;
    Frame dual;
    DualBuildReport report;
    double gamma = 1.0;
    int halvings = 0;
};

// Builds the hierarchy over the window, halves gamma until every level samples
// with eps < 1/2, then builds both frames.
FramePair build_frame_pair(const ModelSpace& m, const SpectralData& sd, const FrameConfig& cfg);

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
    double ratio() const { return lower > 0 ? upper / lower : 0.0; }
};

// Exact bounds of sum_xi |<f, element_xi>|^2 / ||f||^2 over mean-zero f
// (over all f in inhomogeneous mode).
FrameBounds frame_bounds(const SpectralData& sd, const Frame& f, bool include_nullspace = false);

struct ReconstructionReport {
    double dual_then_primal = 0.0;   // max relative residual of sum <f,dual>primal
    double primal_then_dual = 0.0;   // max relative residual of sum <f,primal>dual
};

ReconstructionReport check_reconstruction(const SpectralData& sd, const Frame& primal, const Frame& dual,
                                          const std::vector<Vec>& battery);

// max |<dual_xi, e_i>| over eigenvalues with sqrt(lambda) outside the element band
double band_leakage(const SpectralData& sd, const Frame& f, double rel_slack = 1e-12);

struct NormBand {
    double p = 2.0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

struct LocalizationFit {
    int m = 0;
    double kappa = 0.0;
    double beta = 0.0;
    double rms = 0.0;     // rms residual of the log fit
    int samples = 0;
};

struct FramePropertiesReport {
    std::vector<LocalizationFit> fits;   // per power m of L
    int shell_increases = 0;             // increases of the shell maxima envelope (m = 0)
    int shells = 0;
    std::vector<NormBand> norms;         // p = 1, 2, inf
    double band_leakage = 0.0;
};

FramePropertiesReport check_frame_properties(const ModelSpace& m, const SpectralData& sd, const Frame& f,
                                             const NetHierarchy& h, const std::vector<int>& powers = {0, 1, 2});

}  // namespace btl

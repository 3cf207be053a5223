#pragma once
// Besov and Triebel-Lizorkin norms on functions and on net-indexed sequences,
// the maximal operator M_t, Hardy inequalities, and frame characterization.

#include <string>
#include <vector>

#include "btl/calculus.hpp"
#include "btl/frames.hpp"
#include "btl/space.hpp"

namespace btl {

struct SpaceParams {
    double s = 0.0;
    double p = 2.0;   // may be infinity (Besov only)
    double q = 2.0;   // may be infinity
    Flavor flavor = Flavor::Classical;
    Family family = Family::TriebelLizorkin;
    double d = 1.0;
    double dstar = 1.0;

    // d/min{1,p} (Besov) or d/min{1,p,q} (Triebel-Lizorkin)
    double J() const;
    void validate() const;
    std::string label() const;
};

// Phi_j(sqrt L) f over a level window, with either flavor of weighting.
class FunctionNorms {
public:
    FunctionNorms(const ModelSpace& m, const SpectralData& sd, const LevelWindow& w, double b, Mode mode,
                  const Cutoff& phi);

    double norm(const Vec& f, const SpaceParams& prm) const;
    double besov(const Vec& f, const SpaceParams& prm) const;
    double triebel_lizorkin(const Vec& f, const SpaceParams& prm) const;

    const LevelWindow& window() const { return w_; }

private:
    // |weight_j(x) * phi_j(sqrt L) f(x)| per level (rows: levels)
    Mat level_table(const Vec& f, const SpaceParams& prm) const;

    const ModelSpace* m_;
    const SpectralData* sd_;
    LevelWindow w_;
    double b_;
    Mode mode_;
    std::vector<Vec> mult_;   // phi_j on the spectrum
    std::vector<Vec> vol_;    // |B(x, b^{-j})|
};

// Throws PreconditionError unless phi is admissible for the norms in base b.
void check_norm_cutoff(const Cutoff& phi);

class SequenceNorms {
public:
    SequenceNorms(const ModelSpace& m, const NetHierarchy& h);

    double norm(const Vec& a, const SpaceParams& prm) const;
    double b_norm(const Vec& a, const SpaceParams& prm) const;
    double f_norm(const Vec& a, const SpaceParams& prm) const;
    // p = q route: b-style sum with |A_xi| in place of |B(xi, b^{-j})|
    double f_norm_via_cells(const Vec& a, const SpaceParams& prm) const;

    int size() const { return size_; }

private:
    const ModelSpace* m_;
    const NetHierarchy* h_;
    int size_ = 0;
    std::vector<int> offset_;
};

double lp_norm(const Vec& v, const Vec& mu, double p);

// M_t f(x) = sup over balls containing x of (avg_mu |f|^t)^{1/t}.
Vec maximal_Mt(const ModelSpace& m, const Vec& f, double t);

struct ProbeResult {
    double ratio = 0.0;
    bool degenerate = false;  // 0/0 guarded
};

// ||(sum_nu |M_t f_nu|^q)^{1/q}||_p / ||(sum_nu |f_nu|^q)^{1/q}||_p
ProbeResult fs_maximal_probe(const ModelSpace& m, const std::vector<Vec>& family, double p, double q, double t);

struct HardyReport {
    double lhs1 = 0.0, lhs2 = 0.0, rhs = 0.0;
    double ratio1 = 0.0, ratio2 = 0.0;
    double bound = 0.0;  // analytic window-independent constant
    bool pass = false;
};

double hardy_constant(double gamma, double q, double b);
HardyReport hardy_check(const std::vector<double>& a, double gamma, double q, double b);

struct CharacterizationReport {
    double min_ratio = 0.0, max_ratio = 0.0;            // ||S_dual f||_seq / ||f||_func
    double min_ratio_swap = 0.0, max_ratio_swap = 0.0;  // roles of primal and dual interchanged
    double reconstruction = 0.0;                        // max relative residual of T_psi S_dual f
    double phi_ratio_lo = 0.0, phi_ratio_hi = 0.0;      // ||f||_phi / ||f||_phi2
    int count = 0;
};

CharacterizationReport check_frame_characterization(const SpectralData& sd, const std::vector<Vec>& battery,
                                                    const SpaceParams& prm, const FramePair& fp,
                                                    const FunctionNorms& norms, const FunctionNorms& norms2,
                                                    const SequenceNorms& seq);

}  // namespace btl

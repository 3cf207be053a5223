#pragma once
// Smooth synthesis/analysis molecules and smooth atoms: order formulas,
// pointwise certificates, Gram almost-diagonality, molecular synthesis and
// analysis operators, atomic decomposition through the compact frame.

#include <string>
#include <vector>

#include "btl/addiag.hpp"
#include "btl/compact.hpp"
#include "btl/seqspace.hpp"

namespace btl {

enum class MoleculeKind { Synthesis, Analysis };
const char* to_string(MoleculeKind k);

struct MoleculeOrders {
    Flavor flavor = Flavor::Classical;
    double J = 0.0;
    int K = 0;
    bool K_defined = false;      // s <= J (classical), s <= J d/d* (tilde)
    int N = 0;
    bool N_defined = false;      // s >= 0
    double M = 0.0;              // decay exponent
    double M_threshold = 0.0;    // J (classical), J + |s| (tilde)
    double cancel_limit = 0.0;   // J (classical), J d/d* (tilde)
};

// M <= 0 picks the smallest integer above the threshold.
MoleculeOrders compute_orders(const SpaceParams& prm, Flavor flavor, double M = 0.0);

// Which conditions apply, exactly as the definitions state them.
struct MoleculeConditions {
    bool smooth = false;         // (ii)
    bool cancel = false;         // (iii)
    int smooth_lo = 0, smooth_hi = -1;   // nu range for L^nu m
    int cancel_power = 0;                // m = L^P b
    int cancel_lo = 0, cancel_hi = -1;   // nu range for L^nu b
};
MoleculeConditions molecule_conditions(const MoleculeOrders& o, MoleculeKind kind, double s);

struct ConditionConstant {
    std::string name;   // "size", "smooth", "cancel"
    int nu = 0;
    double constant = 0.0;   // smallest c making the pointwise bound hold
    int arg_xi = -1, arg_x = -1;
};

struct MoleculeCertificate {
    MoleculeKind kind = MoleculeKind::Synthesis;
    Flavor space_flavor = Flavor::Classical;
    MoleculeOrders orders;
    MoleculeConditions conditions;
    std::vector<ConditionConstant> constants;
    double max_constant = 0.0;
    double budget = 1.0;
    double factorization_residual = 0.0;   // max |m - L^P b| / max |m| for supplied companions
    bool companion_supplied = false;
    bool pass = false;
    // 1/max_constant: the scaling that makes the family meet the budget exactly
    double scaling() const { return max_constant > 0 ? budget / max_constant : 0.0; }
};

struct MoleculeOptions {
    double budget = 1.0;
    Mode mode = Mode::Homogeneous;   // inhomogeneous: (iii) dropped at level 0
    double M = 0.0;                  // <= 0: default from compute_orders
    const Mat* companion = nullptr;  // point values of b_xi (columns), else L^{-P} m
};

// family: n x |X| point values, column k centered at g.center[k].
MoleculeCertificate validate_molecule(const ModelSpace& m, const SpectralData& sd, const NetGeometry& g,
                                      const Mat& family, MoleculeKind kind, const SpaceParams& prm,
                                      Flavor space_flavor, const MoleculeOptions& opt = {});

struct GramCertificate {
    Mat a;                           // a_{xi eta} = <m_eta, m~_xi>
    std::vector<double> deltas;
    std::vector<double> constants;   // max |a| / omega(delta) per delta
    double best_delta = 0.0;
    double best_constant = 0.0;      // over deltas with constant <= budget, the largest delta
    double budget = 0.0;
    bool pass = false;
};

GramCertificate gram(const ModelSpace& m, const NetGeometry& g, const Mat& synth, const Mat& anal,
                     const SpaceParams& prm, Flavor flavor, const std::vector<double>& deltas, double budget);

struct MolecularSynthesis {
    Vec f;
    double ratio = 0.0;   // ||f||_F / ||t||_f
};

MolecularSynthesis molecular_synthesis(const Vec& t, const Mat& family, const FunctionNorms& fn,
                                       const SequenceNorms& seq, const SpaceParams& prm);

struct MolecularAnalysis {
    Vec t;
    double direct_gap = 0.0;   // max |t - <f, m~>_mu| / max |t|
    double ratio = 0.0;        // ||t||_f / ||f||_F
};

// t_xi = sum_eta <m~_xi, psi_eta> <f, psi~_eta>
MolecularAnalysis molecular_analysis(const SpectralData& sd, const Vec& f, const Mat& family,
                                     const FramePair& fp, const FunctionNorms& fn, const SequenceNorms& seq,
                                     const SpaceParams& prm);

struct AtomOrders {
    int K = 0;        // >= (floor((J - s)/2) + 1)_+
    int K_tilde = 0;  // >= (floor(s/2) + 2)_+
};
AtomOrders atom_orders(const SpaceParams& prm);

struct AtomCertificate {
    AtomOrders orders;
    std::vector<ConditionConstant> constants;   // "size" (n <= K~), "companion" (nu <= K)
    double max_constant = 0.0;
    double support_constant = 0.0;   // smallest c with supp L^nu b_xi in c B_xi (1e-9 effective support)
    double support_budget = 0.0;
    std::vector<int> levels;
    std::vector<double> level_support;   // max effective radius per level over nu
    double budget = 1.0;
    bool pass = false;
    double scaling() const { return max_constant > 0 ? budget / max_constant : 0.0; }
};

struct AtomOptions {
    double budget = 1.0;
    double support_budget = 0.0;   // <= 0: unlimited
    double threshold = 1e-9;
    int K = -1, K_tilde = -1;      // < 0: minimal orders
};

AtomCertificate validate_atoms(const ModelSpace& m, const SpectralData& sd, const NetGeometry& g,
                               const Mat& family, const SpaceParams& prm, const AtomOptions& opt = {});

struct AtomicDecomposition {
    Vec t;                 // t_xi = <f, theta~_xi>
    double c_star = 0.0;   // a_xi = c_star theta_xi
    double residual = 0.0; // ||f - sum (t/c_star) a||_2 / ||f||_2
    double coeff_ratio = 0.0;      // ||t||_f / ||f||_F
    double synthesis_ratio = 0.0;  // ||sum t a||_F / ||t / c_star||_f
};

AtomicDecomposition atomic_decompose(const SpectralData& sd, const Vec& f, const CompactPipeline& pl,
                                     double c_star, const FunctionNorms& fn, const SequenceNorms& seq,
                                     const SpaceParams& prm);

}  // namespace btl

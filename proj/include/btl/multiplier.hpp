#pragma once
// Spectral multipliers m(sqrt L): symbols from a small expression grammar,
// the Mihlin condition on the model's spectral range, the frame route
// m(sqrt L) f = sum <f, psi~_xi> m(sqrt L) psi_xi, and boundedness ratios.

#include <memory>
#include <string>
#include <vector>

#include "btl/frames.hpp"
#include "btl/jet.hpp"
#include "btl/seqspace.hpp"

namespace btl {

// Grammar: numbers, the variable (lambda, λ or x), + - * / ^, unary minus,
// parentheses, exp log sqrt sin cos abs. Integer exponents use repeated products.
class SymbolExpr {
public:
    struct Node;

    SymbolExpr() = default;
    static SymbolExpr parse(const std::string& text);   // throws PreconditionError on syntax errors

    double operator()(double lambda) const;
    Jet eval(const Jet& lambda) const;
    // m^{(nu)}(lambda)
    double derivative(double lambda, int nu) const;
    Symbol symbol() const;
    const std::string& text() const { return text_; }

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

struct AhlforsScan {
    double d = 0.0;
    double c4 = 0.0;       // smallest c with c^{-1} r^d <= |B(x,r)| <= c r^d over the scan
    double factor = 0.0;   // configured acceptance factor
    bool regular = false;
};

// Radii 1 .. diameter at every point.
AhlforsScan ahlfors_scan(const ModelSpace& m, double d, double factor = 4.0);

struct MihlinSymbol {
    SymbolExpr m;
    int ell = 0;
    double threshold = 0.0;        // J + d/2 (+|s| tilde), or J (+|s|) when Ahlfors regular
    bool relaxed = false;          // Ahlfors-regular threshold applied
    double range_lo = 0.0, range_hi = 0.0;
    double mihlin_sup = 0.0;       // max_nu sup |lambda^nu m^(nu)| over the range
    std::vector<double> sup_per_order;
    bool range_restricted = false; // sup grows when the range is widened
    double widened_sup = 0.0;
    double evenness_gap = 0.0;     // max |m(-l) - m(l)| over the grid
    bool even_extended = false;    // symbol taken as m(|lambda|)
    double spectrum_sup = 0.0;     // max |m(sqrt lambda_i)|
};

struct MihlinOptions {
    bool even_extension = false;   // accept non-even symbols as m(|lambda|)
    int samples = 4000;
    const AhlforsScan* ahlfors = nullptr;
};

// Grid covers [sqrt(lambda_2)/b^2, b^2 sqrt(lambda_n)], log-spaced.
MihlinSymbol check_mihlin(const SymbolExpr& m, int ell, const SpaceParams& prm, const SpectralData& sd, double b,
                          const MihlinOptions& opt = {});

struct MultiplierApplication {
    Vec direct;   // m(sqrt L) f
    Vec frame;    // sum <f, psi~> m(sqrt L) psi
    double gap = 0.0;   // ||direct - frame||_2 / ||direct||_2 (absolute when direct = 0)
};

// Throws PreconditionError when the routes disagree beyond tol.
MultiplierApplication apply_multiplier(const SpectralData& sd, const Symbol& m, const Vec& f, const FramePair& fp,
                                       double tol = 1e-9);

struct BoundednessRow {
    SpaceParams params;
    double max_ratio = 0.0;   // max ||m f|| / ||f||
    int samples = 0;
};

std::vector<BoundednessRow> boundedness_report(const SpectralData& sd, const Symbol& m,
                                               const std::vector<SpaceParams>& grid,
                                               const std::vector<Vec>& battery, const FunctionNorms& fn);

// max relative gap between m2(m1 f) and (m1 m2) f
double multiplicativity_gap(const SpectralData& sd, const Symbol& m1, const Symbol& m2,
                            const std::vector<Vec>& battery);

}  // namespace btl

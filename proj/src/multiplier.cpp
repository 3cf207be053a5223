#include "btl/multiplier.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace btl {

struct SymbolExpr::Node {
    enum Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg, Func } op = Num;
    double value = 0.0;
    std::string func;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodeP = std::shared_ptr<const SymbolExpr::Node>;
using Node = SymbolExpr::Node;

NodeP make(Node::Op op, NodeP a = nullptr, NodeP b = nullptr, double v = 0.0, std::string f = {}) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    n->value = v;
    n->func = std::move(f);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodeP parse() {
        NodeP e = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + s_.substr(i_, 1) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw PreconditionError("symbol expression: " + what + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    NodeP expr() {
        NodeP l = term();
        for (;;) {
            if (eat('+')) l = make(Node::Add, l, term());
            else if (eat('-')) l = make(Node::Sub, l, term());
            else return l;
        }
    }
    NodeP term() {
        NodeP l = unary();
        for (;;) {
            if (eat('*')) l = make(Node::Mul, l, unary());
            else if (eat('/')) l = make(Node::Div, l, unary());
            else return l;
        }
    }
    NodeP unary() {
        if (eat('-')) return make(Node::Neg, unary());
        if (eat('+')) return unary();
        return power();
    }
    NodeP power() {
        NodeP base = primary();
        if (eat('^')) return make(Node::Pow, base, unary());   // right associative
        return base;
    }
    NodeP primary() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        if (eat('(')) {
            NodeP e = expr();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s_.substr(i_), &used);
            } catch (const std::exception&) {
                fail("bad number");
            }
            i_ += used;
            return make(Node::Num, nullptr, nullptr, v);
        }
        if (s_.compare(i_, 2, "λ") == 0) {
            i_ += 2;
            return make(Node::Var);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
            std::string id = s_.substr(i_, j - i_);
            i_ = j;
            if (id == "lambda" || id == "x") return make(Node::Var);
            if (id == "pi") return make(Node::Num, nullptr, nullptr, 3.14159265358979323846);
            static const char* funcs[] = {"exp", "log", "sqrt", "sin", "cos", "abs"};
            for (const char* f : funcs)
                if (id == f) {
                    if (!eat('(')) fail("expected '(' after " + id);
                    NodeP arg = expr();
                    if (!eat(')')) fail("missing ')'");
                    return make(Node::Func, arg, nullptr, 0.0, id);
                }
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    size_t i_ = 0;
};

Jet constant(double v, const Jet& like) { return Jet(v, like.order()); }
double constant(double v, double) { return v; }

template <class T>
T integer_power(const T& a, long k) {
    T r = constant(1.0, a);
    T base = a;
    long e = std::labs(k);
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return k < 0 ? T(constant(1.0, a) / r) : r;
}

template <class T>
T evaluate(const Node& n, const T& x) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sqrt;
    switch (n.op) {
    case Node::Num: return constant(n.value, x);
    case Node::Var: return x;
    case Node::Add: return evaluate(*n.a, x) + evaluate(*n.b, x);
    case Node::Sub: return evaluate(*n.a, x) - evaluate(*n.b, x);
    case Node::Mul: return evaluate(*n.a, x) * evaluate(*n.b, x);
    case Node::Div: return evaluate(*n.a, x) / evaluate(*n.b, x);
    case Node::Neg: return -evaluate(*n.a, x);
    case Node::Pow: {
        T base = evaluate(*n.a, x);
        if (n.b->op == Node::Num && n.b->value == std::round(n.b->value) && std::abs(n.b->value) <= 1e6)
            return integer_power(base, static_cast<long>(n.b->value));
        T e = evaluate(*n.b, x);
        if (value_of(base) <= 0.0) throw PreconditionError("symbol expression: non-integer power of a nonpositive value");
        return exp(e * log(base));
    }
    case Node::Func: {
        T a = evaluate(*n.a, x);
        if (n.func == "exp") return exp(a);
        if (n.func == "log") {
            if (value_of(a) <= 0.0) throw PreconditionError("symbol expression: log of a nonpositive value");
            return log(a);
        }
        if (n.func == "sqrt") {
            if (value_of(a) < 0.0) throw PreconditionError("symbol expression: sqrt of a negative value");
            return sqrt(a);
        }
        if (n.func == "sin") return sin(a);
        if (n.func == "cos") return cos(a);
        return value_of(a) < 0.0 ? T(-a) : a;   // abs
    }
    }
    return constant(0.0, x);
}

}  // namespace

SymbolExpr SymbolExpr::parse(const std::string& text) {
    SymbolExpr e;
    e.root_ = Parser(text).parse();
    e.text_ = text;
    return e;
}

double SymbolExpr::operator()(double lambda) const {
    if (!root_) throw PreconditionError("empty symbol expression");
    return evaluate(*root_, lambda);
}

Jet SymbolExpr::eval(const Jet& lambda) const {
    if (!root_) throw PreconditionError("empty symbol expression");
    return evaluate(*root_, lambda);
}

double SymbolExpr::derivative(double lambda, int nu) const {
    if (nu == 0) return (*this)(lambda);
    return eval(Jet::variable(lambda, nu)).derivative(nu);
}

Symbol SymbolExpr::symbol() const {
    SymbolExpr copy = *this;
    return [copy](double l) { return copy(l); };
}

AhlforsScan ahlfors_scan(const ModelSpace& m, double d, double factor) {
    AhlforsScan a;
    a.d = d;
    a.factor = factor;
    const double diam = m.diameter();
    for (int x = 0; x < m.n; ++x)
        for (double r = 1.0; r <= diam + 1e-12; r += 1.0) {
            double v = ball_volume(m, x, r);
            double p = std::pow(r, d);
            a.c4 = std::max({a.c4, v / p, p / v});
        }
    a.regular = a.c4 <= factor;
    return a;
}

namespace {

// on lambda > 0 the even extension agrees with m, so one grid serves both
double log_grid_sup(const SymbolExpr& m, int ell, double lo, double hi, int samples,
                    std::vector<double>* per_order) {
    double sup = 0.0;
    if (per_order) per_order->assign(ell + 1, 0.0);
    for (int i = 0; i < samples; ++i) {
        double l = lo * std::pow(hi / lo, double(i) / (samples - 1));
        Jet j = m.eval(Jet::variable(l, ell));
        double lp = 1.0;
        for (int nu = 0; nu <= ell; ++nu) {
            double v = std::abs(lp * j.derivative(nu));
            sup = std::max(sup, v);
            if (per_order) (*per_order)[nu] = std::max((*per_order)[nu], v);
            lp *= l;
        }
    }
    return sup;
}

}  // namespace

MihlinSymbol check_mihlin(const SymbolExpr& m, int ell, const SpaceParams& prm, const SpectralData& sd, double b,
                          const MihlinOptions& opt) {
    if (ell < 0) throw PreconditionError("smoothness order must be nonnegative");
    MihlinSymbol r;
    r.m = m;
    r.ell = ell;
    const double J = prm.J();
    const double extra = prm.flavor == Flavor::Tilde ? std::abs(prm.s) : 0.0;
    r.relaxed = opt.ahlfors && opt.ahlfors->regular;
    r.threshold = (r.relaxed ? J : J + prm.d / 2.0) + extra;
    if (!(ell > r.threshold))
        throw PreconditionError("smoothness order " + std::to_string(ell) + " does not exceed " +
                                std::to_string(r.threshold));
    if (sd.n() < 2) throw PreconditionError("spectrum too small for a range");
    r.range_lo = std::sqrt(sd.lambda(sd.nullspace_dim)) / (b * b);
    r.range_hi = b * b * std::sqrt(sd.lambda(sd.n() - 1));

    for (int i = 0; i < opt.samples; ++i) {
        double l = r.range_lo * std::pow(r.range_hi / r.range_lo, double(i) / (opt.samples - 1));
        r.evenness_gap = std::max(r.evenness_gap, std::abs(m(-l) - m(l)));
    }
    if (r.evenness_gap > 1e-12) {
        if (!opt.even_extension) throw PreconditionError("symbol is not even: " + m.text());
        r.even_extended = true;
    }
    r.mihlin_sup = log_grid_sup(m, ell, r.range_lo, r.range_hi, opt.samples, &r.sup_per_order);
    // four more factors of b^2 on both sides
    double w = std::pow(b, 8.0);
    r.widened_sup = log_grid_sup(m, ell, r.range_lo / w, r.range_hi * w, opt.samples, nullptr);
    r.range_restricted = r.widened_sup > r.mihlin_sup * (1.0 + 1e-6) + 1e-12;
    Vec sl = sd.sqrt_lambda();
    for (int i = 0; i < sl.size(); ++i) r.spectrum_sup = std::max(r.spectrum_sup, std::abs(m(sl(i))));
    return r;
}

MultiplierApplication apply_multiplier(const SpectralData& sd, const Symbol& m, const Vec& f, const FramePair& fp,
                                       double tol) {
    MultiplierApplication r;
    Vec mult = symbol_on_spectrum(sd, m, 1.0);
    Vec g = fp.hierarchy.mode == Mode::Homogeneous ? sd.project_mean_zero(f) : f;
    r.direct = apply_spectral(sd, mult, g);
    // m(sqrt L) psi_xi has coefficients mult .* coeffs(psi_xi)
    Vec t = fp.dual.analysis(sd, g);
    r.frame = sd.from_coeffs(mult.cwiseProduct(fp.primal.coeffs * t));
    double nd = sd.norm2(r.direct);
    double diff = sd.norm2(r.direct - r.frame);
    r.gap = nd > 0 ? diff / nd : diff;
    if (!(r.gap <= tol))
        throw PreconditionError("multiplier routes disagree: gap " + std::to_string(r.gap) +
                                " (frame construction defect)");
    return r;
}

std::vector<BoundednessRow> boundedness_report(const SpectralData& sd, const Symbol& m,
                                               const std::vector<SpaceParams>& grid,
                                               const std::vector<Vec>& battery, const FunctionNorms& fn) {
    Vec mult = symbol_on_spectrum(sd, m, 1.0);
    std::vector<Vec> images;
    images.reserve(battery.size());
    for (const Vec& f : battery) images.push_back(apply_spectral(sd, mult, f));
    std::vector<BoundednessRow> out;
    for (const SpaceParams& prm : grid) {
        BoundednessRow row;
        row.params = prm;
        for (size_t i = 0; i < battery.size(); ++i) {
            double nf = fn.norm(battery[i], prm);
            if (!(nf > 0)) continue;
            row.max_ratio = std::max(row.max_ratio, fn.norm(images[i], prm) / nf);
            ++row.samples;
        }
        out.push_back(row);
    }
    return out;
}

double multiplicativity_gap(const SpectralData& sd, const Symbol& m1, const Symbol& m2,
                            const std::vector<Vec>& battery) {
    Vec a = symbol_on_spectrum(sd, m1, 1.0), b = symbol_on_spectrum(sd, m2, 1.0);
    Vec ab = a.cwiseProduct(b);
    double gap = 0.0;
    for (const Vec& f : battery) {
        Vec two = apply_spectral(sd, b, apply_spectral(sd, a, f));
        Vec one = apply_spectral(sd, ab, f);
        double n = std::max(sd.norm2(one), 1e-300);
        gap = std::max(gap, sd.norm2(two - one) / n);
    }
    return gap;
}

}  // namespace btl

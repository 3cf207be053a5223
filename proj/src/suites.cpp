#include "btl/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#ifdef BTL_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

#include "btl/battery.hpp"
#include "btl/molecules.hpp"
#include "btl/multiplier.hpp"

namespace btl {

using json = nlohmann::json;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> t{
        {"eigen", 1e-10},        {"partition", 1e-12}, {"telescoping", 1e-10}, {"reconstruction", 1e-9},
        {"leakage", 1e-10},      {"omega", 1e-14},     {"neumann", 1e-9},      {"analysis", 1e-9},
        {"atomic", 1e-6},        {"routes", 1e-9},     {"multiplicativity", 1e-10},
        {"ceiling", 1e-9},       {"compact", 1e-6},
    };
    return t;
}

[[noreturn]] void bad(const std::string& what) { throw ConfigError(what); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) bad(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) bad("unknown key '" + it.key() + "' in " + where);
    }
}

double number(const json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return kInf;
    }
    bad(what + " must be a number");
}

int integer(const json& v, const std::string& what, int lo) {
    if (!v.is_number_integer()) bad(what + " must be an integer");
    long long x = v.get<long long>();
    if (x < lo || x > 1000000) bad(what + " out of range");
    return static_cast<int>(x);
}

Flavor parse_flavor(const std::string& s) {
    if (s == "classical") return Flavor::Classical;
    if (s == "tilde") return Flavor::Tilde;
    bad("unknown flavor '" + s + "'");
}

// ratio a/b or b/a, whichever is >= 1
double spread(double a, double b) {
    if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b)) return kInf;
    return std::max(a / b, b / a);
}

void verdict(Record& r, bool ok, const std::string& why) {
    r.status = r.hard ? (ok ? Status::Pass : Status::Fail) : Status::Record;
    if (!ok) r.message = why;
}

std::vector<double> radius_ladder(double diam) {
    std::vector<double> v;
    for (double d = 1.0; d <= diam; d *= 2.0) v.push_back(d);
    return v;
}

// random +-1 entries times omega(delta): ||A||_delta = 1 exactly
Mat signed_omega(const NetGeometry& g, double delta, const SpaceParams& prm, std::uint64_t seed) {
    Mat a = omega_matrix(g, delta, delta, prm, prm.flavor);
    std::mt19937_64 rng(seed);
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i)
            if (rng() & 1u) a(i, j) = -a(i, j);
    return a;
}

using Measure = std::function<std::vector<std::pair<std::string, double>>(Context&)>;

// Records the measured values, then the same values on the refined model and
// their worst spread. Refinement off: values only.
void measure_with_refinement(Context& ctx, Record& r, const Measure& f) {
    auto base = f(ctx);
    for (const auto& [k, v] : base) r.set(k, v);
    Context* fine = ctx.refined();
    if (!fine) return;
    std::string why = fine->prepare(NeedModel | NeedSpectrum | NeedFrames);
    if (!why.empty()) {
        r.set("refined_error", why);
        r.set("stable", false);
        return;
    }
    auto ref = f(*fine);
    double worst = 1.0;
    for (size_t i = 0; i < base.size() && i < ref.size(); ++i) {
        r.set(ref[i].first + "_refined", ref[i].second);
        worst = std::max(worst, spread(base[i].second, ref[i].second));
    }
    r.set("refined_n", ctx.config().refine);
    r.set("stability", worst);
    r.set("stable", worst < 2.0);
}

std::vector<SpaceParams> space_grid(Context& c, bool both_families) {
    std::vector<SpaceParams> out;
    for (const auto& spq : c.config().grid)
        for (Flavor fl : c.config().flavors) {
            out.push_back(c.params(spq[0], spq[1], spq[2], fl, Family::TriebelLizorkin));
            if (both_families) out.push_back(c.params(spq[0], spq[1], spq[2], fl, Family::Besov));
        }
    return out;
}

std::string key_of(const SpaceParams& p) {
    std::ostringstream os;
    os << (p.family == Family::Besov ? "B" : "F") << (p.flavor == Flavor::Tilde ? "~" : "") << "(" << p.s << ","
       << p.p << "," << p.q << ")";
    return os.str();
}

}  // namespace

// ---------------- config ----------------

double SuiteConfig::tolerance(const std::string& key) const {
    auto it = tol.find(key);
    if (it != tol.end()) return it->second;
    return default_tolerances().at(key);
}

SuiteConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    only_keys(j, "config", {"model", "b", "gamma", "mode", "grid", "flavors", "battery", "seed", "refine", "symbols",
                            "tolerances", "suites"});
    SuiteConfig c;
    if (!j.contains("model")) bad("config needs a model");
    const json& m = j["model"];
    only_keys(m, "model", {"kind", "n", "scale", "edges", "mu"});
    c.model_kind = m.value("kind", std::string("cycle"));
    if (c.model_kind == "cycle") c.model.kind = GraphKind::Cycle;
    else if (c.model_kind == "torus") c.model.kind = GraphKind::Torus;
    else if (c.model_kind == "path") c.model.kind = GraphKind::Path;
    else if (c.model_kind == "tree") c.model.kind = GraphKind::Tree;
    else bad("unknown model kind '" + c.model_kind + "'");
    if (m.contains("n")) c.model.n = integer(m["n"], "model.n", 1);
    if (m.contains("scale")) c.model.scale = number(m["scale"], "model.scale");
    if (!(c.model.scale > 0) || !std::isfinite(c.model.scale)) bad("model.scale must be positive");
    if (m.contains("edges")) {
        if (!m["edges"].is_array()) bad("model.edges must be a list");
        for (const json& e : m["edges"]) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3) bad("edges are [u, v] or [u, v, length]");
            TreeEdge te{integer(e[0], "edge endpoint", 0), integer(e[1], "edge endpoint", 0), 1.0};
            if (e.size() == 3) te.length = number(e[2], "edge length");
            c.model.edges.push_back(te);
        }
    }
    if (m.contains("mu")) {
        if (!m["mu"].is_array()) bad("model.mu must be a list");
        for (const json& v : m["mu"]) c.model.mu.push_back(number(v, "mu weight"));
    }

    if (j.contains("b")) c.b = number(j["b"], "b");
    if (!(c.b > 1.0) || !std::isfinite(c.b)) bad("b must exceed 1");
    if (j.contains("gamma")) c.gamma = number(j["gamma"], "gamma");
    if (!(c.gamma > 0.0 && c.gamma <= 1.0)) bad("gamma must lie in (0, 1]");
    if (j.contains("mode")) {
        std::string s = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
        if (s == "homogeneous") c.mode = Mode::Homogeneous;
        else if (s == "inhomogeneous") c.mode = Mode::Inhomogeneous;
        else bad("mode must be homogeneous or inhomogeneous");
    }
    if (j.contains("grid")) {
        if (!j["grid"].is_array()) bad("grid must be a list of [s, p, q]");
        for (const json& t : j["grid"]) {
            if (!t.is_array() || t.size() != 3) bad("grid entries are [s, p, q]");
            std::array<double, 3> spq{number(t[0], "s"), number(t[1], "p"), number(t[2], "q")};
            if (!(spq[1] > 0) || !(spq[2] > 0)) bad("p and q must be positive");
            c.grid.push_back(spq);
        }
    } else {
        for (double s : {-1.0, 0.0, 1.0})
            for (double p : {1.0, 2.0})
                for (double q : {1.0, 2.0}) c.grid.push_back({s, p, q});
    }
    if (j.contains("flavors")) {
        if (!j["flavors"].is_array() || j["flavors"].empty()) bad("flavors must be a nonempty list");
        c.flavors.clear();
        for (const json& f : j["flavors"]) {
            if (!f.is_string()) bad("flavor names are strings");
            c.flavors.push_back(parse_flavor(f.get<std::string>()));
        }
    }
    if (j.contains("battery")) {
        const json& b = j["battery"];
        only_keys(b, "battery", {"functions", "large", "sequences", "hardy", "triples"});
        if (b.contains("functions")) c.functions = integer(b["functions"], "battery.functions", 1);
        if (b.contains("large")) c.large = integer(b["large"], "battery.large", 1);
        if (b.contains("sequences")) c.sequences = integer(b["sequences"], "battery.sequences", 1);
        if (b.contains("hardy")) c.hardy = integer(b["hardy"], "battery.hardy", 1);
        if (b.contains("triples")) c.triples = integer(b["triples"], "battery.triples", 1);
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) bad("seed must be a nonnegative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("refine")) c.refine = integer(j["refine"], "refine", 0);
    if (j.contains("symbols")) {
        if (!j["symbols"].is_array()) bad("symbols must be a list of expressions");
        c.symbols.clear();
        for (const json& s : j["symbols"]) {
            if (!s.is_string()) bad("symbols are strings");
            try {
                SymbolExpr::parse(s.get<std::string>());
            } catch (const PreconditionError& e) {
                bad(std::string("bad symbol: ") + e.what());
            }
            c.symbols.push_back(s.get<std::string>());
        }
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) bad("tolerances must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            if (!default_tolerances().count(it.key())) bad("unknown tolerance '" + it.key() + "'");
            double v = number(it.value(), "tolerance " + it.key());
            if (!(v > 0)) bad("tolerances must be positive");
            c.tol[it.key()] = v;
        }
    }
    if (j.contains("suites")) {
        const json& s = j["suites"];
        if (s.is_string() && s.get<std::string>() == "all") {
            c.all_suites = true;
        } else {
            if (!s.is_array()) bad("suites must be a list of names or \"all\"");
            c.all_suites = false;
            for (const json& name : s) {
                if (!name.is_string()) bad("suite names are strings");
                std::string n = name.get<std::string>();
                if (!find_suite(n)) bad("unknown suite '" + n + "'");
                c.suites.push_back(n);
            }
        }
    }
    if (c.refine > 0 && (c.model.kind == GraphKind::Tree || !c.model.mu.empty()))
        bad("refine needs a cycle, path or torus with uniform weights");
    // a model that cannot be built is a config problem, not a suite failure
    try {
        validate_model(build_model(c.model));
    } catch (const Error& e) {
        bad(std::string("model: ") + e.what());
    }
    return c;
}

SuiteConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

// ---------------- context ----------------

Context::Context(SuiteConfig cfg) : cfg_(std::move(cfg)) {}

const ModelSpace& Context::model() {
    if (!m_) {
        auto m = std::make_unique<ModelSpace>(build_model(cfg_.model));
        validate_model(*m);
        m_ = std::move(m);
    }
    return *m_;
}

const DoublingProfile& Context::profile() {
    if (!prof_) prof_ = std::make_unique<DoublingProfile>(measure_doubling(model()));
    return *prof_;
}

const SpectralData& Context::spectrum() {
    if (!sd_) sd_ = std::make_unique<SpectralData>(eigendecompose(model()));
    return *sd_;
}

const FramePair& Context::frames() {
    if (!fp_) {
        FrameConfig fc;
        fc.b = cfg_.b;
        fc.gamma = cfg_.gamma;
        fc.mode = cfg_.mode;
        fp_ = std::make_unique<FramePair>(build_frame_pair(model(), spectrum(), fc));
    }
    return *fp_;
}

const NetGeometry& Context::geometry() {
    if (!g_) g_ = std::make_unique<NetGeometry>(net_geometry(model(), frames().hierarchy));
    return *g_;
}

const FunctionNorms& Context::norms() {
    if (!fn_)
        fn_ = std::make_unique<FunctionNorms>(model(), spectrum(), frames().window, cfg_.b, cfg_.mode,
                                              make_cutoff(CutoffKind::C, cfg_.b));
    return *fn_;
}

const FunctionNorms& Context::norms_b() {
    if (!fn_b_)
        fn_b_ = std::make_unique<FunctionNorms>(model(), spectrum(), frames().window, cfg_.b, cfg_.mode,
                                                make_cutoff(CutoffKind::B, cfg_.b));
    return *fn_b_;
}

const SequenceNorms& Context::sequence_norms() {
    if (!seq_) seq_ = std::make_unique<SequenceNorms>(model(), frames().hierarchy);
    return *seq_;
}

const std::vector<Vec>& Context::battery() {
    if (!bat_)
        bat_ = std::make_unique<std::vector<Vec>>(
            function_battery(spectrum(), cfg_.functions, cfg_.seed, BatteryKind::Mixed, cfg_.mode));
    return *bat_;
}

const std::vector<Vec>& Context::large_battery() {
    if (!large_)
        large_ = std::make_unique<std::vector<Vec>>(
            function_battery(spectrum(), cfg_.large, cfg_.seed + 1, BatteryKind::Mixed, cfg_.mode));
    return *large_;
}

double Context::c_tilde() {
    if (c_tilde_ < 0) c_tilde_ = calibrate_speed_constant(model(), spectrum()).c_tilde;
    return c_tilde_;
}

const CompactPipeline& Context::compact() {
    if (!compact_) {
        if (cfg_.mode == Mode::Inhomogeneous)
            throw PreconditionError("compact frames are built in homogeneous mode only");
        CompactPipelineOptions opt;
        SpaceParams prm = params(0.0, 2.0, 2.0, Flavor::Classical);
        compact_ = std::make_unique<CompactPipeline>(run_compact_pipeline(
            model(), spectrum(), frames(), geometry(), prm, profile().d, c_tilde(), battery(), opt));
    }
    return *compact_;
}

SpaceParams Context::params(double s, double p, double q, Flavor fl, Family fam) {
    SpaceParams prm;
    prm.s = s;
    prm.p = p;
    prm.q = q;
    prm.flavor = fl;
    prm.family = fam;
    prm.d = profile().d;
    prm.dstar = profile().dstar;
    return prm;
}

Context* Context::refined() {
    if (cfg_.refine <= 0) return nullptr;
    if (!refined_) {
        SuiteConfig c = cfg_;
        c.model.n = cfg_.refine;
        c.model.mu.clear();
        c.refine = 0;
        refined_ = std::make_unique<Context>(std::move(c));
    }
    return refined_.get();
}

std::string Context::prepare(unsigned needs) {
    const std::pair<unsigned, const char*> steps[] = {
        {NeedModel, "model"}, {NeedSpectrum, "spectrum"}, {NeedFrames, "frames"}, {NeedCompact, "compact frame"}};
    for (const auto& [bit, name] : steps) {
        if (!(needs & bit)) continue;
        auto it = failed_.find(bit);
        if (it != failed_.end()) return it->second;
        try {
            switch (bit) {
            case NeedModel: model(), profile(); break;
            case NeedSpectrum: spectrum(); break;
            case NeedFrames: frames(), geometry(); break;
            default: compact(); break;
            }
        } catch (const std::exception& e) {
            std::string why = std::string(name) + ": " + e.what();
            failed_[bit] = why;
            return why;
        }
    }
    return {};
}

// ---------------- suites ----------------

namespace {

// space

void run_doubling(Context& c, Record& r) {
    const auto& p = c.profile();
    r.set("c0", p.c0);
    r.set("d", p.d);
    r.set("c2", p.c2);
    r.set("dstar", p.dstar);
    r.set("r_min", p.r_min);
    r.set("r_max", p.r_max);
    r.set("truncated", p.truncated);
    r.set("diameter", c.model().diameter());
    verdict(r, p.dstar <= p.d + 1e-12, "reverse doubling exponent exceeds d");
}

void run_lemma91(Context& c, Record& r) {
    const auto& m = c.model();
    int checks = 0, violations = 0;
    double worst = 0.0;
    for (double delta : radius_ladder(m.diameter())) {
        auto centers = build_maximal_net(m, delta);
        for (double k : {1.0, 2.0, 4.0}) {
            CountReport cr = check_net_count(m, centers, delta, k * delta, c.profile());
            ++checks;
            violations += cr.pass ? 0 : 1;
            worst = std::max(worst, cr.lhs_max / cr.rhs);
        }
    }
    r.set("checks", checks);
    r.set("violations", violations);
    r.set("max_ratio", worst);
    verdict(r, violations == 0, "count bound violated");
}

void run_lemma92(Context& c, Record& r) {
    const auto& m = c.model();
    const double d = c.profile().d;
    int checks = 0, violations = 0;
    double worst = 0.0;
    for (double sigma : {d + 0.5, d + 1.0, 2.0 * d + 1.0})
        for (double delta : radius_ladder(m.diameter())) {
            auto centers = build_maximal_net(m, delta);
            for (double k : {1.0, 2.0}) {
                SumReport s = check_net_sum(m, centers, delta, k * delta, sigma, c.profile());
                ++checks;
                violations += s.pass ? 0 : 1;
                worst = std::max(worst, s.ratio);
            }
        }
    r.set("checks", checks);
    r.set("violations", violations);
    r.set("max_ratio", worst);
    verdict(r, violations == 0, "net sum bound violated");
}

void run_discrete_sum(Context& c, Record& r) {
    const auto& m = c.model();
    const double d = c.profile().d;
    int checks = 0, violations = 0;
    double worst = 0.0;
    for (double delta : radius_ladder(m.diameter())) {
        auto centers = build_maximal_net(m, delta);
        SumReport s = check_discrete_sum(m, centers, delta, d + 1.0, delta, 2.0 * delta, c.profile());
        ++checks;
        violations += s.pass ? 0 : 1;
        worst = std::max(worst, s.ratio);
    }
    r.set("checks", checks);
    r.set("violations", violations);
    r.set("max_ratio", worst);
    verdict(r, violations == 0, "two-point sum bound violated");
}

void run_peetre(Context& c, Record& r) {
    const double sigma = c.profile().d + 1.0;
    double worst = 0.0;
    for (double delta : {1.0, 2.0, 4.0}) {
        PeetreReport p = check_peetre_integrals(c.model(), sigma, sigma, delta, delta, c.profile());
        std::string k = "delta" + format_number(delta) + "_";
        r.set(k + "c_single", p.c_single);
        r.set(k + "c_pair", p.c_pair);
        r.set(k + "c_pair_a", p.c_pair_a);
        r.set(k + "c_pair_b", p.c_pair_b);
        worst = std::max({worst, p.c_single, p.c_pair, p.c_pair_a, p.c_pair_b});
    }
    r.set("max_constant", worst);
    verdict(r, std::isfinite(worst), "nonfinite constant");
}

void run_net_invariants(Context& c, Record& r) {
    const auto& m = c.model();
    const auto& cfg = c.config();
    // levels from delta_j >= diameter down to delta_j < 1
    int j_lo = static_cast<int>(std::floor(std::log(cfg.gamma / m.diameter()) / std::log(cfg.b))) - 2;
    int j_hi = static_cast<int>(std::ceil(std::log(cfg.gamma) / std::log(cfg.b))) - 1;
    NetHierarchy h = build_hierarchy(m, cfg.b, cfg.gamma, j_lo, j_hi, Mode::Homogeneous);
    int levels = 0;
    NetCheck total;
    auto add = [&](const Net& net) {
        NetCheck k = check_net(m, net.centers, net.owner, net.delta);
        total.separation_violations += k.separation_violations;
        total.maximality_violations += k.maximality_violations;
        total.sandwich_violations += k.sandwich_violations;
        total.cover_violations += k.cover_violations;
        ++levels;
    };
    for (const Net& net : h.levels) add(net);
    // the hierarchy the frames use, when it exists
    if (c.prepare(NeedSpectrum | NeedFrames).empty())
        for (const Net& net : c.frames().hierarchy.levels) add(net);
    r.set("levels", levels);
    r.set("separation_violations", total.separation_violations);
    r.set("maximality_violations", total.maximality_violations);
    r.set("sandwich_violations", total.sandwich_violations);
    r.set("cover_violations", total.cover_violations);
    verdict(r, total.ok(), "net invariant violated");
}

// calculus

void run_spectral(Context& c, Record& r) {
    const auto& sd = c.spectrum();
    double rec = eigen_reconstruction_error(c.model(), sd);
    Mat G = sd.E.transpose() * sd.mu.asDiagonal() * sd.E;
    double orth = (G - Mat::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
    double tol = c.config().tolerance("eigen");
    r.set("reconstruction", rec);
    r.set("orthonormality", orth);
    r.set("lambda_min", sd.lambda(0));
    r.set("lambda_max", sd.lambda(sd.n() - 1));
    r.set("nullspace_dim", sd.nullspace_dim);
    verdict(r, rec <= tol && orth <= tol && sd.nullspace_dim == 1, "eigendecomposition outside tolerance");
}

void run_cutoffs(Context& c, Record& r) {
    const double b = c.config().b;
    Cutoff a = make_cutoff(CutoffKind::A, b), bb = make_cutoff(CutoffKind::B, b), cc = make_cutoff(CutoffKind::C, b);
    double part = quadratic_partition_error(cc);
    double flat = std::max(std::abs(a(0.5) - 1.0), std::abs(a(b + 0.01)));
    double band = std::max(std::abs(bb(0.99 / b)), std::abs(bb(1.01 * b)));
    bool norm_ok = true;
    try {
        check_norm_cutoff(cc);
    } catch (const PreconditionError&) {
        norm_ok = false;
    }
    r.set("partition_error", part);
    r.set("lowpass_error", flat);
    r.set("band_error", band);
    r.set("norm_admissible", norm_ok);
    verdict(r, part <= c.config().tolerance("partition") && flat == 0.0 && band == 0.0 && norm_ok,
            "cutoff not admissible");
}

void run_telescoping(Context& c, Record& r) {
    const auto& sd = c.spectrum();
    const auto& cfg = c.config();
    LevelWindow w = default_window(sd, cfg.b, cfg.mode);
    double worst = 0.0;
    for (const Vec& f : c.battery()) worst = std::max(worst, sd.norm2(f - lp_sum(sd, w, cfg.b, cfg.mode, f)) / sd.norm2(f));
    r.set("j_min", w.j_min);
    r.set("j_max", w.j_max);
    r.set("functions", static_cast<int>(c.battery().size()));
    r.set("max_residual", worst);
    verdict(r, worst <= cfg.tolerance("telescoping"), "telescoping residual too large");
}

void run_localization(Context& c, Record& r) {
    measure_with_refinement(c, r, [](Context& x) {
        const auto& sd = x.spectrum();
        const double b = x.config().b;
        LevelWindow w = default_window(sd, b, x.config().mode);
        Cutoff phi = make_cutoff(CutoffKind::C, b);
        std::vector<int> orders{2, 4, 6};
        std::vector<double> worst(orders.size(), 0.0);
        for (int j = w.j_min; j <= w.j_max; ++j) {
            double delta = std::pow(b, -j);
            Kernel k = apply_symbol(sd, phi.symbol(), delta);
            auto rep = measure_localization(x.model(), k, delta, orders);
            for (size_t i = 0; i < orders.size(); ++i) worst[i] = std::max(worst[i], rep.a_eff[i]);
        }
        std::vector<std::pair<std::string, double>> out;
        for (size_t i = 0; i < orders.size(); ++i) out.emplace_back("A" + std::to_string(orders[i]), worst[i]);
        return out;
    });
    verdict(r, true, "");
}

void run_holder(Context& c, Record& r) {
    HolderReport h = heat_holder_profile(c.model(), c.spectrum(), {1.0, 4.0, 16.0});
    double worst = 0.0;
    for (size_t i = 0; i < h.times.size(); ++i) {
        r.set("t" + format_number(h.times[i]) + "_ratio", h.max_ratio[i]);
        worst = std::max(worst, h.max_ratio[i]);
    }
    r.set("max_ratio", worst);
    verdict(r, std::isfinite(worst), "nonfinite Holder ratio");
}

void run_finite_speed(Context& c, Record& r) {
    const double ct = c.c_tilde();
    r.set("c_tilde", ct);
    int within = 0, total = 0;
    for (double t : {1.0, 2.0, 4.0, 8.0}) {
        auto f = [t](double u) { return std::cos(t * u); };
        FiniteSpeedReport fs = check_finite_speed(c.model(), c.spectrum(), f, t, 1.0, ct);
        r.set("t" + format_number(t) + "_support", fs.support);
        r.set("t" + format_number(t) + "_bound", fs.bound);
        within += fs.pass ? 1 : 0;
        ++total;
    }
    r.set("within_bound", within);
    r.set("probes", total);
    verdict(r, true, "");
}

// frames

void run_sampling(Context& c, Record& r) {
    const auto& fp = c.frames();
    double worst = 0.0;
    int empty = 0;
    for (const auto& s : fp.report.sampling) {
        worst = std::max(worst, s.eps);
        empty += s.empty ? 1 : 0;
    }
    r.set("gamma", fp.gamma);
    r.set("halvings", fp.halvings);
    r.set("levels", static_cast<int>(fp.report.sampling.size()));
    r.set("empty_levels", empty);
    r.set("max_eps", worst);
    r.set("index_size", fp.hierarchy.size());
    verdict(r, worst < 0.5, "sampling eps not below 1/2");
}

void run_reconstruction(Context& c, Record& r) {
    auto rep = check_reconstruction(c.spectrum(), c.frames().primal, c.frames().dual, c.battery());
    r.set("dual_then_primal", rep.dual_then_primal);
    r.set("primal_then_dual", rep.primal_then_dual);
    r.set("functions", static_cast<int>(c.battery().size()));
    double tol = c.config().tolerance("reconstruction");
    verdict(r, rep.dual_then_primal <= tol && rep.primal_then_dual <= tol, "reconstruction residual too large");
}

void run_frame_bounds(Context& c, Record& r) {
    bool with_null = c.config().mode == Mode::Inhomogeneous;
    FrameBounds p = frame_bounds(c.spectrum(), c.frames().primal, with_null);
    FrameBounds d = frame_bounds(c.spectrum(), c.frames().dual, with_null);
    r.set("primal_lower", p.lower);
    r.set("primal_upper", p.upper);
    r.set("primal_ratio", p.ratio());
    r.set("dual_lower", d.lower);
    r.set("dual_upper", d.upper);
    r.set("dual_ratio", d.ratio());
    bool finite = p.lower > 0 && d.lower > 0 && std::isfinite(p.upper) && std::isfinite(d.upper);
    r.set("finite", finite);
    verdict(r, finite, "degenerate frame bounds");
}

void run_leakage(Context& c, Record& r) {
    double leak = band_leakage(c.spectrum(), c.frames().dual);
    r.set("max_leakage", leak);
    r.set("elements", c.frames().dual.size());
    verdict(r, leak <= c.config().tolerance("leakage"), "dual coefficients leak outside the band");
}

void run_frame_localization(Context& c, Record& r) {
    auto rep = check_frame_properties(c.model(), c.spectrum(), c.frames().dual, c.frames().hierarchy);
    for (const auto& f : rep.fits) {
        std::string k = "m" + std::to_string(f.m) + "_";
        r.set(k + "kappa", f.kappa);
        r.set(k + "beta", f.beta);
        r.set(k + "rms", f.rms);
    }
    r.set("shell_increases", rep.shell_increases);
    r.set("shells", rep.shells);
    for (const auto& nb : rep.norms) {
        std::string k = "norm_p" + format_number(nb.p) + "_";
        r.set(k + "min", nb.min_ratio);
        r.set(k + "max", nb.max_ratio);
    }
    verdict(r, true, "");
}

// seqspace

void run_norm_equivalence(Context& c, Record& r) {
    measure_with_refinement(c, r, [](Context& x) {
        std::vector<std::pair<std::string, double>> out;
        double widest = 0.0;
        for (const SpaceParams& prm : space_grid(x, true)) {
            auto rep = check_frame_characterization(x.spectrum(), x.large_battery(), prm, x.frames(), x.norms(),
                                                    x.norms_b(), x.sequence_norms());
            double width = rep.max_ratio / rep.min_ratio;
            out.emplace_back(key_of(prm) + "_width", width);
            widest = std::max(widest, width);
        }
        out.emplace_back("max_width", widest);
        return out;
    });
    // the band edges themselves at the configured size
    for (const SpaceParams& prm : space_grid(c, true)) {
        auto rep = check_frame_characterization(c.spectrum(), c.large_battery(), prm, c.frames(), c.norms(),
                                                c.norms_b(), c.sequence_norms());
        r.set(key_of(prm) + "_min", rep.min_ratio);
        r.set(key_of(prm) + "_max", rep.max_ratio);
        r.set(key_of(prm) + "_reconstruction", rep.reconstruction);
    }
    verdict(r, true, "");
}

void run_hardy(Context& c, Record& r) {
    const auto& cfg = c.config();
    int violations = 0;
    double window_spread = 1.0;
    for (double gamma : {0.5, 1.0})
        for (double q : {0.5, 1.0, 2.0}) {
            double bound = hardy_constant(gamma, q, cfg.b);
            std::vector<double> per_window;
            for (int len : {10, 20, 40}) {
                double worst = 0.0;
                for (const auto& a : hardy_battery(len, cfg.hardy, cfg.seed + len)) {
                    HardyReport h = hardy_check(a, gamma, q, cfg.b);
                    violations += h.pass ? 0 : 1;
                    worst = std::max({worst, h.ratio1, h.ratio2});
                }
                per_window.push_back(worst);
            }
            std::string k = "g" + format_number(gamma) + "_q" + format_number(q) + "_";
            r.set(k + "bound", bound);
            for (size_t i = 0; i < per_window.size(); ++i)
                r.set(k + "L" + std::to_string(10 << i), per_window[i]);
            double mx = *std::max_element(per_window.begin(), per_window.end());
            r.set(k + "max", mx);
            if (mx > bound) ++violations;
            window_spread = std::max(window_spread, spread(per_window.front(), per_window.back()));
        }
    r.set("violations", violations);
    r.set("window_spread", window_spread);
    verdict(r, violations == 0, "Hardy inequality violated");
}

void run_maximal(Context& c, Record& r) {
    measure_with_refinement(c, r, [](Context& x) {
        const auto& bat = x.battery();
        double worst_2 = 0.0, worst_4 = 0.0;
        for (size_t k = 0; k + 4 <= bat.size(); k += 4) {
            std::vector<Vec> fam(bat.begin() + k, bat.begin() + k + 4);
            auto a = fs_maximal_probe(x.model(), fam, 2.0, 2.0, 1.0);
            auto b = fs_maximal_probe(x.model(), fam, 4.0, 2.0, 1.0);
            if (!a.degenerate) worst_2 = std::max(worst_2, a.ratio);
            if (!b.degenerate) worst_4 = std::max(worst_4, b.ratio);
        }
        return std::vector<std::pair<std::string, double>>{{"p2_q2_ratio", worst_2}, {"p4_q2_ratio", worst_4}};
    });
    verdict(r, true, "");
}

// addiag

void run_omega(Context& c, Record& r) {
    const auto& g = c.geometry();
    const int n = g.size();
    const double tol = c.config().tolerance("omega");
    std::mt19937_64 rng(c.config().seed + 7);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int diag_bad = 0, ident_bad = 0, mono_bad = 0;
    double ident_gap = 0.0;
    for (const SpaceParams& prm : space_grid(c, false)) {
        for (int x = 0; x < n; ++x)
            for (double delta : {0.25, 0.5, 1.0})
                if (omega(g, x, x, delta, prm, prm.flavor) != 1.0) ++diag_bad;
        for (int t = 0; t < c.config().triples; ++t) {
            int xi = pick(rng), eta = pick(rng);
            double eps = 0.05 + 1.95 * unit(rng);
            double beta = eps * (1.0 - unit(rng)), gam = eps * (1.0 - unit(rng));
            double w_eps = omega(g, xi, eta, eps, prm, prm.flavor);
            double w_bg = omega2(g, xi, eta, beta, gam, prm, prm.flavor);
            double w_bb = omega2(g, xi, eta, beta, beta, prm, prm.flavor);
            double w_b = omega(g, xi, eta, beta, prm, prm.flavor);
            double gap = std::abs(w_bb - w_b) / std::max(w_b, 1e-300);
            ident_gap = std::max(ident_gap, gap);
            if (gap > tol) ++ident_bad;
            if (w_eps > w_bg * (1.0 + 1e-14)) ++mono_bad;
        }
    }
    r.set("diagonal_violations", diag_bad);
    r.set("identity_violations", ident_bad);
    r.set("identity_gap", ident_gap);
    r.set("monotonicity_violations", mono_bad);
    r.set("triples_per_space", c.config().triples);
    verdict(r, diag_bad + ident_bad + mono_bad == 0, "weight identity violated");
}

void run_lemma64(Context& c, Record& r) {
    measure_with_refinement(c, r, [](Context& x) {
        std::vector<std::pair<std::string, double>> out;
        double overall = 0.0;
        for (Flavor fl : x.config().flavors) {
            SpaceParams prm = x.params(0.0, 2.0, 2.0, fl);
            double worst = 0.0;
            for (double beta : {0.2, 0.4, 0.6})
                for (double g1 : {0.3, 0.7, 1.1})
                    for (double g2 : {0.4, 0.8, 1.2})
                        worst = std::max(worst, w_bound_check(x.geometry(), beta, g1, g2, prm, fl).max_ratio);
            out.emplace_back(std::string(to_string(fl)) + "_max_ratio", worst);
            overall = std::max(overall, worst);
        }
        out.emplace_back("max_ratio", overall);
        return out;
    });
    verdict(r, true, "");
}

void run_thm62(Context& c, Record& r) {
    measure_with_refinement(c, r, [](Context& x) {
        std::vector<std::pair<std::string, double>> out;
        const double delta = 0.5;
        auto seqs = sequence_battery(x.geometry().size(), x.config().sequences, x.config().seed + 11);
        for (Family fam : {Family::Besov, Family::TriebelLizorkin})
            for (Flavor fl : x.config().flavors) {
                SpaceParams prm = x.params(0.0, 2.0, 2.0, fl, fam);
                NetMatrix A{signed_omega(x.geometry(), delta, prm, x.config().seed + 13), prm, fl};
                auto rep = boundedness_probe(x.geometry(), A, delta, x.sequence_norms(), prm, seqs);
                out.emplace_back(key_of(prm) + "_ratio", rep.max_ratio);
            }
        return out;
    });
    verdict(r, true, "");
}

void run_neumann(Context& c, Record& r) {
    const auto& g = c.geometry();
    const double eps = 0.5;
    SpaceParams prm = c.params(0.0, 2.0, 2.0, Flavor::Classical);
    Mat pert = signed_omega(g, eps, prm, c.config().seed + 17);
    NetMatrix A{Mat::Identity(g.size(), g.size()) + 0.01 * pert, prm, Flavor::Classical};
    NeumannResult res = neumann_invert(g, A, eps);
    const NeumannReport& n = res.report;
    r.set("d_norm", n.d_norm);
    r.set("c_star", n.c_star);
    r.set("threshold", n.threshold);
    r.set("terms", n.terms);
    r.set("bound_violations", n.bound_violations);
    r.set("residual_right", n.residual_right);
    r.set("residual_left", n.residual_left);
    r.set("inverse_ad", n.inverse_ad);
    double decay = 0.0;   // worst ratio of consecutive term norms
    for (size_t i = 1; i < n.term_ad.size(); ++i)
        if (n.term_ad[i - 1] > 0) decay = std::max(decay, n.term_ad[i] / n.term_ad[i - 1]);
    r.set("max_term_ratio", decay);
    double tol = c.config().tolerance("neumann");
    verdict(r, n.residual_right <= tol && n.residual_left <= tol && n.bound_violations == 0,
            "Neumann inverse inaccurate or term bound violated");
}

void run_algebra(Context& c, Record& r) {
    double worst = 0.0;
    for (Flavor fl : c.config().flavors) {
        SpaceParams prm = c.params(0.0, 2.0, 2.0, fl);
        NetMatrix A{signed_omega(c.geometry(), 1.0, prm, c.config().seed + 19), prm, fl};
        NetMatrix B{signed_omega(c.geometry(), 0.5, prm, c.config().seed + 23), prm, fl};
        AlgebraReport a = algebra_check(c.geometry(), A, B, 1.0, 0.5);
        r.set(std::string(to_string(fl)) + "_constant", a.constant);
        worst = std::max(worst, a.constant);
    }
    r.set("max_constant", worst);
    verdict(r, std::isfinite(worst), "nonfinite algebra constant");
}

void run_compact(Context& c, Record& r) {
    const auto& pl = c.compact();
    for (const auto& a : pl.attempts) {
        std::string k = "R" + format_number(a.R) + "_";
        r.set(k + "d_norm", a.d_norm);
        r.set(k + "accepted", a.accepted);
    }
    r.set("R", pl.compact.R);
    r.set("N", pl.orders.N);
    r.set("K", pl.orders.K);
    r.set("c_tilde", pl.compact.c_tilde);
    r.set("threshold", pl.dual.neumann.threshold);
    r.set("d_norm", pl.dual.neumann.d_norm);
    r.set("neumann_terms", pl.dual.neumann.terms);
    r.set("neumann_bound_violations", pl.dual.neumann.bound_violations);
    r.set("support_violations", pl.compact.support_violations);
    r.set("residual", pl.dual.residual);
    bool ok = pl.dual.residual <= c.config().tolerance("compact") && pl.compact.support_violations == 0 &&
              pl.dual.neumann.bound_violations == 0;
    verdict(r, ok, "compact frame or its dual out of tolerance");
}

// molecules

struct Scaled {
    Mat synth, anal;
    MoleculeCertificate cs, ca;
};

Scaled scaled_families(Context& c, const SpaceParams& prm, Flavor fl) {
    MoleculeOptions o;
    o.mode = c.config().mode;
    Scaled s;
    s.cs = validate_molecule(c.model(), c.spectrum(), c.geometry(), c.frames().primal.values, MoleculeKind::Synthesis,
                             prm, fl, o);
    s.ca = validate_molecule(c.model(), c.spectrum(), c.geometry(), c.frames().dual.values, MoleculeKind::Analysis,
                             prm, fl, o);
    s.synth = s.cs.scaling() * c.frames().primal.values;
    s.anal = s.ca.scaling() * c.frames().dual.values;
    return s;
}

void run_molecules(Context& c, Record& r) {
    bool finite = true;
    for (Flavor fl : c.config().flavors) {
        SpaceParams prm = c.params(0.0, 2.0, 2.0, fl);
        Scaled s = scaled_families(c, prm, fl);
        std::string k = std::string(to_string(fl)) + "_";
        r.set(k + "synthesis_max", s.cs.max_constant);
        r.set(k + "synthesis_scaling", s.cs.scaling());
        r.set(k + "analysis_max", s.ca.max_constant);
        r.set(k + "analysis_scaling", s.ca.scaling());
        r.set(k + "M", s.cs.orders.M);
        r.set(k + "K", s.cs.orders.K);
        r.set(k + "N", s.cs.orders.N);
        for (const auto& cc : s.cs.constants)
            r.set(k + "synthesis_" + cc.name + std::to_string(cc.nu), cc.constant);
        for (const auto& cc : s.ca.constants)
            r.set(k + "analysis_" + cc.name + std::to_string(cc.nu), cc.constant);
        finite = finite && std::isfinite(s.cs.max_constant) && std::isfinite(s.ca.max_constant) &&
                 s.cs.max_constant > 0 && s.ca.max_constant > 0;
    }
    r.set("finite", finite);
    verdict(r, finite, "nonfinite molecule constant");
}

void run_gram(Context& c, Record& r) {
    std::vector<double> deltas;
    for (int i = 1; i <= 40; ++i) deltas.push_back(0.05 * i);
    bool all = true;
    for (Flavor fl : c.config().flavors) {
        SpaceParams prm = c.params(0.0, 2.0, 2.0, fl);
        Scaled s = scaled_families(c, prm, fl);
        GramCertificate gc = gram(c.model(), c.geometry(), s.synth, s.anal, prm, fl, deltas, 1.0);
        std::string k = std::string(to_string(fl)) + "_";
        r.set(k + "pass", gc.pass);
        r.set(k + "best_delta", gc.best_delta);
        r.set(k + "best_constant", gc.best_constant);
        r.set(k + "constant_at_0.5", gc.constants[9]);
        all = all && gc.pass;
    }
    verdict(r, all, "Gram matrix fails the almost-diagonal certificate");
}

void run_mol_synthesis(Context& c, Record& r) {
    measure_with_refinement(c, r, [](Context& x) {
        std::vector<std::pair<std::string, double>> out;
        auto seqs = sequence_battery(x.geometry().size(), x.config().sequences, x.config().seed + 29);
        for (Flavor fl : x.config().flavors) {
            SpaceParams prm = x.params(0.0, 2.0, 2.0, fl);
            Scaled s = scaled_families(x, prm, fl);
            double worst = 0.0;
            for (const Vec& t : seqs)
                worst = std::max(worst, molecular_synthesis(t, s.synth, x.norms(), x.sequence_norms(), prm).ratio);
            out.emplace_back(std::string(to_string(fl)) + "_ratio", worst);
        }
        return out;
    });
    verdict(r, true, "");
}

void run_mol_analysis(Context& c, Record& r) {
    double gap = 0.0;
    for (Flavor fl : c.config().flavors) {
        SpaceParams prm = c.params(0.0, 2.0, 2.0, fl);
        Scaled s = scaled_families(c, prm, fl);
        double worst = 0.0;
        for (const Vec& f : c.battery()) {
            auto a = molecular_analysis(c.spectrum(), f, s.anal, c.frames(), c.norms(), c.sequence_norms(), prm);
            gap = std::max(gap, a.direct_gap);
            worst = std::max(worst, a.ratio);
        }
        r.set(std::string(to_string(fl)) + "_ratio", worst);
    }
    r.set("direct_gap", gap);
    verdict(r, gap <= c.config().tolerance("analysis"), "frame route disagrees with direct pairing");
}

void run_atomic(Context& c, Record& r) {
    const auto& pl = c.compact();
    const auto& fp = c.frames();
    SpaceParams prm = c.params(0.0, 2.0, 2.0, Flavor::Classical);
    const double b = c.config().b;
    AtomOptions ao;
    // c~ R b^{-j} measured in units of delta_j = gamma b^{-j-2}
    ao.support_budget = pl.compact.c_tilde * pl.compact.R * b * b / fp.hierarchy.gamma;
    AtomCertificate at = validate_atoms(c.model(), c.spectrum(), c.geometry(), pl.compact.frame.values, prm, ao);
    double worst = 0.0;
    for (const Vec& f : c.battery())
        worst = std::max(worst, atomic_decompose(c.spectrum(), f, pl, at.scaling(), c.norms(), c.sequence_norms(), prm)
                                    .residual);
    // the support bound says nothing when even the finest level allows the whole space
    double finest = pl.compact.c_tilde * pl.compact.R * std::pow(b, -fp.hierarchy.j_max());
    bool vacuous = finest >= c.model().diameter();
    r.set("K", at.orders.K);
    r.set("K_tilde", at.orders.K_tilde);
    r.set("atom_max_constant", at.max_constant);
    r.set("c_star", at.scaling());
    r.set("support_constant", at.support_constant);
    r.set("support_budget", at.support_budget);
    r.set("support_vacuous", vacuous);
    r.set("certificate_pass", at.pass);
    r.set("max_residual", worst);
    verdict(r, at.pass && worst <= c.config().tolerance("atomic"), "atomic decomposition out of tolerance");
}

// multiplier

std::vector<SymbolExpr> configured_symbols(const SuiteConfig& cfg) {
    std::vector<SymbolExpr> out;
    for (const auto& s : cfg.symbols) out.push_back(SymbolExpr::parse(s));
    return out;
}

void run_mihlin(Context& c, Record& r) {
    AhlforsScan ah = ahlfors_scan(c.model(), c.profile().d);
    r.set("ahlfors_c4", ah.c4);
    r.set("ahlfors_regular", ah.regular);
    MihlinOptions mo;
    mo.ahlfors = &ah;
    mo.even_extension = true;
    int idx = 0;
    for (const SymbolExpr& m : configured_symbols(c.config())) {
        for (Flavor fl : c.config().flavors) {
            SpaceParams prm = c.params(0.0, 2.0, 2.0, fl);
            double thr = (ah.regular ? prm.J() : prm.J() + prm.d / 2.0);
            int ell = static_cast<int>(std::floor(thr)) + 1;
            MihlinSymbol ms = check_mihlin(m, ell, prm, c.spectrum(), c.config().b, mo);
            std::string k = "m" + std::to_string(idx) + "_" + to_string(fl) + "_";
            r.set(k + "ell", ell);
            r.set(k + "sup", ms.mihlin_sup);
            r.set(k + "range_restricted", ms.range_restricted);
            r.set(k + "even_extended", ms.even_extended);
            r.set(k + "spectrum_sup", ms.spectrum_sup);
        }
        r.set("m" + std::to_string(idx) + "_text", m.text());
        ++idx;
    }
    verdict(r, true, "");
}

void run_routes(Context& c, Record& r) {
    std::vector<SymbolExpr> syms = configured_symbols(c.config());
    syms.push_back(SymbolExpr::parse("exp(-lambda^2)"));
    syms.push_back(SymbolExpr::parse("1"));
    double gap = 0.0;
    for (const SymbolExpr& m : syms)
        for (const Vec& f : c.battery())
            gap = std::max(gap, apply_multiplier(c.spectrum(), m.symbol(), f, c.frames(), kInf).gap);
    double mult = multiplicativity_gap(c.spectrum(), syms.front().symbol(), syms[syms.size() - 2].symbol(),
                                       c.battery());
    r.set("route_gap", gap);
    r.set("multiplicativity_gap", mult);
    r.set("symbols", static_cast<int>(syms.size()));
    verdict(r, gap <= c.config().tolerance("routes") && mult <= c.config().tolerance("multiplicativity"),
            "multiplier routes disagree");
}

void run_mult_boundedness(Context& c, Record& r) {
    measure_with_refinement(c, r, [](Context& x) {
        std::vector<std::pair<std::string, double>> out;
        Symbol m = configured_symbols(x.config()).front().symbol();
        auto rows = boundedness_report(x.spectrum(), m, space_grid(x, true), x.battery(), x.norms());
        for (const auto& row : rows) out.emplace_back(key_of(row.params) + "_ratio", row.max_ratio);
        return out;
    });
    // the (0,2,2) ceiling: at s = 0, p = q = 2 the norms see m only through |m| on the spectrum
    SymbolExpr m = configured_symbols(c.config()).front();
    double sup = 0.0;
    Vec sl = c.spectrum().sqrt_lambda();
    for (int i = 0; i < sl.size(); ++i)
        if (c.config().mode == Mode::Inhomogeneous || i >= c.spectrum().nullspace_dim) sup = std::max(sup, std::abs(m(sl(i))));
    std::vector<SpaceParams> center;
    for (Flavor fl : c.config().flavors) center.push_back(c.params(0.0, 2.0, 2.0, fl));
    auto rows = boundedness_report(c.spectrum(), m.symbol(), center, c.battery(), c.norms());
    double worst = 0.0;
    for (const auto& row : rows) worst = std::max(worst, row.max_ratio);
    r.set("ratio_022", worst);
    r.set("sup_m", sup);
    verdict(r, worst <= sup + c.config().tolerance("ceiling"), "ratio at (0,2,2) exceeds sup |m|");
}

std::vector<SuiteInfo> build_catalogue() {
    const unsigned M = NeedModel, S = NeedModel | NeedSpectrum, F = S | NeedFrames, C = F | NeedCompact;
    return {
        {"doubling-profile", "(1.1)-(1.2),(1.7)", "space", 0, false, M,
         "measured doubling and reverse doubling constants over all radii", run_doubling},
        {"lemma9.1", "Lemma 9.1", "space", 0, true, M,
         "net point counts in balls against c0 6^d (delta*/delta)^d, exhaustive", run_lemma91},
        {"lemma9.2", "Lemma 9.2", "space", 0, true, M,
         "one-sided net sums against c0 6^d 2^sigma / (1 - 2^(d-sigma)), exhaustive", run_lemma92},
        {"lemma2.3-discrete-sum", "Lemma 2.3", "space", 0, true, M,
         "two-point discrete sums over nets, worst ratio over all pairs", run_discrete_sum},
        {"peetre-integrals", "Lemma 2.1-2.2", "space", 0, false, M,
         "extremal constants of the discrete decay integrals", run_peetre},
        {"net-invariants", "(2.6)-(2.7)", "space", 0, true, M,
         "separation, maximality and sandwich for every constructed net", run_net_invariants},
        {"spectral-decomposition", "plumbing", "calculus", 1, true, S,
         "mu-orthonormal eigendecomposition of L and its reconstruction error", run_spectral},
        {"cutoff-admissibility", "Def 2.1", "calculus", 1, true, S,
         "support and partition-of-unity properties of the three cutoff types", run_cutoffs},
        {"lp-telescoping", "Thm 3.4", "calculus", 1, true, S,
         "f equals the sum of Psi_j(sqrt L) f over the level window", run_telescoping},
        {"kernel-localization", "Thm 2.2", "calculus", 1, false, S,
         "measured decay constants A_N of band-limited kernels per level", run_localization},
        {"heat-holder", "(1.4)-(1.6)", "calculus", 1, false, S,
         "measured Holder ratios of the heat kernel", run_holder},
        {"finite-speed", "Prop 2.1", "calculus", 1, false, S,
         "effective support of cos(t sqrt L) against the calibrated c~ t", run_finite_speed},
        {"sampling", "Lemma 4.1", "frames", 2, true, F,
         "sampling eps per level below 1/2 after gamma halving", run_sampling},
        {"thm4.2-reconstruction", "Thm 4.2(a)", "frames", 2, true, F,
         "two-sided reconstruction with the primal and dual frames", run_reconstruction},
        {"frame-bounds", "(4.13)", "frames", 2, false, F,
         "exact frame bounds of the primal and dual families", run_frame_bounds},
        {"dual-band-leakage", "(4.10)", "frames", 2, true, F,
         "dual elements vanish outside their spectral bands", run_leakage},
        {"frame-localization", "Thm 4.2(b)-(d)", "frames", 2, false, F,
         "fitted decay of dual elements and of L^m applied to them", run_frame_localization},
        {"norm-equivalence", "Thm 5.5-5.6", "seqspace", 3, false, F,
         "band of ||coefficients||_seq / ||f|| over the parameter grid, all eight spaces", run_norm_equivalence},
        {"hardy", "Lemma 9.4", "seqspace", 3, true, M,
         "both Hardy inequalities on random windows of length 10, 20, 40", run_hardy},
        {"maximal-inequality", "(2.23)", "seqspace", 3, false, S,
         "vector-valued maximal ratio over random families", run_maximal},
        {"omega-identities", "Def 6.1", "addiag", 3, true, F,
         "omega_xixi = 1, omega(beta,beta) = omega(beta), monotonicity on random triples", run_omega},
        {"lemma6.4-W-bound", "Lemma 6.4", "addiag", 3, false, F,
         "brute-force W / omega(beta, gamma1 ^ gamma2) over a 3x3x3 grid", run_lemma64},
        {"thm6.2-boundedness", "Thm 6.2", "addiag", 3, false, F,
         "||Ah|| / ||h|| for ||A||_delta = 1 in all four sequence spaces", run_thm62},
        {"thm6.3-neumann", "Thm 6.3(ii)", "addiag", 3, true, F,
         "Neumann inversion of I + 0.01 omega with the term bound", run_neumann},
        {"algebra", "Thm 6.3(i)", "addiag", 3, false, F,
         "composition constant ||AB|| / (||A|| ||B||)", run_algebra},
        {"thm6.7-compact-frame", "Thm 6.7", "addiag", 3, true, C,
         "compactly supported frame, its dual and the R doubling loop", run_compact},
        {"lemma7.2-molecules", "Lemma 7.2", "molecules", 4, false, F,
         "molecule constants of the primal and dual frames", run_molecules},
        {"lemma7.3-gram", "Lemma 7.3", "molecules", 4, true, F,
         "Gram matrix of scaled molecule families is almost diagonal", run_gram},
        {"thm7.4-synthesis", "Thm 7.4", "molecules", 4, false, F,
         "molecular synthesis ratio ||sum t m|| / ||t||", run_mol_synthesis},
        {"thm7.5-analysis", "Thm 7.5", "molecules", 4, true, F,
         "molecular analysis through the frame agrees with direct pairing", run_mol_analysis},
        {"thm7.9-atomic", "Thm 7.9", "molecules", 4, true, C,
         "atomic decomposition with the compact frame and the atom certificate", run_atomic},
        {"thm8.1-mihlin", "Thm 8.1", "multiplier", 4, false, S,
         "Mihlin constants of the configured symbols and the Ahlfors scan", run_mihlin},
        {"thm8.1-routes", "(8.2)", "multiplier", 4, true, F,
         "frame route against direct calculus, and multiplicativity", run_routes},
        {"thm8.1-boundedness", "Thm 8.1", "multiplier", 4, true, F,
         "multiplier ratios over the grid and the (0,2,2) ceiling", run_mult_boundedness},
    };
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalogue() {
    static const std::vector<SuiteInfo> cat = build_catalogue();
    return cat;
}

const SuiteInfo* find_suite(const std::string& name) {
    for (const auto& s : suite_catalogue())
        if (s.name == name) return &s;
    return nullptr;
}

Report run_suites(const SuiteConfig& cfg) {
    Report rep;
    Context ctx(cfg);

    std::vector<const SuiteInfo*> todo;
    for (const auto& s : suite_catalogue())
        if (cfg.all_suites || std::find(cfg.suites.begin(), cfg.suites.end(), s.name) != cfg.suites.end())
            todo.push_back(&s);
    std::stable_sort(todo.begin(), todo.end(), [](auto* a, auto* b) { return a->stage < b->stage; });

    std::map<std::string, bool> reported;   // dependency failures get one error record each
    for (const SuiteInfo* s : todo) {
        Record r;
        r.suite = s->name;
        r.anchor = s->anchor;
        r.hard = s->hard;
        auto t0 = std::chrono::steady_clock::now();
        std::string why = ctx.prepare(s->needs);
        if (!why.empty()) {
            bool unsupported = (s->needs & NeedCompact) && cfg.mode == Mode::Inhomogeneous;
            if (!unsupported && !reported[why]) {
                reported[why] = true;
                Record e;
                e.suite = "dependency";
                e.anchor = "plumbing";
                e.status = Status::Error;
                e.message = why;
                rep.records.push_back(e);
            }
            r.status = Status::Skipped;
            r.message = "dependency failed: " + why;
        } else {
            try {
                s->run(ctx, r);
            } catch (const std::exception& e) {
                r.fields.clear();
                r.status = Status::Error;
                r.message = e.what();
                r.hard = true;
            }
        }
        r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.records.push_back(std::move(r));
    }

    rep.note("model", describe(cfg.model));
    rep.note("mode", to_string(cfg.mode));
    rep.note("seed", std::to_string(cfg.seed));
    rep.note("b", format_number(cfg.b));
    if (ctx.prepare(NeedModel | NeedSpectrum).empty()) {
        const auto& m = ctx.model();
        const auto& sd = ctx.spectrum();
        rep.note("points", std::to_string(m.n));
        rep.note("diameter", format_number(m.diameter()));
        rep.note("d", format_number(ctx.profile().d));
        rep.note("dstar", format_number(ctx.profile().dstar));
        rep.note("lambda_2", format_number(sd.n() > 1 ? sd.lambda(1) : 0.0));
        rep.note("lambda_max", format_number(sd.lambda(sd.n() - 1)));
        bool frames_needed = false;
        for (const SuiteInfo* s : todo) frames_needed = frames_needed || (s->needs & NeedFrames);
        if (frames_needed && ctx.prepare(NeedFrames).empty()) {
            const auto& fp = ctx.frames();
            rep.note("window", std::to_string(fp.window.j_min) + ".." + std::to_string(fp.window.j_max));
            rep.note("index_size", std::to_string(fp.hierarchy.size()));
            rep.note("frame_eps", format_number(fp.report.epsilon));
            rep.note("gamma", format_number(fp.gamma));
        }
    }
    return rep;
}

}  // namespace btl

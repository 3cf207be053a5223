#pragma once
// Named verification suites over a configured model, the run configuration,
// and the driver that executes suites in dependency order.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "btl/compact.hpp"
#include "btl/report.hpp"
#include "btl/seqspace.hpp"

namespace btl {

class ConfigError : public Error {
public:
    using Error::Error;
};

struct SuiteConfig {
    ModelSpec model;
    std::string model_kind = "cycle";
    double b = 2.0;
    double gamma = 1.0;
    Mode mode = Mode::Homogeneous;
    std::vector<std::array<double, 3>> grid;   // (s, p, q)
    std::vector<Flavor> flavors{Flavor::Classical, Flavor::Tilde};
    int functions = 20;     // random test functions
    int large = 50;         // battery for norm bands
    int sequences = 100;    // random coefficient sequences
    int hardy = 1000;       // Hardy sequences per window
    int triples = 1000;     // random weight triples
    std::uint64_t seed = 1;
    int refine = 0;         // model size for refinement comparisons, 0 = off
    std::vector<std::string> symbols{"lambda^2/(1+lambda^2)"};
    std::map<std::string, double> tol;
    bool all_suites = true;   // "suites" key absent; an explicit empty list runs nothing
    std::vector<std::string> suites;

    double tolerance(const std::string& key) const;
};

// Throws ConfigError on malformed input, unknown keys or unknown suites.
SuiteConfig parse_config(const std::string& json_text);
SuiteConfig load_config(const std::string& path);

enum Need : unsigned {
    NeedModel = 1u,
    NeedSpectrum = 2u,
    NeedFrames = 4u,
    NeedCompact = 8u,
};

// Lazily built shared state for one model.
class Context {
public:
    explicit Context(SuiteConfig cfg);

    const SuiteConfig& config() const { return cfg_; }
    const ModelSpace& model();
    const DoublingProfile& profile();
    const SpectralData& spectrum();
    const FramePair& frames();
    const NetGeometry& geometry();
    const FunctionNorms& norms();     // type (c) cutoff
    const FunctionNorms& norms_b();   // type (b) cutoff, for the cutoff-independence ratio
    const SequenceNorms& sequence_norms();
    const std::vector<Vec>& battery();        // config.functions
    const std::vector<Vec>& large_battery();  // config.large
    const CompactPipeline& compact();
    double c_tilde();
    SpaceParams params(double s, double p, double q, Flavor fl, Family fam = Family::TriebelLizorkin);
    // same configuration at config.refine; nullptr when refinement is off
    Context* refined();

    // Builds what a suite needs; returns an empty string or the failure reason.
    std::string prepare(unsigned needs);

private:
    SuiteConfig cfg_;
    std::unique_ptr<ModelSpace> m_;
    std::unique_ptr<DoublingProfile> prof_;
    std::unique_ptr<SpectralData> sd_;
    std::unique_ptr<FramePair> fp_;
    std::unique_ptr<NetGeometry> g_;
    std::unique_ptr<FunctionNorms> fn_, fn_b_;
    std::unique_ptr<SequenceNorms> seq_;
    std::unique_ptr<std::vector<Vec>> bat_, large_;
    std::unique_ptr<CompactPipeline> compact_;
    double c_tilde_ = -1.0;
    std::unique_ptr<Context> refined_;
    std::map<unsigned, std::string> failed_;
};

struct SuiteInfo {
    std::string name;
    std::string anchor;
    std::string module;
    int stage = 0;        // space 0, calculus 1, frames 2, seqspace/addiag 3, molecules/multiplier 4
    bool hard = true;
    unsigned needs = NeedModel;
    std::string description;
    std::function<void(Context&, Record&)> run;
};

const std::vector<SuiteInfo>& suite_catalogue();
const SuiteInfo* find_suite(const std::string& name);

// Runs the selected suites in stage order. A suite that throws is recorded as an
// error; suites whose shared state could not be built are recorded as skipped.
Report run_suites(const SuiteConfig& cfg);

}  // namespace btl

// btl: run verification suites from a JSON config.
//   btl run <config>        exit 0 all hard checks pass, 1 a hard check failed, 2 bad config
//   btl list-suites
//   btl describe <suite>
// BTL_OUTPUT_DIR overrides the output directory (default: btl_out next to the config).

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "btl/suites.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_run(const std::string& path) {
    btl::SuiteConfig cfg;
    try {
        cfg = btl::load_config(path);
    } catch (const btl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    fs::path out = fs::path(path).parent_path() / "btl_out";
    if (const char* env = std::getenv("BTL_OUTPUT_DIR"); env && *env) out = env;

    btl::Report rep = btl::run_suites(cfg);
    rep.write(out.string());
    std::cout << rep.summary();
    std::cout << "reports written to " << out.string() << "\n";
    return rep.hard_failure() ? 1 : 0;
}

int cmd_list() {
    for (const auto& s : btl::suite_catalogue())
        std::cout << s.name << "\t" << s.anchor << "\t" << (s.hard ? "hard" : "record") << "\n";
    return 0;
}

int cmd_describe(const std::string& name) {
    const btl::SuiteInfo* s = btl::find_suite(name);
    if (!s) {
        std::cerr << "unknown suite '" << name << "'\n";
        return 2;
    }
    std::cout << "name: " << s->name << "\n"
              << "anchor: " << s->anchor << "\n"
              << "module: " << s->module << "\n"
              << "kind: " << (s->hard ? "hard assertion" : "measured constants") << "\n"
              << "description: " << s->description << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Besov/Triebel-Lizorkin frame verification on finite models"};
    app.require_subcommand(1);

    std::string config, suite;
    auto* run = app.add_subcommand("run", "run the suites selected by a config file");
    run->add_option("config", config, "JSON config")->required();
    auto* list = app.add_subcommand("list-suites", "print the suite catalogue");
    auto* desc = app.add_subcommand("describe", "describe one suite");
    desc->add_option("suite", suite, "suite name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*run) return cmd_run(config);
        if (*list) return cmd_list();
        if (*desc) return cmd_describe(suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

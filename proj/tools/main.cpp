#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"generalized summability-kernel experiment driver: runs one named "
                 "experiment from a flat key = value config and writes CSV/JSON artifacts"};
    std::string config_path;
    std::string out_dir;
    int threads = 1;
    std::uint64_t seed = 0;
    bool dump_fields = false;
    app.add_option("--config", config_path, "experiment config file")->required();
    app.add_option("--out", out_dir,
                   "output directory for artifacts (overrides the config's 'out' key)");
    app.add_option("--threads", threads,
                   "worker-thread cap; the current build executes serially and only records "
                   "the value");
    auto* seed_opt = app.add_option("--seed", seed, "override the config's base seed");
    app.add_flag("--dump-fields", dump_fields,
                 "also write grid-function binary dumps of the key fields");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        brlab_cli::ExperimentConfig cfg = brlab_cli::parse_config_file(config_path);
        if (!out_dir.empty()) cfg.out = out_dir;
        if (seed_opt->count() > 0) cfg.seed = seed;
        cfg.dump_fields = dump_fields;
        cfg.threads = threads;
        return brlab_cli::run_experiment(cfg);
    } catch (const brlab_cli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

// Experiment driver internals: a flat key = value config selects one named
// experiment; running it writes CSV artifacts plus a deterministic
// summary.json (no timestamps, fixed key order) into the output directory.
// Exit-code contract: 0 = all checks pass, 1 = a scientific verdict failed,
// 2 = usage or config error (reported with the violated precondition).

namespace brlab_cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment;  // rate | kernel-decay | weak-type | domination |
                             // sharpness | identity-suite

    // multiplier family
    int n = 1;
    std::optional<double> delta;  // defaults to n/p - (n+1)/2 when p is set, else 0
    double gamma = 2.0;
    double lambda = 0.0;
    std::optional<double> p;

    // grid
    int N = 256;
    double L = 8.0;

    // scale ladder
    double R_min = 1.0;
    double R_max = 16.0;
    double ratio = 2.0;

    // seeded repetitions
    std::uint64_t seed = 1;
    int seeds = 5;

    // test-function shape
    double width = 1.0;      // gaussian width
    double cube_side = 2.0;  // atom support side

    // kernel-decay specifics
    std::string piece = "sphere";  // origin | sphere | tail | full
    double r_min = 8.0;
    double r_max = 512.0;
    double band = 0.3;  // acceptance band around the predicted exponent

    std::optional<double> predicted;  // override the predicted rate exponent

    // plumbing (flags override the config)
    std::string out = ".";
    bool dump_fields = false;
    int threads = 1;
};

ExperimentConfig parse_config_file(const std::string& path);

// runs the configured experiment, writes artifacts, prints the check table;
// returns 0 if every check passed, 1 otherwise; throws ConfigError on
// violated preconditions
int run_experiment(const ExperimentConfig& cfg);

}  // namespace brlab_cli

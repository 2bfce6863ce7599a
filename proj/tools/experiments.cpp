#include "experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "brlab/grid.hpp"
#include "brlab/io.hpp"
#include "brlab/kernels.hpp"
#include "brlab/multipliers.hpp"
#include "brlab/operators.hpp"
#include "brlab/rates.hpp"
#include "brlab/testbed.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace brlab;

namespace brlab_cli {
namespace {

// ------------------------------------------------------------ small helpers

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t idx = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &idx);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + value + "' is not a number");
    }
    if (idx != value.size()) {
        throw ConfigError("key '" + key + "': trailing characters after number in '" + value +
                          "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
    }
    return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v) || v < 0.0 || v > 1e15) {
        throw ConfigError("key '" + key + "': expected a nonnegative integer, got '" + value +
                          "'");
    }
    return static_cast<std::uint64_t>(v);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

GridFunction demean(GridFunction f) {
    const std::complex<double> mean =
        integral(f) / std::pow(2.0 * f.grid().half_width, f.grid().dim);
    for (auto& v : f.values()) v -= mean;
    return f;
}

// ------------------------------------------------------------- check table

struct CheckTable {
    json rows = json::array();
    bool all_pass = true;

    void add(const std::string& name, const json& value, const std::string& gate, bool pass) {
        json row;
        row["name"] = name;
        row["value"] = value;
        row["gate"] = gate;
        row["pass"] = pass;
        rows.push_back(row);
        if (!pass) all_pass = false;
        std::printf("check %-28s %s  (value %s, gate %s)\n", name.c_str(),
                    pass ? "PASS" : "FAIL", value.dump().c_str(), gate.c_str());
    }
};

struct RunContext {
    const ExperimentConfig& cfg;
    MultiplierSpec spec;
    fs::path out;
    CheckTable checks;
    json details;                         // experiment-specific summary block
    std::vector<std::string> artifacts;   // files written, relative to out

    std::string emit(const std::string& name) {
        artifacts.push_back(name);
        return (out / name).string();
    }
    void dump_field(const std::string& name, const GridFunction& f) {
        if (cfg.dump_fields) save_grid_function(emit(name), f);
    }
};

void write_pairs_csv(const std::string& path, const std::string& header,
                     const std::vector<std::pair<double, double>>& rows) {
    std::ofstream outf(path);
    if (!outf) throw ConfigError("cannot open '" + path + "' for writing");
    outf << header << "\n";
    for (const auto& [a, b] : rows) {
        outf << fmt("%.17g,%.17g", a, b) << "\n";
    }
}

RGrid scale_ladder(const ExperimentConfig& cfg, bool restrict_above_one) {
    if (!(cfg.R_min > 0.0) || !(cfg.R_max >= cfg.R_min)) {
        throw ConfigError("scale ladder needs 0 < R_min <= R_max");
    }
    if (!(cfg.ratio > 1.0)) throw ConfigError("scale ladder needs ratio > 1");
    return RGrid::geometric(cfg.R_min, cfg.R_max, cfg.ratio, restrict_above_one);
}

GridFunction mean_zero_pair(const Grid& grid, const std::array<double, 3>& center, double w1,
                            double w2) {
    const GridFunction g1 = gaussian(grid, center, w1);
    const GridFunction g2 = gaussian(grid, center, w2);
    GridFunction f(grid, Space::physical);
    const double balance = std::pow(w1 / w2, grid.dim);
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        f.values()[i] = g1.values()[i] - balance * g2.values()[i];
    }
    return demean(std::move(f));
}

// --------------------------------------------------------------- rate

void run_rate(RunContext& rc) {
    const Grid grid = make_grid(rc.cfg.n, rc.cfg.N, rc.cfg.L);
    const GridFunction f = gaussian(grid, {0.0, 0.0, 0.0}, rc.cfg.width);
    const RGrid Rs = scale_ladder(rc.cfg, false);
    const double predicted =
        rc.cfg.predicted ? *rc.cfg.predicted
                         : rc.spec.lambda + rc.spec.delta - 0.5 * (rc.spec.dim - 1);
    const RateCurve curve = error_curve(f, rc.spec, Rs, central_probes(grid));
    RateReport report;
    try {
        report = rate_verdict(curve, predicted);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(e.what()) +
                          " (widen R_min..R_max or lower ratio: the verdict needs >= 8 scales "
                          "spanning a factor >= 100)");
    }
    write_curve_csv(rc.emit("error_curve.csv"), curve);
    rc.details["predicted_exponent"] = predicted;
    rc.details["fitted_slope"] = report.fitted_slope;
    rc.details["residual_rms"] = report.residual_rms;
    rc.details["verdict"] = verdict_name(report.verdict);
    rc.details["norm"] = curve.norm_used;
    rc.checks.add("rate_verdict", verdict_name(report.verdict),
                  "not 'violated' vs predicted exponent " + fmt("%g", predicted),
                  report.verdict != Verdict::violated);
    rc.dump_field("input.gridfn", f);
}

// --------------------------------------------------------------- kernel-decay

void run_kernel_decay(RunContext& rc) {
    const BumpPartition bp;
    KernelId which{};
    double predicted = 0.0;
    bool near_origin = false;
    const int n = rc.spec.dim;
    if (rc.cfg.piece == "origin") {
        which = KernelId::origin;
        predicted = -(n + rc.spec.gamma - rc.spec.lambda);
    } else if (rc.cfg.piece == "sphere") {
        which = KernelId::sphere;
        predicted = -(0.5 * (n + 1) + rc.spec.delta);
    } else if (rc.cfg.piece == "tail") {
        which = KernelId::tail;
        predicted = -(n - rc.spec.lambda);
        near_origin = true;  // the tail piece's power law lives at r -> 0
    } else if (rc.cfg.piece == "full") {
        which = KernelId::br;
        predicted = -(0.5 * (n + 1) + rc.spec.delta);
    } else {
        throw ConfigError("key 'piece' must be one of origin, sphere, tail, full (got '" +
                          rc.cfg.piece + "')");
    }
    if (!(rc.cfg.r_min > 0.0) || !(rc.cfg.r_max > rc.cfg.r_min)) {
        throw ConfigError("radius window needs 0 < r_min < r_max");
    }

    std::vector<double> radii;
    if (near_origin) {
        for (int k = 0; k < 32; ++k) {
            radii.push_back(rc.cfg.r_min * std::pow(rc.cfg.r_max / rc.cfg.r_min, k / 31.0));
        }
    } else {
        radii = dyadic_envelope_radii(rc.cfg.r_min, rc.cfg.r_max);
    }
    const RadialProfile profile = kernel_profile(which, rc.spec, bp, radii);
    DecayFit fit;
    try {
        fit = fit_decay(profile, rc.cfg.r_min, rc.cfg.r_max,
                        near_origin ? FitMode::direct : FitMode::envelope);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(e.what()) +
                          " (far-field envelope fits need r_max >= 8 * r_min so at least three "
                          "dyadic blocks land in the window)");
    }
    write_profile_csv(rc.emit("kernel_profile.csv"), profile);
    rc.details["piece"] = rc.cfg.piece;
    rc.details["fit_mode"] = near_origin ? "direct" : "envelope";
    rc.details["fitted_exponent"] = fit.fitted_exponent;
    rc.details["predicted_exponent"] = predicted;
    rc.details["residual_rms"] = fit.residual_rms;
    rc.details["points_used"] = fit.points_used;
    rc.checks.add("decay_exponent", fit.fitted_exponent,
                  fmt("within %.2f of %g", rc.cfg.band, predicted),
                  std::abs(fit.fitted_exponent - predicted) <= rc.cfg.band);
}

// --------------------------------------------------------------- weak-type

void run_weak_type(RunContext& rc) {
    if (!rc.cfg.p || !(*rc.cfg.p > 0.0 && *rc.cfg.p < 1.0)) {
        throw ConfigError(
            "weak-type experiment requires 0 < p < 1 (the endpoint family below p = 1)");
    }
    const double min_delta = rc.spec.dim / *rc.cfg.p - 0.5 * (rc.spec.dim + 1);
    if (rc.spec.delta < min_delta - 1e-12) {
        throw ConfigError(fmt("weak-type bound needs delta >= n/p - (n+1)/2 = %g (got %g)",
                              min_delta, rc.spec.delta));
    }
    if (rc.cfg.R_min < 1.0) {
        throw ConfigError("the maximal family is restricted to scales R >= 1; set R_min >= 1");
    }
    const Grid grid = make_grid(rc.cfg.n, rc.cfg.N, rc.cfg.L);
    const RGrid Rs = scale_ladder(rc.cfg, true);
    Cube cube;
    cube.side = rc.cfg.cube_side;

    std::vector<std::pair<double, double>> per_atom;
    double lo = 0.0, hi = 0.0;
    bool all_finite = true;
    WeakTypeProfile last_profile;
    for (int k = 0; k < rc.cfg.seeds; ++k) {
        const std::uint64_t seed = rc.cfg.seed + static_cast<std::uint64_t>(k);
        const Atom atom = make_atom(grid, cube, *rc.cfg.p, seed);
        const MaximalField dev = maximal_rate_field(atom.values, rc.spec, Rs, rc.spec.lambda);
        last_profile =
            weak_type_profile(dev.field, *rc.cfg.p, default_thresholds(dev.field, 41));
        const double s = last_profile.sup_statistic;
        per_atom.emplace_back(static_cast<double>(seed), s);
        if (!std::isfinite(s) || !(s > 0.0)) all_finite = false;
        if (k == 0) {
            lo = hi = s;
        } else {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (k == rc.cfg.seeds - 1) {
            rc.dump_field("atom_field.gridfn", atom.values);
            rc.dump_field("maximal_deviation.gridfn", dev.field);
        }
    }
    write_pairs_csv(rc.emit("atom_statistics.csv"), "seed,sup_statistic", per_atom);
    write_weak_type_csv(rc.emit("weak_type.csv"), last_profile);
    const double spread = all_finite && lo > 0.0 ? hi / lo : std::nan("");
    rc.details["sup_statistic_min"] = lo;
    rc.details["sup_statistic_max"] = hi;
    rc.details["spread"] = spread;
    rc.details["atoms"] = rc.cfg.seeds;
    rc.checks.add("all_statistics_finite", all_finite, "every atom's sup statistic finite, > 0",
                  all_finite);
    rc.checks.add("statistic_spread", spread, "max/min <= 50 over the atom family",
                  all_finite && spread <= 50.0);
}

// --------------------------------------------------------------- domination

void run_domination(RunContext& rc) {
    const int n = rc.spec.dim;
    const double alpha = 0.5 * (n - 1) - rc.spec.delta;
    if (!(rc.spec.delta >= 0.0 && rc.spec.delta < 0.5 * (n - 1))) {
        throw ConfigError(fmt("pointwise domination needs 0 <= delta < (n-1)/2 = %g (got %g)",
                              0.5 * (n - 1), rc.spec.delta));
    }
    if (!(rc.spec.lambda >= alpha && rc.spec.lambda <= rc.spec.gamma)) {
        throw ConfigError(fmt(
            "pointwise domination needs (n-1)/2 - delta <= lambda <= gamma, i.e. [%g, %g] "
            "(got %g)",
            alpha, rc.spec.gamma, rc.spec.lambda));
    }
    if (rc.cfg.R_min < 1.0) {
        throw ConfigError("the dominated maximal family is restricted to R >= 1; set R_min >= 1");
    }
    const Grid grid = make_grid(rc.cfg.n, rc.cfg.N, rc.cfg.L);
    const RGrid Rs = scale_ladder(rc.cfg, true);

    std::vector<std::pair<double, double>> rows;
    double worst = 0.0;
    bool all_finite = true;
    for (int k = 0; k < rc.cfg.seeds; ++k) {
        const std::uint64_t seed = rc.cfg.seed + static_cast<std::uint64_t>(k);
        std::mt19937_64 rng(seed);
        std::array<double, 3> center{0.0, 0.0, 0.0};
        for (int a = 0; a < n; ++a) center[a] = (uniform01(rng) - 0.5) * 0.5 * rc.cfg.L;
        const double w1 = (0.08 + 0.07 * uniform01(rng)) * rc.cfg.L;
        const double w2 = w1 * (1.5 + 0.5 * uniform01(rng));
        const GridFunction f = mean_zero_pair(grid, center, w1, w2);
        const DominationReport rep = domination_check(f, rc.spec, Rs);
        rows.emplace_back(static_cast<double>(seed), rep.max_ratio);
        if (!std::isfinite(rep.max_ratio)) all_finite = false;
        worst = std::max(worst, rep.max_ratio);
        if (k == rc.cfg.seeds - 1) rc.dump_field("input.gridfn", f);
    }
    write_pairs_csv(rc.emit("domination_ratios.csv"), "seed,max_ratio", rows);
    rc.details["max_ratio"] = worst;
    rc.details["sources"] = rc.cfg.seeds;
    rc.details["smoothing_order"] = alpha;
    rc.checks.add("ratios_finite", all_finite, "every source yields a finite ratio",
                  all_finite);
    rc.checks.add("max_ratio", worst, "<= 20 (order-one domination constant)",
                  all_finite && worst <= 20.0);
}

// --------------------------------------------------------------- sharpness

void run_sharpness(RunContext& rc) {
    if (rc.spec.lambda != rc.spec.gamma) {
        throw ConfigError(fmt(
            "sharpness experiment requires the saturation regime lambda = gamma; the limit "
            "R^gamma (S_R f - f) -> -delta * (fractional laplacian of order gamma) f holds "
            "only there (got lambda = %g, gamma = %g)",
            rc.spec.lambda, rc.spec.gamma));
    }
    const Grid grid = make_grid(rc.cfg.n, rc.cfg.N, rc.cfg.L);
    const GridFunction f = gaussian(grid, {0.0, 0.0, 0.0}, rc.cfg.width);
    const RGrid Rs = scale_ladder(rc.cfg, false);
    const double oracle = sharpness_oracle(f, rc.spec, {0.0, 0.0, 0.0});
    if (!(std::abs(oracle) > 0.0)) {
        throw ConfigError("the saturation limit vanishes at x = 0 for this input; pick a "
                          "different width");
    }
    const std::size_t origin_slot =
        grid.dim == 1 ? f.flat(rc.cfg.N / 2)
                      : (grid.dim == 2 ? f.flat(rc.cfg.N / 2, rc.cfg.N / 2)
                                       : f.flat(rc.cfg.N / 2, rc.cfg.N / 2, rc.cfg.N / 2));

    RateCurve curve;
    curve.norm_used = "relative deviation of R^gamma (S_R f - f)(0) from the saturation limit";
    bool monotone = true;
    double prev = 0.0;
    GridFunction last_dev(grid, Space::physical);
    for (std::size_t k = 0; k < Rs.values.size(); ++k) {
        const double R = Rs.values[k];
        const GridFunction srf = bochner_riesz(f, R, rc.spec);
        const double dev = std::pow(R, rc.spec.gamma) *
                           (srf.values()[origin_slot].real() - f.values()[origin_slot].real());
        const double err = std::abs(dev / oracle - 1.0);
        curve.R.push_back(R);
        curve.error.push_back(err);
        if (k > 0 && !(err <= prev)) monotone = false;
        prev = err;
        if (k == Rs.values.size() - 1) {
            for (std::size_t i = 0; i < srf.values().size(); ++i) {
                last_dev.values()[i] = std::pow(R, rc.spec.gamma) *
                                       (srf.values()[i] - f.values()[i]);
            }
        }
    }
    write_curve_csv(rc.emit("sharpness_curve.csv"), curve);
    rc.details["saturation_limit_at_origin"] = oracle;
    rc.details["final_relative_error"] = curve.error.back();
    rc.details["largest_R"] = curve.R.back();
    rc.checks.add("final_relative_error", curve.error.back(),
                  "<= 0.05 at the largest scale", curve.error.back() <= 0.05);
    rc.checks.add("error_monotone_decreasing", monotone,
                  "relative error non-increasing along the ladder", monotone);
    rc.dump_field("input.gridfn", f);
    rc.dump_field("scaled_deviation.gridfn", last_dev);
}

// --------------------------------------------------------------- identity-suite

void run_identity_suite(RunContext& rc) {
    const BumpPartition bp;

    // partition of unity
    double worst_partition = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double r = 10.0 * i / 10000;
        const auto v = bump_partition_eval(r, bp);
        worst_partition =
            std::max(worst_partition, std::abs(v.phi0 + v.phi1 + v.phi_inf - 1.0));
    }
    rc.checks.add("partition_of_unity", worst_partition,
                  "<= 1e-12 over 10001 radii in [0,10]", worst_partition <= 1e-12);

    const Grid grid = make_grid(rc.cfg.n, rc.cfg.N, rc.cfg.L);

    // sharp cutoff reproduces band-limited inputs
    {
        const double R = 0.5 * grid.max_abs_xi();
        MultiplierSpec sharp = rc.spec;
        sharp.delta = 0.0;
        const GridFunction f = band_limited_projection(
            gaussian(grid, {0.0, 0.0, 0.0}, rc.cfg.width), 0.5 * R);
        const GridFunction srf = bochner_riesz(f, R, sharp);
        double worst = 0.0;
        for (std::size_t i = 0; i < f.values().size(); ++i) {
            worst = std::max(worst, std::abs(srf.values()[i] - f.values()[i]));
        }
        rc.checks.add("band_limited_exactness", worst,
                      "<= 1e-10: delta = 0 mean is the identity below the cutoff",
                      worst <= 1e-10);
    }

    // three-piece recombination against the direct deviation
    {
        if (rc.spec.lambda > rc.spec.gamma) {
            throw ConfigError(fmt("piece recombination needs lambda <= gamma so the origin "
                                  "piece stays bounded (got lambda = %g, gamma = %g)",
                                  rc.spec.lambda, rc.spec.gamma));
        }
        const GridFunction f = demean(band_limited_projection(
            gaussian(grid, {0.0, 0.0, 0.0}, rc.cfg.width), 0.25 * grid.max_abs_xi()));
        const GridFunction g = riesz_potential(f, -rc.spec.lambda);
        const RGrid Rs = scale_ladder(rc.cfg, false);
        double worst = 0.0;
        GridFunction residual(grid, Space::physical);
        for (double R : Rs.values) {
            const GridFunction srf = bochner_riesz(f, R, rc.spec);
            const GridFunction t0 = piece_operator(g, R, Piece::origin, rc.spec, bp);
            const GridFunction t1 = piece_operator(g, R, Piece::sphere, rc.spec, bp);
            const GridFunction ti = piece_operator(g, R, Piece::tail, rc.spec, bp);
            const double weight = std::pow(R, rc.spec.lambda);
            for (std::size_t i = 0; i < f.values().size(); ++i) {
                residual.values()[i] = weight * (srf.values()[i] - f.values()[i]) -
                                       (t0.values()[i] + t1.values()[i] - ti.values()[i]);
                worst = std::max(worst, std::abs(residual.values()[i]));
            }
        }
        rc.checks.add("piece_recombination", worst,
                      "<= 1e-8: origin + sphere - tail pieces of the smoothed input "
                      "reassemble R^lambda (S_R f - f)",
                      worst <= 1e-8);
        rc.dump_field("input.gridfn", f);
        rc.dump_field("recombination_residual.gridfn", residual);
    }

    // spectral and free-space smoothing agree on mean-zero combinations: the
    // free-space path runs on each nonnegative gaussian separately, the
    // spectral path on the demeaned difference; a mean-zero source keeps the
    // periodic image terms far below the gate
    {
        const double alpha = 0.5;  // valid smoothing order for every n >= 1
        const double w1 = 0.075 * rc.cfg.L;
        const double w2 = 0.125 * rc.cfg.L;
        const GridFunction g1 = gaussian(grid, {0.0, 0.0, 0.0}, w1);
        const GridFunction g2 = gaussian(grid, {0.0, 0.0, 0.0}, w2);
        const double balance = std::pow(w1 / w2, grid.dim);
        GridFunction f(grid, Space::physical);
        for (std::size_t i = 0; i < f.values().size(); ++i) {
            f.values()[i] = g1.values()[i] - balance * g2.values()[i];
        }
        f = demean(std::move(f));
        const GridFunction spectral = riesz_potential(f, alpha);
        const GridFunction p1 = riesz_potential_abs(g1, alpha);
        const GridFunction p2 = riesz_potential_abs(g2, alpha);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < f.values().size(); ++i) {
            const std::complex<double> physical =
                p1.values()[i] - balance * p2.values()[i];
            num = std::max(num, std::abs(spectral.values()[i] - physical));
            den = std::max(den, std::abs(physical));
        }
        rc.checks.add("smoothing_consistency", num / den,
                      "<= 0.02 relative: multiplier |xi|^-1/2 vs free-space convolution "
                      "on a mean-zero pair",
                      num / den <= 0.02);
    }
}

}  // namespace

// ----------------------------------------------------------------- parsing

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt("line %d: expected 'key = value'", lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(fmt("line %d: empty key or value", lineno));
        }
        if (!seen.insert(key).second) {
            throw ConfigError(fmt("line %d: duplicate key '%s'", lineno, key.c_str()));
        }
        if (key == "experiment") cfg.experiment = value;
        else if (key == "n") cfg.n = parse_int(key, value);
        else if (key == "delta") cfg.delta = parse_double(key, value);
        else if (key == "gamma") cfg.gamma = parse_double(key, value);
        else if (key == "lambda") cfg.lambda = parse_double(key, value);
        else if (key == "p") cfg.p = parse_double(key, value);
        else if (key == "N") cfg.N = parse_int(key, value);
        else if (key == "L") cfg.L = parse_double(key, value);
        else if (key == "R_min") cfg.R_min = parse_double(key, value);
        else if (key == "R_max") cfg.R_max = parse_double(key, value);
        else if (key == "ratio") cfg.ratio = parse_double(key, value);
        else if (key == "seed") cfg.seed = parse_u64(key, value);
        else if (key == "seeds") cfg.seeds = parse_int(key, value);
        else if (key == "width") cfg.width = parse_double(key, value);
        else if (key == "cube_side") cfg.cube_side = parse_double(key, value);
        else if (key == "piece") cfg.piece = value;
        else if (key == "r_min") cfg.r_min = parse_double(key, value);
        else if (key == "r_max") cfg.r_max = parse_double(key, value);
        else if (key == "band") cfg.band = parse_double(key, value);
        else if (key == "predicted") cfg.predicted = parse_double(key, value);
        else if (key == "out") cfg.out = value;
        else throw ConfigError(fmt("line %d: unknown key '%s'", lineno, key.c_str()));
    }
    if (cfg.experiment.empty()) {
        throw ConfigError("missing required key 'experiment' (one of rate, kernel-decay, "
                          "weak-type, domination, sharpness, identity-suite)");
    }
    return cfg;
}

// ----------------------------------------------------------------- driver

int run_experiment(const ExperimentConfig& cfg) {
    static const std::set<std::string> known = {"rate",       "kernel-decay", "weak-type",
                                                "domination", "sharpness",    "identity-suite"};
    if (!known.contains(cfg.experiment)) {
        throw ConfigError("unknown experiment '" + cfg.experiment +
                          "' (one of rate, kernel-decay, weak-type, domination, sharpness, "
                          "identity-suite)");
    }
    if (cfg.seeds < 1) throw ConfigError("key 'seeds' must be >= 1");
    if (cfg.threads < 1) throw ConfigError("--threads must be >= 1");

    RunContext rc{.cfg = cfg};
    rc.spec.dim = cfg.n;
    rc.spec.gamma = cfg.gamma;
    rc.spec.lambda = cfg.lambda;
    if (cfg.p) rc.spec.p = *cfg.p;
    if (cfg.delta) {
        rc.spec.delta = *cfg.delta;
    } else if (cfg.p) {
        rc.spec.delta = rc.spec.delta_p();
    } else {
        rc.spec.delta = 0.0;
    }
    try {
        rc.spec.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }

    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) {
        throw ConfigError("output directory '" + cfg.out + "' cannot be created: " +
                          ec.message());
    }
    rc.out = cfg.out;

    std::printf("experiment %s -> %s\n", cfg.experiment.c_str(), cfg.out.c_str());
    try {
        if (cfg.experiment == "rate") run_rate(rc);
        else if (cfg.experiment == "kernel-decay") run_kernel_decay(rc);
        else if (cfg.experiment == "weak-type") run_weak_type(rc);
        else if (cfg.experiment == "domination") run_domination(rc);
        else if (cfg.experiment == "sharpness") run_sharpness(rc);
        else run_identity_suite(rc);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    json summary;
    summary["experiment"] = cfg.experiment;
    json conf;
    conf["n"] = cfg.n;
    conf["delta"] = rc.spec.delta;
    conf["gamma"] = cfg.gamma;
    conf["lambda"] = cfg.lambda;
    if (cfg.p) conf["p"] = *cfg.p;
    conf["N"] = cfg.N;
    conf["L"] = cfg.L;
    conf["R_min"] = cfg.R_min;
    conf["R_max"] = cfg.R_max;
    conf["ratio"] = cfg.ratio;
    conf["seed"] = cfg.seed;
    conf["seeds"] = cfg.seeds;
    conf["width"] = cfg.width;
    if (cfg.experiment == "weak-type") conf["cube_side"] = cfg.cube_side;
    if (cfg.experiment == "kernel-decay") {
        conf["piece"] = cfg.piece;
        conf["r_min"] = cfg.r_min;
        conf["r_max"] = cfg.r_max;
        conf["band"] = cfg.band;
    }
    if (cfg.predicted) conf["predicted"] = *cfg.predicted;
    summary["config"] = conf;
    summary["details"] = rc.details;
    summary["checks"] = rc.checks.rows;
    summary["artifacts"] = rc.artifacts;
    summary["all_pass"] = rc.checks.all_pass;

    const std::string summary_path = (rc.out / "summary.json").string();
    {
        std::ofstream outf(summary_path);
        if (!outf) throw ConfigError("cannot open '" + summary_path + "' for writing");
        outf << summary.dump(2) << "\n";
    }
    std::printf("summary: %s (%s)\n", summary_path.c_str(),
                rc.checks.all_pass ? "all checks pass" : "CHECK FAILURES");
    return rc.checks.all_pass ? 0 : 1;
}

}  // namespace brlab_cli

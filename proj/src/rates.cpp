#include "brlab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <stdexcept>

namespace brlab {

std::vector<std::size_t> central_probes(const Grid& grid, int count) {
    if (count < 1) throw std::invalid_argument("central_probes: count must be positive");
    const int n = grid.points_per_axis;
    const int lo = n / 4;
    const int hi = 3 * n / 4 - 1;  // central half-box, inclusive
    std::set<std::size_t> unique;
    GridFunction shape(grid, Space::physical);  // for flat()
    for (int j = 0; j < count; ++j) {
        const int i =
            count == 1 ? (lo + hi) / 2
                       : lo + static_cast<int>(std::lround(double(j) * (hi - lo) / (count - 1)));
        unique.insert(shape.flat(i, grid.dim > 1 ? i : 0, grid.dim > 2 ? i : 0));
    }
    return {unique.begin(), unique.end()};
}

RateCurve error_curve(const GridFunction& f, const MultiplierSpec& spec, const RGrid& Rs,
                      const std::vector<std::size_t>& probes) {
    if (f.space() != Space::physical) {
        throw std::invalid_argument("error_curve: input must be in physical space");
    }
    spec.validate();
    if (Rs.values.empty()) throw std::invalid_argument("error_curve: empty scale grid");
    if (probes.empty()) throw std::invalid_argument("error_curve: empty probe set");
    for (std::size_t j : probes) {
        if (j >= f.values().size()) {
            throw std::invalid_argument("error_curve: probe index out of range");
        }
    }
    const GridFunction fhat = forward_transform(f);
    GridFunction work(f.grid(), Space::frequency);
    RateCurve curve;
    curve.norm_used = "sup over " + std::to_string(probes.size()) + " central probes";
    for (double R : Rs.values) {
        for (std::size_t i = 0; i < fhat.values().size(); ++i) {
            work.values()[i] =
                fhat.values()[i] * (br_symbol(fhat.slot_radius(i), R, spec) - 1.0);
        }
        const GridFunction dev = inverse_transform(work);
        double err = 0.0;
        for (std::size_t j : probes) err = std::max(err, std::abs(dev.values()[j]));
        curve.R.push_back(R);
        curve.error.push_back(err);
    }
    return curve;
}

DecayFit fit_rate(const RateCurve& curve, FitMode mode) {
    if (curve.R.size() != curve.error.size() || curve.R.empty()) {
        throw std::invalid_argument("fit_rate: malformed curve");
    }
    RadialProfile profile{curve.R, curve.error, "rate_curve"};
    return fit_decay(profile, curve.R.front(), curve.R.back(), mode);
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::rate_matched: return "rate-matched";
        case Verdict::consistent_upper_bound: return "consistent-upper-bound";
        case Verdict::violated: return "violated";
    }
    return "?";
}

RateReport rate_verdict(const RateCurve& curve, double predicted_exponent) {
    if (curve.R.size() < 8) {
        throw std::invalid_argument("rate_verdict: need at least 8 curve points");
    }
    if (!(curve.R.back() >= 100.0 * curve.R.front())) {
        throw std::invalid_argument(
            "rate_verdict: curve must span at least a factor 100 in R");
    }
    const DecayFit fit = fit_rate(curve, FitMode::direct);
    RateReport report;
    report.curve = curve;
    report.norm_used = curve.norm_used;
    report.fitted_slope = fit.fitted_exponent;
    report.residual_rms = fit.residual_rms;
    report.predicted_exponent = predicted_exponent;
    const double d = fit.fitted_exponent + predicted_exponent;
    if (std::abs(d) <= 0.15) {
        report.verdict = Verdict::rate_matched;
    } else if (d < -0.15) {
        report.verdict = Verdict::consistent_upper_bound;
    } else if (d > 0.25 && fit.residual_rms < 0.05) {
        report.verdict = Verdict::violated;
    } else {
        report.verdict = Verdict::rate_matched;  // within the method's resolution
    }
    return report;
}

double sharpness_oracle(const GridFunction& f, const MultiplierSpec& spec,
                        const std::array<double, 3>& x) {
    if (f.space() != Space::physical) {
        throw std::invalid_argument("sharpness_oracle: input must be in physical space");
    }
    spec.validate();
    const GridFunction F = forward_transform(f);
    const Grid& grid = f.grid();
    double cell = 1.0;
    for (int a = 0; a < grid.dim; ++a) cell /= 2.0 * grid.half_width;
    std::complex<double> sum = 0.0;
    int idx[3] = {0, 0, 0};
    for (std::size_t i = 0; i < F.values().size(); ++i) {
        F.unflatten(i, idx);
        double xdotxi = 0.0;
        double rho2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double xi = grid.xi(idx[a]);
            xdotxi += x[a] * xi;
            rho2 += xi * xi;
        }
        const double weight = std::pow(rho2, 0.5 * spec.gamma);
        sum += F.values()[i] * weight *
               std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * xdotxi));
    }
    return -spec.delta * (sum * cell).real();
}

std::vector<double> default_thresholds(const GridFunction& field, int count) {
    if (count < 2) throw std::invalid_argument("default_thresholds: count must be >= 2");
    double top = 0.0;
    for (const auto& v : field.values()) top = std::max(top, v.real());
    if (!(top > 0.0)) {
        throw std::invalid_argument("default_thresholds: field has no positive values");
    }
    std::vector<double> out;
    const double ratio = std::pow(2.0, -0.5);
    double s = top * ratio;
    for (int j = 0; j < count; ++j) {
        out.push_back(s);
        s *= ratio;
    }
    return out;
}

WeakTypeProfile weak_type_profile(const GridFunction& field, double p,
                                  const std::vector<double>& thresholds) {
    if (field.space() != Space::physical) {
        throw std::invalid_argument("weak_type_profile: field must be in physical space");
    }
    if (!(p > 0.0)) throw std::invalid_argument("weak_type_profile: p must be positive");
    if (thresholds.size() < 2) {
        throw std::invalid_argument("weak_type_profile: need at least 2 thresholds");
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] > 0.0)) {
            throw std::invalid_argument("weak_type_profile: thresholds must be positive");
        }
        if (i > 0 && !(thresholds[i] < thresholds[i - 1])) {
            throw std::invalid_argument("weak_type_profile: thresholds must strictly decrease");
        }
    }
    const Grid& grid = field.grid();
    double cell = 1.0;
    for (int a = 0; a < grid.dim; ++a) cell *= grid.spacing();
    WeakTypeProfile profile;
    profile.thresholds = thresholds;
    profile.p = p;
    double prev = 0.0;
    for (double s : thresholds) {
        std::size_t count_above = 0;
        for (const auto& v : field.values()) {
            if (v.real() > s) ++count_above;
        }
        const double measure = cell * static_cast<double>(count_above);
        if (measure + 1e-15 < prev) {
            throw std::logic_error("weak_type_profile: measure decreased as s decreased");
        }
        prev = measure;
        profile.measures.push_back(measure);
        profile.sup_statistic = std::max(profile.sup_statistic, std::pow(s, p) * measure);
    }
    return profile;
}

}  // namespace brlab

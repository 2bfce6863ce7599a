#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "brlab/grid.hpp"
#include "brlab/kernels.hpp"
#include "brlab/multipliers.hpp"
#include "brlab/operators.hpp"

// Convergence-rate instruments: deviation curves R -> sup |S_R f - f| over a
// probe set, log-log slope fits with a three-way verdict against a predicted
// exponent, the saturation-limit oracle, and weak-type distribution profiles.

namespace brlab {

struct RateCurve {
    std::vector<double> R;
    std::vector<double> error;
    std::string norm_used;
};

// `count` probe indices spread along the main diagonal of the central
// half-box (all axes share the 1-D index pattern); duplicates are removed
std::vector<std::size_t> central_probes(const Grid& grid, int count = 33);

// error(R) = max over probes of |S_R f(x) - f(x)|
RateCurve error_curve(const GridFunction& f, const MultiplierSpec& spec, const RGrid& Rs,
                      const std::vector<std::size_t>& probes);

// least-squares slope of log error against log R; same contract as fit_decay
DecayFit fit_rate(const RateCurve& curve, FitMode mode = FitMode::direct);

enum class Verdict { rate_matched, consistent_upper_bound, violated };

const char* verdict_name(Verdict v);

struct RateReport {
    RateCurve curve;
    std::string norm_used;
    double fitted_slope = 0.0;
    double residual_rms = 0.0;
    double predicted_exponent = 0.0;  // predicted decay R^{-predicted_exponent}
    Verdict verdict = Verdict::rate_matched;
};

// Compares the fitted slope s against -predicted_exponent, d = s + predicted:
// |d| <= 0.15 -> rate_matched; d < -0.15 (faster decay) ->
// consistent_upper_bound; d > 0.25 with residual_rms < 0.05 (clearly slower,
// clean fit) -> violated; the in-between band and noisy slow fits count as
// rate_matched, the resolution limit of the method. Requires >= 8 curve
// points spanning a factor >= 100 in R.
RateReport rate_verdict(const RateCurve& curve, double predicted_exponent);

// The saturation-regime limit of R^gamma (S_R f - f)(x) as R -> infinity:
// -delta * sum over lattice frequencies of |xi|^gamma f^(xi) e^{2 pi i x.xi},
// with the lattice cell weight (1/2L)^dim. Real part; f real in practice.
double sharpness_oracle(const GridFunction& f, const MultiplierSpec& spec,
                        const std::array<double, 3>& x);

struct WeakTypeProfile {
    std::vector<double> thresholds;  // strictly decreasing, positive
    std::vector<double> measures;    // |{field > s}|, nondecreasing down the list
    double p = 1.0;
    double sup_statistic = 0.0;      // max over s of s^p * measure
};

// geometric ladder of `count` thresholds from just under the field maximum
// downward with ratio 2^{-1/2}
std::vector<double> default_thresholds(const GridFunction& field, int count = 41);

WeakTypeProfile weak_type_profile(const GridFunction& field, double p,
                                  const std::vector<double>& thresholds);

}  // namespace brlab

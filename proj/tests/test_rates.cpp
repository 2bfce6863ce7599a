#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "brlab/grid.hpp"
#include "brlab/rates.hpp"
#include "brlab/testbed.hpp"

namespace {

using namespace brlab;

RateCurve synthetic_curve(double amplitude, double slope, int points, double r0, double ratio) {
    RateCurve c;
    c.norm_used = "synthetic";
    double R = r0;
    for (int k = 0; k < points; ++k) {
        c.R.push_back(R);
        c.error.push_back(amplitude * std::pow(R, slope));
        R *= ratio;
    }
    return c;
}

}  // namespace

TEST_SUITE("rates") {

TEST_CASE("central_probes stay on the central diagonal, deduplicated") {
    const Grid grid = make_grid(1, 64, 2.0);
    const auto probes = central_probes(grid, 33);
    REQUIRE(!probes.empty());
    CHECK(probes.size() <= 33);
    CHECK(probes.front() == 16);   // n/4
    CHECK(probes.back() == 47);    // 3n/4 - 1
    for (std::size_t i = 1; i < probes.size(); ++i) CHECK(probes[i] > probes[i - 1]);

    const auto single = central_probes(grid, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 31);

    const Grid grid2 = make_grid(2, 32, 1.0);
    GridFunction shape(grid2, Space::physical);
    int idx[3] = {0, 0, 0};
    for (std::size_t j : central_probes(grid2, 9)) {
        shape.unflatten(j, idx);
        CHECK(idx[0] == idx[1]);
        CHECK(idx[0] >= 8);
        CHECK(idx[0] <= 23);
    }

    CHECK_THROWS_AS(central_probes(grid, 0), std::invalid_argument);
}

TEST_CASE("error_curve is validated and vanishes for band-limited inputs under a sharp cutoff") {
    const Grid grid = make_grid(1, 128, 4.0);
    const GridFunction f = band_limited_projection(gaussian(grid, {0.0, 0.0, 0.0}, 0.7), 2.0);
    MultiplierSpec spec;
    spec.dim = 1;
    spec.delta = 0.0;
    spec.gamma = 2.0;
    const RGrid Rs = RGrid::geometric(2.0, 32.0, 2.0, true);
    const auto probes = central_probes(grid, 17);

    const RateCurve curve = error_curve(f, spec, Rs, probes);
    REQUIRE(curve.R.size() == Rs.values.size());
    CHECK(curve.norm_used == "sup over " + std::to_string(probes.size()) + " central probes");
    for (double e : curve.error) CHECK(e <= 1e-13);

    CHECK_THROWS_AS(error_curve(f, spec, RGrid{}, probes), std::invalid_argument);
    CHECK_THROWS_AS(error_curve(f, spec, Rs, {}), std::invalid_argument);
    CHECK_THROWS_AS(error_curve(f, spec, Rs, {f.values().size()}), std::invalid_argument);
    CHECK_THROWS_AS(error_curve(forward_transform(f), spec, Rs, probes), std::invalid_argument);
}

TEST_CASE("fit_rate recovers a pure power law exactly") {
    const RateCurve curve = synthetic_curve(3.7, -1.8, 11, 1.0, 2.0);
    const DecayFit fit = fit_rate(curve);
    CHECK(fit.fitted_exponent == doctest::Approx(-1.8).epsilon(1e-12));
    CHECK(fit.residual_rms <= 1e-12);
    CHECK(fit.points_used == 11);

    CHECK_THROWS_AS(fit_rate(RateCurve{}), std::invalid_argument);
}

TEST_CASE("rate_verdict separates matched, upper-bound, and violated regimes") {
    SUBCASE("slope equal to the prediction is matched") {
        const RateReport r = rate_verdict(synthetic_curve(1.0, -2.0, 9, 1.0, 2.0), 2.0);
        CHECK(r.verdict == Verdict::rate_matched);
        CHECK(r.fitted_slope == doctest::Approx(-2.0).epsilon(1e-10));
        CHECK(r.predicted_exponent == 2.0);
    }
    SUBCASE("clearly faster decay is a consistent upper bound") {
        const RateReport r = rate_verdict(synthetic_curve(1.0, -2.5, 9, 1.0, 2.0), 2.0);
        CHECK(r.verdict == Verdict::consistent_upper_bound);
    }
    SUBCASE("clean fit decaying clearly slower is a violation") {
        const RateReport r = rate_verdict(synthetic_curve(1.0, -1.5, 9, 1.0, 2.0), 2.0);
        CHECK(r.verdict == Verdict::violated);
        CHECK(r.residual_rms <= 1e-10);
    }
    SUBCASE("a noisy slow fit stays within the method's resolution") {
        RateCurve c = synthetic_curve(1.0, -1.5, 12, 1.0, 2.0);
        for (std::size_t k = 0; k < c.error.size(); ++k) {
            c.error[k] *= std::exp(k % 2 == 0 ? 0.2 : -0.2);
        }
        const RateReport r = rate_verdict(c, 2.0);
        CHECK(r.residual_rms >= 0.05);
        CHECK(r.verdict == Verdict::rate_matched);
    }
    SUBCASE("the band between 0.15 and 0.25 is not called a violation") {
        const RateReport r = rate_verdict(synthetic_curve(1.0, -1.8, 9, 1.0, 2.0), 2.0);
        CHECK(r.verdict == Verdict::rate_matched);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(rate_verdict(synthetic_curve(1.0, -2.0, 7, 1.0, 2.0), 2.0),
                        std::invalid_argument);
        // 9 points but spanning only a factor 2^8/... < 100
        CHECK_THROWS_AS(rate_verdict(synthetic_curve(1.0, -2.0, 9, 1.0, 1.5), 2.0),
                        std::invalid_argument);
    }
    SUBCASE("verdict names") {
        CHECK(std::string(verdict_name(Verdict::rate_matched)) == "rate-matched");
        CHECK(std::string(verdict_name(Verdict::consistent_upper_bound)) ==
              "consistent-upper-bound");
        CHECK(std::string(verdict_name(Verdict::violated)) == "violated");
    }
}

TEST_CASE("sharpness_oracle on a single mode gives -delta q^gamma cos(2 pi q x)") {
    // with L = 1/2 the lattice frequencies are the integers; a pure cosine at
    // frequency q occupies exactly the slots +-q
    const Grid grid = make_grid(1, 64, 0.5);
    const double q = 2.0;
    const GridFunction f = sample_physical(grid, [&](const double* x) {
        return std::complex<double>(std::cos(2.0 * std::numbers::pi * q * x[0]), 0.0);
    });
    MultiplierSpec spec;
    spec.dim = 1;
    spec.gamma = 2.0;
    spec.delta = 0.7;
    spec.lambda = 2.0;

    for (double x : {-0.37, -0.1, 0.0, 0.21, 0.44}) {
        const double got = sharpness_oracle(f, spec, {x, 0.0, 0.0});
        const double expect =
            -spec.delta * std::pow(q, spec.gamma) * std::cos(2.0 * std::numbers::pi * q * x);
        CHECK(std::abs(got - expect) <= 1e-10);
    }

    CHECK_THROWS_AS(sharpness_oracle(forward_transform(f), spec, {0.0, 0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("sharpness_oracle matches the large-R saturation of R^gamma (S_R f - f)") {
    const Grid grid = make_grid(1, 64, 0.5);
    const double q = 2.0;
    const GridFunction f = sample_physical(grid, [&](const double* x) {
        return std::complex<double>(std::cos(2.0 * std::numbers::pi * q * x[0]), 0.0);
    });
    MultiplierSpec spec;
    spec.dim = 1;
    spec.gamma = 2.0;
    spec.delta = 0.7;
    spec.lambda = 2.0;

    const double R = 64.0;
    const GridFunction srf = bochner_riesz(f, R, spec);
    const double weight = std::pow(R, spec.gamma);
    // next order of the symbol expansion relative to the leading term
    const double correction = std::pow(q / R, spec.gamma);
    double worst = 0.0;
    int idx[3] = {0, 0, 0};
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        f.unflatten(i, idx);
        const double dev = weight * (srf.values()[i].real() - f.values()[i].real());
        const double oracle = sharpness_oracle(f, spec, {grid.x(idx[0]), 0.0, 0.0});
        worst = std::max(worst, std::abs(dev - oracle));
    }
    CHECK(worst <= spec.delta * std::pow(q, spec.gamma) * correction);
}

TEST_CASE("weak_type_profile against hand-computed level sets") {
    const Grid grid = make_grid(1, 8, 1.0);  // h = 1/4
    GridFunction field(grid, Space::physical);
    const double vals[8] = {0.0, 1.0, 2.0, 3.0, 0.5, 1.5, 2.5, 3.5};
    for (int i = 0; i < 8; ++i) field.values()[i] = vals[i];

    const WeakTypeProfile prof = weak_type_profile(field, 0.5, {3.0, 2.0, 1.0});
    REQUIRE(prof.measures.size() == 3);
    CHECK(prof.measures[0] == 0.25);  // {3.5}
    CHECK(prof.measures[1] == 0.75);  // {2.5, 3.0, 3.5}
    CHECK(prof.measures[2] == 1.25);  // {1.5, 2.0, 2.5, 3.0, 3.5}
    const double expect_sup =
        std::max({std::pow(3.0, 0.5) * 0.25, std::pow(2.0, 0.5) * 0.75,
                  std::pow(1.0, 0.5) * 1.25});
    CHECK(prof.sup_statistic == expect_sup);
    CHECK(prof.p == 0.5);

    CHECK_THROWS_AS(weak_type_profile(field, 0.5, {3.0}), std::invalid_argument);
    CHECK_THROWS_AS(weak_type_profile(field, 0.5, {3.0, 3.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(weak_type_profile(field, 0.5, {3.0, 1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(weak_type_profile(field, 0.5, {3.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(weak_type_profile(field, 0.0, {3.0, 2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(weak_type_profile(forward_transform(field), 0.5, {3.0, 2.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("default_thresholds descend geometrically from just under the maximum") {
    const Grid grid = make_grid(1, 8, 1.0);
    GridFunction field(grid, Space::physical);
    for (int i = 0; i < 8; ++i) field.values()[i] = 0.5 * i;  // top = 3.5

    const auto t = default_thresholds(field, 41);
    REQUIRE(t.size() == 41);
    const double ratio = std::pow(2.0, -0.5);
    CHECK(t[0] == doctest::Approx(3.5 * ratio).epsilon(1e-15));
    for (std::size_t i = 1; i < t.size(); ++i) {
        CHECK(t[i] / t[i - 1] == doctest::Approx(ratio).epsilon(1e-14));
    }

    GridFunction zeros(grid, Space::physical);
    CHECK_THROWS_AS(default_thresholds(zeros, 41), std::invalid_argument);
    CHECK_THROWS_AS(default_thresholds(field, 1), std::invalid_argument);
}

}  // TEST_SUITE

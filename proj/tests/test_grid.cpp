#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "brlab/grid.hpp"

namespace {

using brlab::Grid;
using brlab::GridFunction;
using brlab::Space;

GridFunction random_field(const Grid& grid, unsigned seed) {
    std::mt19937_64 rng(seed);
    GridFunction f(grid, Space::physical);
    for (auto& v : f.values()) {
        const double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        const double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        v = {re, im};
    }
    return f;
}

double sup_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    }
    return m;
}

}  // namespace

TEST_SUITE("grid") {
    TEST_CASE("make_grid validates its arguments") {
        CHECK_THROWS_AS(brlab::make_grid(0, 64, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(brlab::make_grid(4, 64, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(brlab::make_grid(1, 48, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(brlab::make_grid(1, 0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(brlab::make_grid(1, 64, 0.0), std::invalid_argument);
        CHECK(brlab::make_grid(3, 16, 2.5).size() == 16u * 16u * 16u);
    }

    TEST_CASE("flat and unflatten are inverse, last axis contiguous") {
        const Grid g = brlab::make_grid(3, 8, 1.0);
        GridFunction f(g, Space::physical);
        CHECK(f.flat(1, 2, 3) == 1u * 64 + 2u * 8 + 3u);
        int idx[3];
        for (std::size_t i = 0; i < g.size(); i += 37) {
            f.unflatten(i, idx);
            CHECK(f.flat(idx[0], idx[1], idx[2]) == i);
        }
    }

    TEST_CASE("coordinates and slot frequencies") {
        const Grid g = brlab::make_grid(1, 8, 2.0);
        CHECK(g.spacing() == doctest::Approx(0.5));
        CHECK(g.x(0) == doctest::Approx(-2.0));
        CHECK(g.x(4) == doctest::Approx(0.0));
        CHECK(g.xi(0) == doctest::Approx(0.0));
        CHECK(g.xi(1) == doctest::Approx(0.25));
        CHECK(g.xi(4) == doctest::Approx(-1.0));  // k = -N/2
        CHECK(g.xi(7) == doctest::Approx(-0.25));
        CHECK(g.max_abs_xi() == doctest::Approx(1.0));
        GridFunction F(g, Space::frequency);
        CHECK(F.slot_radius(4) == doctest::Approx(1.0));
        GridFunction f(g, Space::physical);
        CHECK_THROWS_AS(f.slot_radius(0), std::logic_error);
    }

    TEST_CASE("forward transform of a Gaussian matches the closed form") {
        // e^{-pi x^2} is its own transform under this normalization
        const Grid g = brlab::make_grid(1, 256, 8.0);
        GridFunction f = brlab::sample_physical(g, [](const double* x) {
            return std::complex<double>(std::exp(-std::numbers::pi * x[0] * x[0]), 0.0);
        });
        const GridFunction F = brlab::forward_transform(f);
        for (std::size_t m = 0; m < F.values().size(); ++m) {
            const double xi = g.xi(static_cast<int>(m));
            const double expected = std::exp(-std::numbers::pi * xi * xi);
            CHECK(std::abs(F.values()[m] - expected) <= 1e-12);
        }
    }

    TEST_CASE("two dimensional Gaussian transform, off-center phase") {
        const Grid g = brlab::make_grid(2, 128, 4.0);  // xi_max = 8: no visible aliasing
        const double c0 = 0.5, c1 = -0.75;
        GridFunction f = brlab::sample_physical(g, [&](const double* x) {
            const double q = (x[0] - c0) * (x[0] - c0) + (x[1] - c1) * (x[1] - c1);
            return std::complex<double>(std::exp(-std::numbers::pi * q), 0.0);
        });
        const GridFunction F = brlab::forward_transform(f);
        int idx[2 + 1];
        for (std::size_t m = 0; m < F.values().size(); ++m) {
            F.unflatten(m, idx);
            const double xi0 = g.xi(idx[0]), xi1 = g.xi(idx[1]);
            const std::complex<double> expected =
                std::exp(-std::numbers::pi * (xi0 * xi0 + xi1 * xi1)) *
                std::exp(std::complex<double>(
                    0.0, -2.0 * std::numbers::pi * (c0 * xi0 + c1 * xi1)));
            CHECK(std::abs(F.values()[m] - expected) <= 1e-12);
        }
    }

    TEST_CASE("inverse undoes forward to machine precision") {
        for (int dim : {1, 2, 3}) {
            const Grid g = brlab::make_grid(dim, dim == 3 ? 16 : 64, 3.0);
            const GridFunction f = random_field(g, 7u + dim);
            const GridFunction back = brlab::inverse_transform(brlab::forward_transform(f));
            CHECK(sup_diff(f, back) <= 1e-12);
        }
    }

    TEST_CASE("Parseval holds exactly in the weighted norms") {
        const Grid g = brlab::make_grid(2, 32, 2.0);
        const GridFunction f = random_field(g, 99);
        const double phys = brlab::l2_norm(f);
        const double freq = brlab::l2_norm(brlab::forward_transform(f));
        CHECK(phys == doctest::Approx(freq).epsilon(1e-13));
    }

    TEST_CASE("integral is the cell-weighted sum") {
        const Grid g = brlab::make_grid(1, 128, 8.0);
        const GridFunction f = brlab::sample_physical(g, [](const double* x) {
            return std::complex<double>(std::exp(-std::numbers::pi * x[0] * x[0]), 0.0);
        });
        CHECK(std::abs(brlab::integral(f) - 1.0) <= 1e-12);
    }

    TEST_CASE("apply_radial_multiplier: identity, band cut, singular rejection") {
        const Grid g = brlab::make_grid(1, 64, 4.0);
        const GridFunction f = random_field(g, 5);
        const GridFunction same =
            brlab::apply_radial_multiplier(f, [](double) { return 1.0; });
        CHECK(sup_diff(f, same) <= 1e-12);

        CHECK_THROWS_WITH_AS(
            brlab::apply_radial_multiplier(
                f, [](double rho) { return 1.0 / rho; }),  // infinite at xi = 0
            doctest::Contains("multiplier is not finite"), std::domain_error);
    }

    TEST_CASE("frequency input is rejected where physical is required") {
        const Grid g = brlab::make_grid(1, 64, 4.0);
        GridFunction F(g, Space::frequency);
        CHECK_THROWS_AS(brlab::forward_transform(F), std::invalid_argument);
        GridFunction f(g, Space::physical);
        CHECK_THROWS_AS(brlab::inverse_transform(f), std::invalid_argument);
        CHECK_THROWS_AS(brlab::integral(F), std::invalid_argument);
    }
}

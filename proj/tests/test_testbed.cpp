#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "brlab/grid.hpp"
#include "brlab/testbed.hpp"

namespace {

using namespace brlab;

double sup_diff(const GridFunction& a, const GridFunction& b) {
    REQUIRE(a.values().size() == b.values().size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    }
    return m;
}

}  // namespace

TEST_SUITE("testbed") {

TEST_CASE("gaussian transforms to the closed form w^n e^{-pi w^2 |xi|^2} e^{-2 pi i xi.c}") {
    SUBCASE("one dimension, off-center") {
        const Grid grid = make_grid(1, 256, 8.0);
        const double w = 1.0;
        const std::array<double, 3> c{1.25, 0.0, 0.0};
        const GridFunction F = forward_transform(gaussian(grid, c, w));
        for (std::size_t i = 0; i < F.values().size(); ++i) {
            const double xi = grid.xi(static_cast<int>(i));
            const std::complex<double> expect =
                w * std::exp(-std::numbers::pi * w * w * xi * xi) *
                std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * xi * c[0]));
            CHECK(std::abs(F.values()[i] - expect) <= 1e-12);
        }
    }
    SUBCASE("two dimensions, off-center") {
        const Grid grid = make_grid(2, 64, 4.0);
        const double w = 1.0;
        const std::array<double, 3> c{0.5, -0.25, 0.0};
        const GridFunction F = forward_transform(gaussian(grid, c, w));
        int idx[3] = {0, 0, 0};
        for (std::size_t i = 0; i < F.values().size(); ++i) {
            F.unflatten(i, idx);
            const double xi0 = grid.xi(idx[0]);
            const double xi1 = grid.xi(idx[1]);
            const double q = xi0 * xi0 + xi1 * xi1;
            const std::complex<double> expect =
                w * w * std::exp(-std::numbers::pi * w * w * q) *
                std::exp(std::complex<double>(
                    0.0, -2.0 * std::numbers::pi * (xi0 * c[0] + xi1 * c[1])));
            CHECK(std::abs(F.values()[i] - expect) <= 1e-12);
        }
    }
}

TEST_CASE("gaussian samples are real and validated") {
    const Grid grid = make_grid(1, 64, 2.0);
    const GridFunction f = gaussian(grid, {0.5, 0.0, 0.0}, 0.4);
    for (const auto& v : f.values()) CHECK(v.imag() == 0.0);

    CHECK_THROWS_AS(gaussian(grid, {0.0, 0.0, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian(grid, {2.0, 0.0, 0.0}, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(gaussian(grid, {-2.5, 0.0, 0.0}, 0.4), std::invalid_argument);
    // width 1.5 against a half-width 2.0 box: boundary tail e^{-pi 16/9} ~ 4e-3
    CHECK_THROWS_WITH_AS(gaussian(grid, {0.0, 0.0, 0.0}, 1.5),
                         doctest::Contains("exceeds 1e-12"), std::invalid_argument);
}

TEST_CASE("band_limited_projection zeroes exactly the slots at or above the cutoff") {
    const Grid grid = make_grid(1, 128, 4.0);
    const GridFunction f = gaussian(grid, {0.3, 0.0, 0.0}, 0.7);
    const double cutoff = 2.0;

    const GridFunction F = forward_transform(f);
    const GridFunction proj = band_limited_projection(f, cutoff);
    const GridFunction P = forward_transform(proj);

    for (std::size_t i = 0; i < P.values().size(); ++i) {
        if (P.slot_radius(i) >= cutoff) {
            CHECK(std::abs(P.values()[i]) <= 1e-14);
        } else {
            CHECK(std::abs(P.values()[i] - F.values()[i]) <= 1e-13);
        }
    }

    const GridFunction twice = band_limited_projection(proj, cutoff);
    CHECK(sup_diff(twice, proj) <= 1e-13);

    CHECK_THROWS_AS(band_limited_projection(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(band_limited_projection(F, 1.0), std::invalid_argument);
}

TEST_CASE("atoms are deterministic in (grid, cube, p, seed)") {
    const Grid grid = make_grid(1, 256, 4.0);
    Cube cube;
    cube.center = {0.5, 0.0, 0.0};
    cube.side = 2.0;

    const Atom a1 = make_atom(grid, cube, 0.7, 42);
    const Atom a2 = make_atom(grid, cube, 0.7, 42);
    CHECK(a1.seed_used == a2.seed_used);
    bool identical = true;
    for (std::size_t i = 0; i < a1.values.values().size(); ++i) {
        if (a1.values.values()[i] != a2.values.values()[i]) identical = false;
    }
    CHECK(identical);

    const Atom a3 = make_atom(grid, cube, 0.7, 43);
    CHECK(sup_diff(a1.values, a3.values) > 0.0);
}

TEST_CASE("atoms live on their cube, carry the extremal norm, and kill their moments") {
    const Grid grid = make_grid(2, 64, 2.0);
    Cube cube;
    cube.center = {0.3, -0.2, 0.0};
    cube.side = 2.0;
    const double p = 0.5;

    const Atom atom = make_atom(grid, cube, p, 7);
    CHECK(atom.moment_order == 2);  // floor(2 (1/0.5 - 1))
    CHECK(atom.p == p);

    // support: exactly zero outside the open cube
    int idx[3] = {0, 0, 0};
    double inside_mass = 0.0;
    for (std::size_t i = 0; i < atom.values.values().size(); ++i) {
        atom.values.unflatten(i, idx);
        bool inside = true;
        for (int a = 0; a < grid.dim; ++a) {
            const double s = 2.0 * (grid.x(idx[a]) - cube.center[a]) / cube.side;
            if (!(std::abs(s) < 1.0)) inside = false;
        }
        if (!inside) {
            CHECK(atom.values.values()[i] == std::complex<double>(0.0));
        } else {
            inside_mass += std::abs(atom.values.values()[i]);
        }
        CHECK(atom.values.values()[i].imag() == 0.0);
    }
    CHECK(inside_mass > 0.0);

    // extremal normalization ||a||_2 = side^{dim (1/2 - 1/p)}
    const double target = std::pow(cube.side, grid.dim * (0.5 - 1.0 / p));
    CHECK(std::abs(l2_norm(atom.values) - target) <= 1e-12 * target);

    // vanishing moments against centered monomials, recomputed independently
    const double h = grid.spacing();
    for (int d0 = 0; d0 <= atom.moment_order; ++d0) {
        for (int d1 = 0; d0 + d1 <= atom.moment_order; ++d1) {
            double m = 0.0;
            for (std::size_t i = 0; i < atom.values.values().size(); ++i) {
                atom.values.unflatten(i, idx);
                double v = atom.values.values()[i].real();
                for (int k = 0; k < d0; ++k) v *= grid.x(idx[0]) - cube.center[0];
                for (int k = 0; k < d1; ++k) v *= grid.x(idx[1]) - cube.center[1];
                m += v;
            }
            m *= h * h;
            const double bound =
                2e-10 * target * std::pow(cube.side, d0 + d1 + grid.dim);
            CAPTURE(d0);
            CAPTURE(d1);
            CHECK(std::abs(m) <= bound);
        }
    }
}

TEST_CASE("an exponent-one atom only needs a vanishing mean") {
    const Grid grid = make_grid(1, 256, 4.0);
    Cube cube;
    cube.center = {-0.5, 0.0, 0.0};
    cube.side = 1.5;
    const Atom atom = make_atom(grid, cube, 1.0, 11);
    CHECK(atom.moment_order == 0);
    CHECK(std::abs(integral(atom.values)) <= 1e-10 * std::pow(cube.side, 1.0));
    // p = 1 normalization: ||a||_2 = side^{-1/2}
    const double target = std::pow(cube.side, -0.5);
    CHECK(std::abs(l2_norm(atom.values) - target) <= 1e-12 * target);
}

TEST_CASE("a p = 1/2 atom in one dimension kills mean and first moment") {
    const Grid grid = make_grid(1, 512, 4.0);
    Cube cube;
    cube.center = {0.0, 0.0, 0.0};
    cube.side = 2.0;
    const Atom atom = make_atom(grid, cube, 0.5, 3);
    CHECK(atom.moment_order == 1);

    const double h = grid.spacing();
    const double target = std::pow(cube.side, 1.0 * (0.5 - 2.0));
    double m0 = 0.0, m1 = 0.0;
    int idx[3] = {0, 0, 0};
    for (std::size_t i = 0; i < atom.values.values().size(); ++i) {
        atom.values.unflatten(i, idx);
        const double v = atom.values.values()[i].real();
        m0 += v;
        m1 += v * (grid.x(idx[0]) - cube.center[0]);
    }
    CHECK(std::abs(m0 * h) <= 2e-10 * target * std::pow(cube.side, 1.0));
    CHECK(std::abs(m1 * h) <= 2e-10 * target * std::pow(cube.side, 2.0));
}

TEST_CASE("make_atom validates its inputs") {
    const Grid grid = make_grid(1, 128, 2.0);
    Cube cube;
    cube.center = {0.0, 0.0, 0.0};
    cube.side = 1.0;  // 32 cells at h = 1/32

    CHECK_NOTHROW(make_atom(grid, cube, 1.0, 1));
    CHECK_THROWS_AS(make_atom(grid, cube, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_atom(grid, cube, 1.2, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_atom(grid, cube, -0.5, 1), std::invalid_argument);

    Cube thin = cube;  // 31 cells: below the resolution floor
    thin.side = 31.0 / 32.0;
    CHECK_THROWS_AS(make_atom(grid, thin, 1.0, 1), std::invalid_argument);

    Cube outside = cube;  // protrudes past the right box edge
    outside.center = {1.6, 0.0, 0.0};
    CHECK_THROWS_AS(make_atom(grid, outside, 1.0, 1), std::invalid_argument);

    // dim (1/p - 1) > 12 is past the certified moment range
    const Grid grid3 = make_grid(3, 64, 2.0);
    Cube cube3;
    cube3.center = {0.0, 0.0, 0.0};
    cube3.side = 2.0;
    CHECK_THROWS_AS(make_atom(grid3, cube3, 0.15, 1), std::invalid_argument);
}

}  // TEST_SUITE

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "brlab/grid.hpp"

// Reference input fields: periodized Gaussians with certified negligible
// boundary tails, band-limited projections, and seeded random atoms (compactly
// supported bumps with vanishing moments, normalized to the extremal size
// allowed for their cube).

namespace brlab {

// e^{-pi |x - center|^2 / width^2} sampled on the grid. The nearest boundary
// value must be below 1e-12; otherwise this throws, quoting the measured tail.
GridFunction gaussian(const Grid& grid, const std::array<double, 3>& center, double width);

// zero every frequency coefficient with |xi| >= cutoff
GridFunction band_limited_projection(const GridFunction& f, double cutoff);

struct Cube {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double side = 1.0;
};

struct Atom {
    GridFunction values;
    Cube cube;
    double p = 1.0;
    int moment_order = 0;    // moments vanish for all |alpha| <= moment_order
    std::uint64_t seed_used = 0;
};

// Random atom for exponent p in (0, 1]: a seeded random trigonometric bump
// supported on the cube, discretely orthogonalized against all monomials of
// degree <= floor(dim (1/p - 1)), scaled so ||a||_2 = |Q|^{1/2 - 1/p} exactly.
// The cube must span at least 32 grid cells per axis and lie inside the box.
// Deterministic in (grid, cube, p, seed); degenerate draws advance the seed
// (at most 10 times) and record the seed actually used.
Atom make_atom(const Grid& grid, const Cube& cube, double p, std::uint64_t seed);

}  // namespace brlab

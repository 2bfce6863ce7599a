#pragma once

#include <string>
#include <vector>

#include "brlab/grid.hpp"
#include "brlab/multipliers.hpp"

// The spectral operators (Bochner-Riesz means, Riesz potentials, the localized
// pieces) and the maximal operators built from them, plus the pointwise
// domination checker that compares the rate-weighted maximal deviation against
// the three dominating fields of g = smoothness-normalized f.

namespace brlab {

// geometric scale grid discretizing sup over R
struct RGrid {
    std::vector<double> values;  // strictly increasing, constant ratio
    double ratio = 0.0;
    bool restrict_above_one = false;

    // values first, first*ratio, ... up to <= last*(1+1e-12)
    static RGrid geometric(double first, double last, double ratio,
                           bool restrict_above_one = false);
};

GridFunction bochner_riesz(const GridFunction& f, double R, const MultiplierSpec& spec);

enum class ZeroMode {
    annihilate,        // set the xi = 0 coefficient to zero
    require_mean_zero  // error if |f^(0)| > 1e-10
};

// multiplier |xi|^{-lambda}; negative lambda is the smoothing-inverse
// direction |xi|^{|lambda|}, where the xi = 0 slot is simply 0
GridFunction riesz_potential(const GridFunction& f, double lambda,
                             ZeroMode mode = ZeroMode::annihilate);

// multiplier m_piece(|xi|/R) applied to g
GridFunction piece_operator(const GridFunction& g, double R, Piece j, const MultiplierSpec& spec,
                            const BumpPartition& bp);

// nonnegative real field on the grid (imaginary parts are exactly zero)
struct MaximalField {
    GridFunction field;
    std::string which;
    std::vector<double> scales;  // R values or cube sides (in cells) used

    MaximalField(GridFunction f, std::string w, std::vector<double> s)
        : field(std::move(f)), which(std::move(w)), scales(std::move(s)) {}
};

// sup over R of |S_R f|
MaximalField maximal_br(const GridFunction& f, const MultiplierSpec& spec, const RGrid& Rs);

// sup over R of R^exponent |S_R f - f|
MaximalField maximal_rate_field(const GridFunction& f, const MultiplierSpec& spec,
                                const RGrid& Rs, double exponent);

// Cube maximal operators. Cubes are centered at grid points with dyadic side
// lengths s = 1, 2, 4, ..., N cells, periodic wraparound; the cube of side
// s >= 2 at center j covers offsets {-s/2, ..., s/2 - 1} per axis, side 1
// covers {0}. Cube sums accumulate axis-nested (axis 0 outermost), each axis
// left to right; tests enumerate with the same order and match exactly.
MaximalField hl_maximal(const GridFunction& f);

// sup over cubes of |Q|^{alpha/n - 1} * integral of |f| over Q; 0 < alpha < n
MaximalField fractional_maximal(const GridFunction& f, double alpha);

// I_alpha applied to |g| in physical space: zero-padded convolution with the
// kernel c |y|^{alpha - n}, the constant chosen so this path matches the
// spectral multiplier |xi|^{-alpha} (cross-checked on Gaussians in tests)
GridFunction riesz_potential_abs(const GridFunction& g, double alpha);

struct DominationReport {
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    std::size_t points_compared = 0;
    MaximalField lhs;
    GridFunction rhs;  // sum of the three dominating fields
};

// LHS = sup_{R>1} R^{lambda+delta-(n-1)/2} |S_R f - f|, RHS = fractional
// maximal + Riesz potential of |g| + plain maximal, g = I_{-lambda} f.
// Requires delta < (n-1)/2, lambda in [(n-1)/2 - delta, gamma], mean-zero f.
DominationReport domination_check(const GridFunction& f, const MultiplierSpec& spec,
                                  const RGrid& Rs);

}  // namespace brlab

#include "brlab/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace brlab {

namespace {

double uniform01(std::mt19937_64& rng) {
    // explicit 53-bit mapping, identical on every platform
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double window_factor(double s) {
    if (!(std::abs(s) < 1.0)) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

// number of monomials of degree <= order in dim variables
std::vector<std::array<int, 3>> monomial_exponents(int dim, int order) {
    std::vector<std::array<int, 3>> out;
    for (int total = 0; total <= order; ++total) {
        for (int a0 = total; a0 >= 0; --a0) {
            if (dim == 1) {
                if (a0 == total) out.push_back({a0, 0, 0});
                continue;
            }
            for (int a1 = total - a0; a1 >= 0; --a1) {
                if (dim == 2) {
                    if (a0 + a1 == total) out.push_back({a0, a1, 0});
                    continue;
                }
                const int a2 = total - a0 - a1;
                out.push_back({a0, a1, a2});
            }
        }
    }
    return out;
}

}  // namespace

GridFunction gaussian(const Grid& grid, const std::array<double, 3>& center, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian: width must be positive");
    const double L = grid.half_width;
    double nearest = std::numeric_limits<double>::max();
    for (int a = 0; a < grid.dim; ++a) {
        if (!(std::abs(center[a]) < L)) {
            throw std::invalid_argument("gaussian: center must lie inside the box");
        }
        nearest = std::min(nearest, L - std::abs(center[a]));
    }
    const double tail = std::exp(-std::numbers::pi * nearest * nearest / (width * width));
    if (!(tail < 1e-12)) {
        throw std::invalid_argument(
            "gaussian: boundary tail " + std::to_string(tail) +
            " exceeds 1e-12; shrink the width or enlarge the box");
    }
    return sample_physical(grid, [&](const double* x) {
        double q = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double d = x[a] - center[a];
            q += d * d;
        }
        return std::complex<double>(std::exp(-std::numbers::pi * q / (width * width)), 0.0);
    });
}

GridFunction band_limited_projection(const GridFunction& f, double cutoff) {
    if (f.space() != Space::physical) {
        throw std::invalid_argument("band_limited_projection: input must be in physical space");
    }
    if (!(cutoff > 0.0)) {
        throw std::invalid_argument("band_limited_projection: cutoff must be positive");
    }
    GridFunction F = forward_transform(f);
    for (std::size_t i = 0; i < F.values().size(); ++i) {
        if (F.slot_radius(i) >= cutoff) F.values()[i] = 0.0;
    }
    return inverse_transform(F);
}

Atom make_atom(const Grid& grid, const Cube& cube, double p, std::uint64_t seed) {
    if (!(p > 0.0) || !(p <= 1.0)) {
        throw std::invalid_argument("make_atom: p must lie in (0, 1]");
    }
    if (!(cube.side > 0.0)) throw std::invalid_argument("make_atom: cube side must be positive");
    const double h = grid.spacing();
    if (std::floor(cube.side / h) < 32.0) {
        throw std::invalid_argument("make_atom: cube must span at least 32 grid cells per axis");
    }
    for (int a = 0; a < grid.dim; ++a) {
        if (!(cube.center[a] - cube.side / 2 >= -grid.half_width) ||
            !(cube.center[a] + cube.side / 2 <= grid.half_width)) {
            throw std::invalid_argument("make_atom: cube must lie inside the box");
        }
    }
    const int moment_order =
        static_cast<int>(std::floor(grid.dim * (1.0 / p - 1.0) + 1e-12));
    if (moment_order > 12) {
        throw std::invalid_argument("make_atom: p so small that the moment order exceeds 12");
    }

    // cells where the window is positive, with their cube-local coordinates
    struct Cell {
        std::size_t flat;
        double s[3];  // 2 (x - center) / side, in (-1, 1)
    };
    std::vector<Cell> cells;
    {
        GridFunction probe(grid, Space::physical);
        int idx[3] = {0, 0, 0};
        for (std::size_t i = 0; i < probe.values().size(); ++i) {
            probe.unflatten(i, idx);
            Cell c{i, {0.0, 0.0, 0.0}};
            bool inside = true;
            for (int a = 0; a < grid.dim; ++a) {
                c.s[a] = 2.0 * (grid.x(idx[a]) - cube.center[a]) / cube.side;
                if (!(std::abs(c.s[a]) < 1.0)) {
                    inside = false;
                    break;
                }
            }
            if (inside) cells.push_back(c);
        }
    }

    const auto exponents = monomial_exponents(grid.dim, moment_order);
    double cell_weight = 1.0;
    for (int a = 0; a < grid.dim; ++a) cell_weight *= h;

    const auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
        return s * cell_weight;
    };

    // orthonormal basis of the scaled centered monomials on the cube cells,
    // modified Gram-Schmidt applied twice for a solid orthogonality level
    std::vector<std::vector<double>> basis;
    for (const auto& e : exponents) {
        std::vector<double> q(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            double v = 1.0;
            for (int a = 0; a < grid.dim; ++a) {
                for (int k = 0; k < e[a]; ++k) v *= cells[i].s[a];
            }
            q[i] = v;
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                const double c = dot(q, b);
                for (std::size_t i = 0; i < q.size(); ++i) q[i] -= c * b[i];
            }
        }
        const double norm = std::sqrt(dot(q, q));
        if (!(norm > 1e-14)) {
            throw std::runtime_error("make_atom: moment basis degenerated on this cube");
        }
        for (auto& v : q) v /= norm;
        basis.push_back(std::move(q));
    }

    const std::uint64_t max_attempts = 10;
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        const std::uint64_t seed_try = seed + attempt;
        std::mt19937_64 rng(seed_try);

        // draw order (fixed contract): modes in lexicographic order over
        // {0..3}^dim; for each mode first its phase, then its amplitude
        struct Mode {
            int k[3];
            double phase;
            double amplitude;
        };
        std::vector<Mode> modes;
        const int kmax = 3;
        int counts[3] = {kmax + 1, grid.dim > 1 ? kmax + 1 : 1, grid.dim > 2 ? kmax + 1 : 1};
        for (int k0 = 0; k0 < counts[0]; ++k0) {
            for (int k1 = 0; k1 < counts[1]; ++k1) {
                for (int k2 = 0; k2 < counts[2]; ++k2) {
                    Mode m{{k0, k1, k2}, 0.0, 0.0};
                    m.phase = 2.0 * std::numbers::pi * uniform01(rng);
                    m.amplitude = 0.2 + 0.8 * uniform01(rng);
                    modes.push_back(m);
                }
            }
        }

        std::vector<double> raw(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            double w = 1.0;
            for (int a = 0; a < grid.dim; ++a) w *= window_factor(cells[i].s[a]);
            double t = 0.0;
            for (const auto& m : modes) {
                double arg = m.phase;
                for (int a = 0; a < grid.dim; ++a) {
                    // cube-local coordinate in [0, 1)
                    arg += 2.0 * std::numbers::pi * m.k[a] * (0.5 * cells[i].s[a] + 0.5);
                }
                t += m.amplitude * std::cos(arg);
            }
            raw[i] = w * t;
        }

        const double raw_norm = std::sqrt(dot(raw, raw));
        std::vector<double> a = raw;
        for (const auto& b : basis) {
            const double c = dot(a, b);
            for (std::size_t i = 0; i < a.size(); ++i) a[i] -= c * b[i];
        }
        const double a_norm = std::sqrt(dot(a, a));
        if (!(a_norm > 1e-12 * raw_norm)) continue;  // degenerate draw, advance the seed

        const double target = std::pow(cube.side, grid.dim * (0.5 - 1.0 / p));
        const double scale = target / a_norm;

        Atom atom{GridFunction(grid, Space::physical), cube, p, moment_order, seed_try};
        for (std::size_t i = 0; i < cells.size(); ++i) {
            atom.values.values()[cells[i].flat] = scale * a[i];
        }

        // certify the moment cancellation against the raw centered monomials
        for (const auto& e : exponents) {
            double m = 0.0;
            int degree = 0;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                double v = scale * a[i];
                for (int ax = 0; ax < grid.dim; ++ax) {
                    for (int k = 0; k < e[ax]; ++k) {
                        v *= 0.5 * cube.side * cells[i].s[ax];
                    }
                }
                m += v;
            }
            for (int ax = 0; ax < grid.dim; ++ax) degree += e[ax];
            const double bound =
                1e-10 * target * std::pow(cube.side, degree + grid.dim);
            if (!(std::abs(m * cell_weight) <= bound)) {
                throw std::runtime_error("make_atom: moment cancellation check failed");
            }
        }
        return atom;
    }
    throw std::runtime_error("make_atom: 10 consecutive degenerate draws from seed " +
                             std::to_string(seed));
}

}  // namespace brlab

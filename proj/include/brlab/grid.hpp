#pragma once

#include <complex>
#include <functional>
#include <vector>

// Periodic uniform grids on [-L, L)^dim and the discrete Fourier transform
// in the continuous normalization f^(xi) = integral f(x) e^{-2 pi i x.xi} dx.
// Physical samples live at x_j = -L + j*h, h = 2L/N; frequency samples at
// xi_k = k/(2L), k in [-N/2, N/2). Frequency-space values are stored in DFT
// slot order (slot m holds xi with k = m for m < N/2, k = m - N otherwise),
// row-major with the last axis contiguous.

namespace brlab {

enum class Space { physical, frequency };

struct Grid {
    int dim = 1;             // 1, 2, or 3
    int points_per_axis = 0; // power of two
    double half_width = 0.0; // box is [-L, L)^dim

    double spacing() const { return 2.0 * half_width / points_per_axis; }
    double x(int index) const { return -half_width + index * spacing(); }
    // centered frequency of DFT slot m
    double xi(int m) const {
        int k = m < points_per_axis / 2 ? m : m - points_per_axis;
        return k / (2.0 * half_width);
    }
    double max_abs_xi() const { return (points_per_axis / 2) / (2.0 * half_width); }
    std::size_t size() const;

    bool operator==(const Grid&) const = default;
};

// validates dim, power-of-two N, L > 0
Grid make_grid(int dim, int points_per_axis, double half_width);

class GridFunction {
  public:
    GridFunction(Grid grid, Space space);  // zero-filled

    const Grid& grid() const { return grid_; }
    Space space() const { return space_; }
    std::vector<std::complex<double>>& values() { return values_; }
    const std::vector<std::complex<double>>& values() const { return values_; }

    // flat index of (i0[, i1[, i2]]) with axis 0 slowest
    std::size_t flat(int i0, int i1 = 0, int i2 = 0) const;
    // inverse of flat: writes dim indices into idx
    void unflatten(std::size_t flat_index, int idx[3]) const;

    // |xi| of the frequency slot at flat_index (frequency space only)
    double slot_radius(std::size_t flat_index) const;

  private:
    Grid grid_;
    Space space_;
    std::vector<std::complex<double>> values_;
};

GridFunction forward_transform(const GridFunction& f);
GridFunction inverse_transform(const GridFunction& F);

// F^-1 [ m(|xi|) f^ ]: transform, scale each slot by m at its |xi|, transform
// back. Throws if m returns a non-finite value at an occupied frequency,
// naming that frequency.
GridFunction apply_radial_multiplier(const GridFunction& f,
                                     const std::function<double(double)>& m);

// sample a callable at the physical grid points; fn receives x[dim]
GridFunction sample_physical(const Grid& grid,
                             const std::function<std::complex<double>(const double*)>& fn);

// discrete L2 norms carrying the cell weight: h^(dim/2) * l2(values) in
// physical space, (2L)^(-dim/2) * l2(values) in frequency space, so that
// Parseval holds exactly between the two.
double l2_norm(const GridFunction& f);
double sup_norm(const GridFunction& f);
// h^dim * sum of values (physical space): the Riemann integral
std::complex<double> integral(const GridFunction& f);

}  // namespace brlab

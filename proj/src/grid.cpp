#include "brlab/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <fftw3.h>

namespace brlab {

namespace {

// FFTW planner is not thread-safe; execution with the new-array interface is.
// Plans are created with FFTW_UNALIGNED so they apply to any buffer.
std::mutex g_planner_mutex;

struct PlanKey {
    int dim;
    int n;
    int sign;
    bool operator<(const PlanKey& o) const {
        if (dim != o.dim) return dim < o.dim;
        if (n != o.n) return n < o.n;
        return sign < o.sign;
    }
};

fftw_plan get_plan(int dim, int n, int sign, fftw_complex* buf) {
    static std::map<PlanKey, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    auto it = cache.find({dim, n, sign});
    if (it != cache.end()) return it->second;
    int dims[3] = {n, n, n};
    fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("FFT plan creation failed");
    cache.insert({{dim, n, sign}, p});
    return p;
}

void run_dft(std::vector<std::complex<double>>& data, int dim, int n, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan p = get_plan(dim, n, sign, buf);
    fftw_execute_dft(p, buf, buf);
}

// parity (-1)^(k0+...+k_{d-1}) of the DFT slot; valid for even n since
// (-1)^(m-n) = (-1)^m then
double slot_parity(const Grid& g, std::size_t flat) {
    int sum = 0;
    std::size_t rest = flat;
    for (int a = 0; a < g.dim; ++a) {
        sum += int(rest % std::size_t(g.points_per_axis));
        rest /= std::size_t(g.points_per_axis);
    }
    return (sum % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= std::size_t(points_per_axis);
    return s;
}

Grid make_grid(int dim, int points_per_axis, double half_width) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("grid dimension must be 1, 2, or 3");
    int n = points_per_axis;
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("points_per_axis must be a power of two >= 2");
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw std::invalid_argument("half_width must be positive and finite");
    return Grid{dim, n, half_width};
}

GridFunction::GridFunction(Grid grid, Space space)
    : grid_(grid), space_(space), values_(grid.size()) {}

std::size_t GridFunction::flat(int i0, int i1, int i2) const {
    std::size_t n = std::size_t(grid_.points_per_axis);
    switch (grid_.dim) {
        case 1: return std::size_t(i0);
        case 2: return std::size_t(i0) * n + std::size_t(i1);
        default: return (std::size_t(i0) * n + std::size_t(i1)) * n + std::size_t(i2);
    }
}

void GridFunction::unflatten(std::size_t flat_index, int idx[3]) const {
    std::size_t n = std::size_t(grid_.points_per_axis);
    for (int a = grid_.dim - 1; a >= 0; --a) {
        idx[a] = int(flat_index % n);
        flat_index /= n;
    }
}

double GridFunction::slot_radius(std::size_t flat_index) const {
    if (space_ != Space::frequency) {
        throw std::logic_error("slot_radius is defined for frequency-space functions only");
    }
    int idx[3] = {0, 0, 0};
    unflatten(flat_index, idx);
    double s = 0.0;
    for (int a = 0; a < grid_.dim; ++a) {
        double xi = grid_.xi(idx[a]);
        s += xi * xi;
    }
    return std::sqrt(s);
}

GridFunction forward_transform(const GridFunction& f) {
    if (f.space() != Space::physical)
        throw std::invalid_argument("forward_transform expects a physical-space input");
    GridFunction out(f.grid(), Space::frequency);
    out.values() = f.values();
    const Grid& g = f.grid();
    run_dft(out.values(), g.dim, g.points_per_axis, FFTW_FORWARD);
    double cell = std::pow(g.spacing(), g.dim);
    for (std::size_t i = 0; i < out.values().size(); ++i)
        out.values()[i] *= cell * slot_parity(g, i);
    return out;
}

GridFunction inverse_transform(const GridFunction& F) {
    if (F.space() != Space::frequency)
        throw std::invalid_argument("inverse_transform expects a frequency-space input");
    GridFunction out(F.grid(), Space::physical);
    const Grid& g = F.grid();
    out.values() = F.values();
    for (std::size_t i = 0; i < out.values().size(); ++i)
        out.values()[i] *= slot_parity(g, i);
    run_dft(out.values(), g.dim, g.points_per_axis, FFTW_BACKWARD);
    double dxi = std::pow(1.0 / (2.0 * g.half_width), g.dim);
    for (auto& v : out.values()) v *= dxi;
    return out;
}

GridFunction apply_radial_multiplier(const GridFunction& f,
                                     const std::function<double(double)>& m) {
    if (f.space() != Space::physical)
        throw std::invalid_argument("apply_radial_multiplier expects a physical-space input");
    GridFunction fhat = forward_transform(f);
    for (std::size_t i = 0; i < fhat.values().size(); ++i) {
        double r = fhat.slot_radius(i);
        double mv = m(r);
        if (!std::isfinite(mv)) {
            std::ostringstream ss;
            ss << "multiplier is not finite at |xi| = " << r;
            throw std::domain_error(ss.str());
        }
        fhat.values()[i] *= mv;
    }
    return inverse_transform(fhat);
}

GridFunction sample_physical(const Grid& grid,
                             const std::function<std::complex<double>(const double*)>& fn) {
    GridFunction out(grid, Space::physical);
    int idx[3] = {0, 0, 0};
    double x[3] = {0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < out.values().size(); ++i) {
        out.unflatten(i, idx);
        for (int a = 0; a < grid.dim; ++a) x[a] = grid.x(idx[a]);
        out.values()[i] = fn(x);
    }
    return out;
}

double l2_norm(const GridFunction& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += std::norm(v);
    const Grid& g = f.grid();
    double weight = f.space() == Space::physical ? std::pow(g.spacing(), g.dim)
                                                 : std::pow(1.0 / (2.0 * g.half_width), g.dim);
    return std::sqrt(weight * s);
}

double sup_norm(const GridFunction& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s = std::max(s, std::abs(v));
    return s;
}

std::complex<double> integral(const GridFunction& f) {
    if (f.space() != Space::physical)
        throw std::invalid_argument("integral expects a physical-space input");
    std::complex<double> s = 0.0;
    for (const auto& v : f.values()) s += v;
    return s * std::pow(f.grid().spacing(), f.grid().dim);
}

}  // namespace brlab

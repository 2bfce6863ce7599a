#include "brlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "brlab/specfun.hpp"

namespace brlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double t_power(double t, int dim) { return dim == 1 ? 1.0 : (dim == 2 ? t : t * t); }

// integrand factor replacing V_v(2 pi r t) for x1-derivatives at x = (r,0,...)
double v_factor(double v, double r, double t, int deriv) {
    double z = kTwoPi * r * t;
    switch (deriv) {
        case 0: return detail::v_kernel_signed(v, z);
        case 1: {
            double w = kTwoPi * t;
            return -w * w * r * detail::v_kernel_signed(v + 1.0, z);
        }
        case 2: {
            double w = kTwoPi * t;
            return -w * w * detail::v_kernel_signed(v + 1.0, z) +
                   w * w * w * w * r * r * detail::v_kernel_signed(v + 2.0, z);
        }
        default: throw std::invalid_argument("derivative order must be 0, 1, or 2");
    }
}

// panel boundaries for the oscillatory integral on [a, b]: length grows like
// t/8 away from the origin but never exceeds a quarter period 1/(4r)
std::vector<double> panel_boundaries(double a, double b, double r, bool grade) {
    double cap = 1.0 / (4.0 * r);
    std::vector<double> bounds;
    double start = a;
    if (grade && a == 0.0) {
        // dyadic head [0, head]: scale-invariant panels absorb the limited
        // smoothness of t^power factors at the origin
        double head = std::min(b, 0.25);
        bounds.push_back(0.0);
        for (int k = 40; k >= 1; --k) bounds.push_back(head * std::ldexp(1.0, -k));
        start = head;
    }
    bounds.push_back(start);
    double t = start;
    while (t < b) {
        double len = std::min(cap, std::max(0.25, t / 8.0));
        t = std::min(b, t + len);
        bounds.push_back(t);
    }
    // subdivide panels still longer than the oscillation cap (graded head
    // panels can exceed it for large r)
    std::vector<double> out;
    out.push_back(bounds[0]);
    for (std::size_t i = 1; i < bounds.size(); ++i) {
        double lo = bounds[i - 1], hi = bounds[i];
        int pieces = std::max(1, int(std::ceil((hi - lo) / cap)));
        for (int j = 1; j <= pieces; ++j) out.push_back(lo + (hi - lo) * j / pieces);
    }
    return out;
}

}  // namespace

double radial_inverse_transform(const std::function<double(double)>& m, double a, double b,
                                int dim, double r, const RadialQuadOptions& opts) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("dim must be 1, 2, or 3");
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    if (!(a >= 0.0 && b > a)) throw std::invalid_argument("need 0 <= a < b");
    if (opts.jacobi_tail && !(opts.tail_delta > -1.0))
        throw std::invalid_argument("endpoint exponent must exceed -1 (integrability)");

    const double v = (dim - 2) / 2.0;
    auto smooth_integrand = [&](double t) {
        return m(t) * t_power(t, dim) * v_factor(v, r, t, opts.deriv);
    };
    // on interior panels the endpoint factor, when present, multiplies in
    // directly; only the end panel moves it into the quadrature weight
    auto full_integrand = [&](double t) {
        double f = 1.0;
        if (opts.jacobi_tail) {
            double base = 1.0 - std::pow(t / b, opts.tail_gamma);
            if (base <= 0.0) return 0.0;
            f = opts.tail_delta == 0.0 ? 1.0 : std::pow(base, opts.tail_delta);
        }
        return f * smooth_integrand(t);
    };

    double upper = b;
    double tail_value = 0.0;
    if (opts.jacobi_tail) {
        // end panel [b - w, b]: substitute u = 1 - (t/b)^g so the endpoint
        // factor becomes u^d exactly, then flip s = u_c - u to put the weight
        // at the right endpoint where the rule carries it
        double w = std::min(std::min(1.0 / (4.0 * r), 0.25), (b - a) / 2.0);
        upper = b - w;
        const double g = opts.tail_gamma, d = opts.tail_delta;
        double u_c = 1.0 - std::pow(upper / b, g);
        auto rule = gauss_jacobi_rule(d, std::max(opts.nodes_per_panel, 24), 0.0, u_c);
        tail_value = rule.integrate([&](double s) {
            double u = u_c - s;
            double t = b * std::pow(1.0 - u, 1.0 / g);
            double jac = b / g * std::pow(1.0 - u, 1.0 / g - 1.0);
            return smooth_integrand(t) * jac;
        });
    }

    auto bounds = panel_boundaries(a, upper, r, opts.grade_toward_zero);
    // one reference rule on [0,1], affine-mapped per panel
    auto ref = gauss_legendre_rule(opts.nodes_per_panel, 0.0, 1.0);
    double sum = 0.0;
    for (std::size_t i = 1; i < bounds.size(); ++i) {
        double lo = bounds[i - 1], len = bounds[i] - bounds[i - 1];
        double panel = 0.0;
        for (const auto& node : ref.nodes()) panel += node.w * full_integrand(lo + len * node.x);
        sum += len * panel;
    }
    return std::pow(kTwoPi, dim / 2.0) * (sum + tail_value);
}

double kernel_origin(double r, const MultiplierSpec& spec, const BumpPartition& bp, int deriv) {
    spec.validate();
    RadialQuadOptions opts;
    opts.grade_toward_zero = true;
    opts.deriv = deriv;
    auto m = [&](double t) { return m_lambda_j(t, Piece::origin, spec, bp); };
    return radial_inverse_transform(m, 0.0, 0.5, spec.dim, r, opts);
}

double kernel_sphere(double r, const MultiplierSpec& spec, const BumpPartition& bp, int deriv) {
    spec.validate();
    RadialQuadOptions opts;
    opts.jacobi_tail = true;
    opts.tail_delta = spec.delta;
    opts.tail_gamma = spec.gamma;
    opts.deriv = deriv;
    auto m = [&](double t) { return bp.phi1(t) * std::pow(t, -spec.lambda); };
    return radial_inverse_transform(m, 0.25, 1.0, spec.dim, r, opts);
}

double kernel_tail(double r, const MultiplierSpec& spec, const BumpPartition& bp, int deriv) {
    spec.validate();
    if (!(spec.lambda > 0.0))
        throw std::domain_error("tail kernel needs lambda > 0 (symbol not integrable at 0)");
    double T = std::max(64.0, 512.0 / r);
    RadialQuadOptions opts;
    opts.deriv = deriv;
    auto m = [&](double t) {
        double w = t <= T / 2.0 ? 1.0 : detail::smooth_step((T - t) / (T / 2.0));
        return w * bp.psi_inf(t) * std::pow(t, -spec.lambda);
    };
    return radial_inverse_transform(m, 0.25, T, spec.dim, r, opts);
}

double br_kernel(double r, double R, const MultiplierSpec& spec, int deriv) {
    spec.validate();
    if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
    RadialQuadOptions opts;
    opts.grade_toward_zero = true;
    opts.jacobi_tail = true;
    opts.tail_delta = spec.delta;
    opts.tail_gamma = spec.gamma;
    opts.deriv = deriv;
    auto one = [](double) { return 1.0; };
    return radial_inverse_transform(one, 0.0, R, spec.dim, r, opts);
}

RadialProfile kernel_profile(KernelId which, const MultiplierSpec& spec, const BumpPartition& bp,
                             const std::vector<double>& radii, int deriv) {
    RadialProfile out;
    out.radii = radii;
    out.values.reserve(radii.size());
    for (double r : radii) {
        double v = 0.0;
        switch (which) {
            case KernelId::origin: v = kernel_origin(r, spec, bp, deriv); break;
            case KernelId::sphere: v = kernel_sphere(r, spec, bp, deriv); break;
            case KernelId::tail: v = kernel_tail(r, spec, bp, deriv); break;
            case KernelId::br: v = br_kernel(r, 1.0, spec, deriv); break;
        }
        out.values.push_back(v);
    }
    switch (which) {
        case KernelId::origin: out.label = "kernel_origin"; break;
        case KernelId::sphere: out.label = "kernel_sphere"; break;
        case KernelId::tail: out.label = "kernel_tail"; break;
        case KernelId::br: out.label = "br_kernel"; break;
    }
    return out;
}

std::vector<double> dyadic_envelope_radii(double r_min, double r_max, int per_block) {
    if (!(r_min > 0.0 && r_max > r_min)) throw std::invalid_argument("need 0 < r_min < r_max");
    if (per_block < 1) throw std::invalid_argument("per_block must be >= 1");
    std::vector<double> out;
    int blocks = int(std::ceil(std::log2(r_max / r_min)));
    for (int k = 0; k < blocks; ++k) {
        for (int j = 0; j < per_block; ++j) {
            double r = r_min * std::exp2(k + double(j) / per_block);
            if (r <= r_max * (1.0 + 1e-12)) out.push_back(r);
        }
    }
    return out;
}

DecayFit fit_decay(const RadialProfile& profile, double r_min, double r_max, FitMode mode) {
    if (profile.radii.size() != profile.values.size())
        throw std::invalid_argument("profile arrays disagree in length");
    std::vector<std::pair<double, double>> pts;  // usable in-window samples (r, |v|)
    for (std::size_t i = 0; i < profile.radii.size(); ++i) {
        double r = profile.radii[i];
        if (r < r_min || r > r_max * (1.0 + 1e-12)) continue;
        double av = std::abs(profile.values[i]);
        if (av == 0.0) continue;
        pts.push_back({r, av});
    }
    if (pts.size() < 8)
        throw std::runtime_error("fit_decay: fewer than 8 usable samples in window");

    std::vector<std::pair<double, double>> fitted;
    if (mode == FitMode::envelope) {
        // dyadic blocks anchored at r_min; keep each block's peak and its radius
        std::vector<std::pair<double, double>> best;
        for (auto [r, av] : pts) {
            int blk = int(std::floor(std::log2(r / r_min) + 1e-12));
            if (blk >= int(best.size())) best.resize(blk + 1, {0.0, -1.0});
            if (av > best[blk].second) best[blk] = {r, av};
        }
        for (auto& b : best)
            if (b.second > 0.0) fitted.push_back(b);
        if (fitted.size() < 3) throw std::runtime_error("fit_decay: fewer than 3 dyadic blocks");
    } else {
        fitted = pts;
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [r, av] : fitted) {
        double lx = std::log(r), ly = std::log(av);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double n = double(fitted.size());
    double denom = n * sxx - sx * sx;
    if (denom <= 0.0) throw std::runtime_error("fit_decay: degenerate abscissa set");
    DecayFit fit;
    fit.fitted_exponent = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.fitted_exponent * sx) / n;
    double ss = 0.0;
    for (auto [r, av] : fitted) {
        double resid = std::log(av) - (fit.fitted_exponent * std::log(r) + fit.intercept);
        ss += resid * resid;
    }
    fit.residual_rms = std::sqrt(ss / n);
    fit.r_min = r_min;
    fit.r_max = r_max;
    fit.points_used = int(fitted.size());
    return fit;
}

}  // namespace brlab

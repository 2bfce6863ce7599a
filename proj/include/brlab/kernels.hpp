#pragma once

#include <functional>
#include <string>
#include <vector>

#include "brlab/multipliers.hpp"

// Real-space evaluation of the radial convolution kernels behind the symbol
// pieces, via the 1-D Bessel representation
//   K(r) = (2 pi)^{n/2} * integral_a^b m(t) t^{n-1} V_{(n-2)/2}(2 pi r t) dt,
// with panelized Gauss quadrature: panel length capped at a quarter period
// of the oscillation, a Gauss-Jacobi end panel when the integrand carries a
// (1 - (t/b)^gamma)^delta endpoint factor, and geometric grading toward t = 0
// when the symbol has limited smoothness there.

namespace brlab {

struct RadialProfile {
    std::vector<double> radii;   // strictly increasing
    std::vector<double> values;
    std::string label;
};

struct DecayFit {
    double fitted_exponent = 0.0;
    double intercept = 0.0;      // log-log line: log|v| = exponent*log r + intercept
    double residual_rms = 0.0;
    double r_min = 0.0, r_max = 0.0;
    int points_used = 0;
};

struct RadialQuadOptions {
    // 32-node panels keep the smooth factors (exponential partition ramps,
    // truncation roll-off) resolved to ~1e-12 at the panel lengths used here;
    // 12 nodes was measured to leave ~1e-6 errors on ramp-bearing integrands.
    int nodes_per_panel = 32;
    bool grade_toward_zero = false;  // dyadic refinement of [0, 1/4] when a = 0
    bool jacobi_tail = false;        // right-endpoint factor (1-(t/b)^g)^d
    double tail_delta = 0.0;
    double tail_gamma = 2.0;
    // derivative order along the first axis, evaluated at x = (r, 0, ...):
    // 0 is the kernel itself; 1 and 2 raise the V order under the integral
    int deriv = 0;
};

// the representation integral itself; m must omit the endpoint factor when
// jacobi_tail is set (the rule's weight supplies it)
double radial_inverse_transform(const std::function<double(double)>& m, double a, double b,
                                int dim, double r, const RadialQuadOptions& opts = {});

// kernels of the three localized symbol pieces (unit scale R = 1)
double kernel_origin(double r, const MultiplierSpec& spec, const BumpPartition& bp,
                     int deriv = 0);
double kernel_sphere(double r, const MultiplierSpec& spec, const BumpPartition& bp,
                     int deriv = 0);
// tail piece: the symbol extends to infinity; truncated at T = max(64, 512/r)
// with a smooth roll-off on [T/2, T] so the cutoff error is superalgebraic
// (verified by T-doubling in tests). lambda > 0 required.
double kernel_tail(double r, const MultiplierSpec& spec, const BumpPartition& bp,
                   int deriv = 0);
// kernel of the Bochner-Riesz symbol at radius R
double br_kernel(double r, double R, const MultiplierSpec& spec, int deriv = 0);

enum class KernelId { origin, sphere, tail, br };

RadialProfile kernel_profile(KernelId which, const MultiplierSpec& spec, const BumpPartition& bp,
                             const std::vector<double>& radii, int deriv = 0);

// 16 log-spaced radii per dyadic block over [r_min, r_max]
std::vector<double> dyadic_envelope_radii(double r_min, double r_max, int per_block = 16);

enum class FitMode {
    envelope,  // reduce to max |value| per dyadic block (anchored at r_min) first
    direct
};

// least squares on (log r, log |value|) over the window; zero values are
// excluded; throws if fewer than 8 usable samples remain in the window
DecayFit fit_decay(const RadialProfile& profile, double r_min, double r_max,
                   FitMode mode = FitMode::envelope);

}  // namespace brlab

#pragma once

#include <vector>

// Special functions for radial Fourier analysis: Bessel J of nonnegative
// real order, the normalized radial kernel V_v(t) = J_v(t)/t^v, and
// Gauss-Jacobi quadrature rules for endpoint weights (b-t)^alpha.

namespace brlab {

class BesselOrder {
  public:
    explicit BesselOrder(double v);
    double value() const { return v_; }

  private:
    double v_;
};

// Gamma on the positive axis via a Lanczos approximation.
// Relative error <= 1e-13 on [0.5, 30] (tested against lgamma).
double gamma_fn(double x);

// J_v(t), t >= 0. Absolute error <= 1e-10 for v <= 20, t <= 1e4.
// Internally: double-double power series below t* = max(12, 2v); above t*,
// the Hankel expansion directly for v < 2 and upward recurrence in the
// order from Hankel-evaluated base orders otherwise.
double bessel_j(BesselOrder v, double t);

// V_v(t) = J_v(t)/t^v, extended by continuity: V_v(0) = 2^-v / Gamma(v+1).
// Entire in t^2; evaluated by its own power series below the switchover,
// so no 0/0 forms arise.
double v_kernel(BesselOrder v, double t);

// d^k/dt^k V_v(t) for k in {1, 2}, via V_v'(t) = -t V_{v+1}(t).
double v_kernel_derivative(BesselOrder v, double t, int order);

struct AsymptoticTruncation {
    int terms;                          // N0 >= 0, number of kept t^-j orders beyond j=0
    double remainder_bound_coefficient; // engineering estimate, see asymptotic_truncation
};

// Coefficient = 2*sqrt(2/pi)*|a_{N0+1}(v)|: magnitude of the first omitted
// Hankel term with a safety factor of 2.
AsymptoticTruncation asymptotic_truncation(BesselOrder v, int terms);

struct AsymptoticEval {
    double value;
    double remainder_bound;  // coefficient * t^-(N0 + 3/2)
};

// Truncated Hankel expansion of J_v at large argument. The value degrades
// when (4v^2-1)/(8t) is not small; remainder_bound tracks the first
// omitted term, so callers can see that themselves.
AsymptoticEval bessel_j_asymptotic(BesselOrder v, double t, const AsymptoticTruncation& trunc);

struct QuadNode {
    double x;
    double w;
};

// Quadrature rule on [a, b] whose weights absorb the factor (b - t)^exponent:
//   integral_a^b (b-t)^exponent g(t) dt  ~=  sum_i w_i g(x_i),
// exact for polynomials g of degree <= 2*nodes-1. exponent > -1.
class JacobiQuadRule {
  public:
    double exponent() const { return exponent_; }
    double a() const { return a_; }
    double b() const { return b_; }
    const std::vector<QuadNode>& nodes() const { return nodes_; }

    template <typename F>
    double integrate(F&& g) const {
        double s = 0.0;
        for (const auto& n : nodes_) s += n.w * g(n.x);
        return s;
    }

  private:
    friend JacobiQuadRule gauss_jacobi_rule(double, int, double, double);
    double exponent_ = 0.0;
    double a_ = 0.0, b_ = 1.0;
    std::vector<QuadNode> nodes_;
};

JacobiQuadRule gauss_jacobi_rule(double exponent, int n_nodes, double a, double b);

// exponent = 0 case; plain Gauss-Legendre on [a, b].
JacobiQuadRule gauss_legendre_rule(int n_nodes, double a, double b);

namespace detail {
// V_v extended to v = -1/2 (the 1-D radial kernel sqrt(2/pi) cos t).
// Orders below -1/2 are not needed anywhere and are rejected.
double v_kernel_signed(double v, double t);
}  // namespace detail

}  // namespace brlab

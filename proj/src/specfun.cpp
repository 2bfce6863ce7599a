#include "brlab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "brlab/dd.hpp"

namespace brlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
    return x;
}

// switchover between the power series and the large-argument paths
double series_cut(double v) { return std::max(12.0, 2.0 * v); }

// sum_{m>=0} (-1)^m (t^2/4)^m / (m! (v+1)_m), accumulated in double-double.
// Multiplying by (t/2)^v/Gamma(v+1) gives J_v, by 2^-v/Gamma(v+1) gives V_v.
double series_core(double v, double t) {
    DD q = ddk::from_prod(t, t);
    q = ddk::mul(q, 0.25);
    DD term{1.0, 0.0};
    DD sum{1.0, 0.0};
    for (int m = 1; m <= 400; ++m) {
        DD vm = ddk::two_sum(v, double(m));        // exact
        DD den = ddk::mul(vm, double(m));
        term = ddk::neg(ddk::div(ddk::mul(term, q), den));
        sum = ddk::add(sum, term);
        if (std::abs(term.hi) < 1e-26 * (1.0 + std::abs(sum.hi))) break;
    }
    return sum.hi + sum.lo;
}

// Hankel coefficients a_k(v): a_0 = 1, a_k = a_{k-1} (4v^2 - (2k-1)^2)/(8k).
// For half-integer v the product terminates and the expansion is exact.
double hankel_coeff_step(double a_prev, double v, int k) {
    double d = 2.0 * k - 1.0;
    return a_prev * (4.0 * v * v - d * d) / (8.0 * k);
}

// Optimal-truncation Hankel evaluation used internally by bessel_j.
double hankel_best(double v, double t) {
    double w = t - v * kPi / 2.0 - kPi / 4.0;
    double ak = 1.0, P = 0.0, Q = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 60; ++k) {
        double mag = std::abs(ak) / std::pow(t, k);
        if (mag >= prev) break;
        double c = ak / std::pow(t, k);
        if (k % 2 == 0) {
            P += ((k / 2) % 2 == 0 ? c : -c);
        } else {
            Q += (((k - 1) / 2) % 2 == 0 ? c : -c);
        }
        prev = mag;
        if (mag < 1e-18) break;
        ak = hankel_coeff_step(ak, v, k + 1);
    }
    return std::sqrt(2.0 / (kPi * t)) * (std::cos(w) * P - std::sin(w) * Q);
}

double bessel_j_raw(double v, double t) {
    if (t < series_cut(v)) {
        if (t == 0.0) return v == 0.0 ? 1.0 : 0.0;
        double pref = std::exp(v * std::log(t / 2.0)) / gamma_fn(v + 1.0);
        return pref * series_core(v, t);
    }
    if (v < 2.0) return hankel_best(v, t);
    // upward recurrence from base orders mu, mu+1 in [0, 2); stable here
    // because every intermediate order is <= v <= t/2
    int m = int(std::floor(v));
    double mu = v - m;
    double jm1 = hankel_best(mu, t);
    double j = hankel_best(mu + 1.0, t);
    double nu = mu + 1.0;
    for (int i = 0; i < m - 1; ++i) {
        double jn = (2.0 * nu / t) * j - jm1;
        jm1 = j;
        j = jn;
        nu += 1.0;
    }
    return j;
}

}  // namespace

BesselOrder::BesselOrder(double v) : v_(require_finite(v, "Bessel order")) {
    if (v < 0.0) throw std::invalid_argument("Bessel order must be >= 0");
    if (v > 64.0) throw std::invalid_argument("Bessel order out of supported range");
}

double gamma_fn(double x) {
    require_finite(x, "gamma argument");
    if (x <= 0.0) throw std::domain_error("gamma_fn requires x > 0");
    // Lanczos, g = 7, 9 terms
    static const double g = 7.0;
    static const double c[9] = {
        0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection; only hit by internal callers, contract domain is [0.5, 30]
        return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    }
    double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    double t = z + g + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double bessel_j(BesselOrder order, double t) {
    require_finite(t, "bessel_j argument");
    if (t < 0.0) throw std::invalid_argument("bessel_j requires t >= 0");
    return bessel_j_raw(order.value(), t);
}

double v_kernel(BesselOrder order, double t) {
    require_finite(t, "v_kernel argument");
    if (t < 0.0) throw std::invalid_argument("v_kernel requires t >= 0");
    double v = order.value();
    if (t < series_cut(v)) {
        double pref = std::exp(-v * std::log(2.0)) / gamma_fn(v + 1.0);
        return pref * series_core(v, t);
    }
    return bessel_j_raw(v, t) / std::pow(t, v);
}

double v_kernel_derivative(BesselOrder order, double t, int deriv) {
    double v = order.value();
    if (deriv == 1) return -t * v_kernel(BesselOrder(v + 1.0), t);
    if (deriv == 2)
        return -v_kernel(BesselOrder(v + 1.0), t) + t * t * v_kernel(BesselOrder(v + 2.0), t);
    throw std::invalid_argument("v_kernel_derivative supports orders 1 and 2");
}

AsymptoticTruncation asymptotic_truncation(BesselOrder order, int terms) {
    if (terms < 0) throw std::invalid_argument("truncation order must be >= 0");
    double v = order.value();
    double ak = 1.0;
    for (int k = 1; k <= terms + 1; ++k) ak = hankel_coeff_step(ak, v, k);
    double coeff = 2.0 * std::sqrt(2.0 / kPi) * std::abs(ak);
    return {terms, coeff};
}

AsymptoticEval bessel_j_asymptotic(BesselOrder order, double t, const AsymptoticTruncation& trunc) {
    require_finite(t, "argument");
    if (t <= 0.0) throw std::invalid_argument("asymptotic evaluation requires t > 0");
    double v = order.value();
    double w = t - v * kPi / 2.0 - kPi / 4.0;
    double ak = 1.0, P = 0.0, Q = 0.0;
    for (int k = 0; k <= trunc.terms; ++k) {
        double c = ak / std::pow(t, k);
        if (k % 2 == 0) {
            P += ((k / 2) % 2 == 0 ? c : -c);
        } else {
            Q += (((k - 1) / 2) % 2 == 0 ? c : -c);
        }
        ak = hankel_coeff_step(ak, v, k + 1);
    }
    double value = std::sqrt(2.0 / (kPi * t)) * (std::cos(w) * P - std::sin(w) * Q);
    double bound = trunc.remainder_bound_coefficient * std::pow(t, -(trunc.terms + 1.5));
    return {value, bound};
}

JacobiQuadRule gauss_jacobi_rule(double exponent, int n_nodes, double a, double b) {
    if (!(exponent > -1.0)) throw std::invalid_argument("Jacobi exponent must be > -1");
    if (n_nodes < 1 || n_nodes > 256) throw std::invalid_argument("node count out of range");
    if (!(a < b)) throw std::invalid_argument("need a < b");
    const double al = exponent;  // weight (1-x)^al on [-1,1], beta = 0

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
    auto diag = [al](int k) {
        if (k == 0) return -al / (al + 2.0);
        double s = 2.0 * k + al;
        return -al * al / (s * (s + 2.0));
    };
    auto offdiag2 = [al](int k) {  // b_k, k >= 1
        if (k == 1) return 4.0 * (1.0 + al) / ((2.0 + al) * (2.0 + al) * (3.0 + al));
        double s = 2.0 * k + al;
        double kk = double(k);
        return 4.0 * kk * kk * (kk + al) * (kk + al) / (s * s * (s + 1.0) * (s - 1.0));
    };
    for (int k = 0; k < n_nodes; ++k) {
        J(k, k) = diag(k);
        if (k + 1 < n_nodes) {
            double e = std::sqrt(offdiag2(k + 1));
            J(k, k + 1) = e;
            J(k + 1, k) = e;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::pow(2.0, al + 1.0) / (al + 1.0);  // integral of (1-x)^al over [-1,1]
    const double scale = std::pow((b - a) / 2.0, al + 1.0);

    JacobiQuadRule rule;
    rule.exponent_ = exponent;
    rule.a_ = a;
    rule.b_ = b;
    rule.nodes_.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        double x = es.eigenvalues()(i);
        double w = mu0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        rule.nodes_[i] = {a + (b - a) * (x + 1.0) / 2.0, scale * w};
    }
    std::sort(rule.nodes_.begin(), rule.nodes_.end(),
              [](const QuadNode& l, const QuadNode& r) { return l.x < r.x; });
    return rule;
}

JacobiQuadRule gauss_legendre_rule(int n_nodes, double a, double b) {
    return gauss_jacobi_rule(0.0, n_nodes, a, b);
}

namespace detail {

double v_kernel_signed(double v, double t) {
    if (v == -0.5) return std::sqrt(2.0 / kPi) * std::cos(t);
    if (v < 0.0) throw std::invalid_argument("v_kernel_signed: unsupported negative order");
    return v_kernel(BesselOrder(v), t);
}

}  // namespace detail

}  // namespace brlab

#include "brlab/multipliers.hpp"

#include <cmath>
#include <stdexcept>

namespace brlab {

namespace {

void check_lambda_le_gamma(const MultiplierSpec& spec) {
    if (spec.lambda > spec.gamma)
        throw std::domain_error("lambda > gamma: the origin piece has no finite r -> 0 limit");
}

// (1-u)^delta - 1 for u in [0, 1), via the binomial series when u is small
// enough that direct evaluation cancels
double powm1_one_minus(double u, double delta) {
    if (u >= 0.25) return std::pow(1.0 - u, delta) - 1.0;
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 64; ++k) {
        term *= -(delta - (k - 1)) / k * u;  // C(delta,k) (-u)^k
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

}  // namespace

double MultiplierSpec::delta_p() const {
    if (!p) throw std::logic_error("delta_p requested but p is unset");
    return dim / *p - (dim + 1) / 2.0;
}

void MultiplierSpec::validate() const {
    if (dim < 1 || dim > 3) throw std::invalid_argument("dim must be 1, 2, or 3");
    if (!(delta > -1.0)) throw std::invalid_argument("delta must exceed -1");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
    if (p && !(*p > 0.0 && *p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
}

MultiplierSpec spec_from_p(int dim, double p, double gamma, double lambda) {
    MultiplierSpec spec{dim, 0.0, gamma, lambda, p};
    spec.delta = spec.delta_p();
    spec.validate();
    return spec;
}

double br_symbol(double r, double R, const MultiplierSpec& spec) {
    if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
    if (r < 0.0) throw std::invalid_argument("radius must be nonnegative");
    double base = 1.0 - std::pow(r / R, spec.gamma);
    if (base <= 0.0) return 0.0;
    if (spec.delta == 0.0) return 1.0;
    return std::pow(base, spec.delta);
}

double mu(double r, const MultiplierSpec& spec) {
    check_lambda_le_gamma(spec);
    if (r < 0.0) throw std::invalid_argument("radius must be nonnegative");
    if (r == 0.0) return spec.lambda == spec.gamma ? -spec.delta : 0.0;
    if (r >= 1.0) return -std::pow(r, -spec.lambda);  // numerator is 0 - 1
    double u = std::pow(r, spec.gamma);
    if (spec.delta == 0.0) return 0.0;  // (positive)_+^0 = 1 on r < 1
    if (u < 0.25) {
        // (1-u)^delta - 1 = -delta*u*(1 + ...); factor out u = r^gamma so the
        // quotient stays accurate down to r = 0
        return powm1_one_minus(u, spec.delta) / u * std::pow(r, spec.gamma - spec.lambda);
    }
    return powm1_one_minus(u, spec.delta) * std::pow(r, -spec.lambda);
}

namespace detail {

double smooth_step(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double a = std::exp(-1.0 / s);
    double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

}  // namespace detail

double BumpPartition::phi0(double r) const {
    if (r <= 0.25) return 1.0;
    if (r >= 0.5) return 0.0;
    return detail::smooth_step((0.5 - r) / 0.25);
}

double BumpPartition::phi_inf(double r) const {
    if (r <= 1.5) return 0.0;
    if (r >= 2.0) return 1.0;
    return detail::smooth_step((r - 1.5) / 0.5);
}

double BumpPartition::phi1(double r) const { return 1.0 - phi0(r) - phi_inf(r); }

double BumpPartition::psi_inf(double r) const { return 1.0 - phi0(r); }

PartitionValues bump_partition_eval(double r, const BumpPartition& bp) {
    return {bp.phi0(r), bp.phi1(r), bp.phi_inf(r)};
}

const char* piece_name(Piece p) {
    switch (p) {
        case Piece::origin: return "origin";
        case Piece::sphere: return "sphere";
        default: return "tail";
    }
}

double m_lambda_j(double r, Piece j, const MultiplierSpec& spec, const BumpPartition& bp) {
    if (r < 0.0) throw std::invalid_argument("radius must be nonnegative");
    switch (j) {
        case Piece::origin: {
            check_lambda_le_gamma(spec);
            double w = bp.phi0(r);
            return w == 0.0 ? 0.0 : w * mu(r, spec);
        }
        case Piece::sphere: {
            double w = bp.phi1(r);
            if (w == 0.0) return 0.0;  // covers r <= 1/4 including r = 0
            double base = 1.0 - std::pow(r, spec.gamma);
            if (base <= 0.0) return 0.0;
            double sym = spec.delta == 0.0 ? 1.0 : std::pow(base, spec.delta);
            return w * sym * std::pow(r, -spec.lambda);
        }
        default: {
            double w = bp.psi_inf(r);
            return w == 0.0 ? 0.0 : w * std::pow(r, -spec.lambda);
        }
    }
}

}  // namespace brlab

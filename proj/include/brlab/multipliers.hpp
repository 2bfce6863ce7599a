#pragma once

#include <optional>

// Radial symbols: the generalized Bochner-Riesz symbol (1 - r^gamma/R^gamma)_+^delta,
// the normalized deviation symbol mu, a smooth partition of the radial axis into
// neighborhoods of 0, of the unit sphere, and of infinity, and the three localized
// symbol pieces the deviation splits into.

namespace brlab {

struct MultiplierSpec {
    int dim = 1;           // ambient dimension n
    double delta = 0.0;    // > -1
    double gamma = 2.0;    // > 0
    double lambda = 0.0;   // >= 0; pieces involving 1/r^lambda near 0 need lambda <= gamma
    std::optional<double> p;  // in (0, 1] when set

    // n/p - (n+1)/2; requires p to be set
    double delta_p() const;
    // throws on violated bounds; lambda <= gamma is NOT enforced here, only
    // where the r -> 0 limit actually needs it
    void validate() const;
};

// convenience: spec with delta = delta_p(n, p)
MultiplierSpec spec_from_p(int dim, double p, double gamma, double lambda);

// (1 - (r/R)^gamma)_+^delta with the open-ball convention t_+^0 = 1 for t > 0,
// 0 for t <= 0
double br_symbol(double r, double R, const MultiplierSpec& spec);

// ((1 - r^gamma)_+^delta - 1) / r^lambda, extended by continuity at 0:
// 0 when lambda < gamma, -delta when lambda = gamma. lambda > gamma diverges
// and is rejected.
double mu(double r, const MultiplierSpec& spec);

// Smooth radial partition of unity. phi0 = 1 on [0, 1/4], supported in [0, 1/2);
// phiInf = 1 on [2, inf), supported in (3/2, inf); phi1 := 1 - phi0 - phiInf,
// so the sum is exactly 1. Ramps use the C-infinity step
// theta(s) = psi(s)/(psi(s) + psi(1-s)), psi(s) = exp(-1/s).
class BumpPartition {
  public:
    double phi0(double r) const;
    double phi1(double r) const;
    double phi_inf(double r) const;
    // phi1 + phi_inf = 1 - phi0; equals 1 for r >= 1/2, 0 for r <= 1/4
    double psi_inf(double r) const;
};

struct PartitionValues {
    double phi0, phi1, phi_inf;
};
PartitionValues bump_partition_eval(double r, const BumpPartition& bp);

// the three localized pieces of mu: origin carries phi0 * mu, sphere carries
// phi1 * (1-r^gamma)_+^delta / r^lambda, tail carries psi_inf / r^lambda;
// origin + sphere - tail == mu identically
enum class Piece { origin, sphere, tail };

const char* piece_name(Piece p);

double m_lambda_j(double r, Piece j, const MultiplierSpec& spec, const BumpPartition& bp);

namespace detail {
// the C-infinity ramp theta on [0,1]; exposed for profile tests
double smooth_step(double s);
}  // namespace detail

}  // namespace brlab

#pragma once
#include <vector>

#include "kirchhoff/orbit.hpp"

namespace kirchhoff {

struct ManifoldOptions {
    double rtol = 1e-12;
    double seed = 1e-7;        // seed distance along the hyperbolic eigenvector
    double span_periods = 7.0; // per-trajectory horizon in units of T
    int scan_points = 49;
    double tau_window = 2.2;   // usable range of the separatrix phase proxy
};

/// One measured point of W^{u,s} on the section {xi1 = 0 mod 2pi, eta1 > 0},
/// indexed by the separatrix phase proxy tau = artanh(sin(xi2/2)) of the
/// pendulum-2 coordinates (reduced to (-pi, pi), eta2 > 0 branch).
struct BranchPoint {
    double tau = 0;
    double H1 = 0;  // eta1^2/2 + 1 - cos(xi1): the splitting coordinate
    double t = 0;
    std::array<double, 4> y{};
    bool ok = false;
};

/// Splitting of the invariant manifolds of the continued orbit, globalized
/// from eigenvector seeds and measured as the H1 gap at matched phase.
class ManifoldGap {
public:
    ManifoldGap(double sigma, double a, ManifoldOptions opt = {});

    BranchPoint branch_point(bool stable, double tau) const;
    /// H1(z_s(tau)) - H1(z_u(tau)); first order is sigma * M(tau).
    double gap(double tau) const;

    const PeriodicOrbitT<double>& orbit() const { return orb_; }

private:
    ManifoldOptions opt_;
    PeriodicOrbitT<double> orb_;
    struct Sample {
        double f, tau, H1, t;
    };
    std::vector<Sample> samples_u_, samples_s_;

    std::vector<Sample> scan(bool stable) const;
    BranchPoint eval(bool stable, double f, double t_hint) const;
};

struct GapSample {
    double tau = 0, gap = 0, sigma_M = 0;  // measured vs oriented sigma * Melnikov
};

struct TransversalityCertificate {
    double sigma = 0, a = 0;
    double tau_lo = 0, tau_hi = 0;   // bracket of the sign change near 0
    double gap_lo = 0, gap_hi = 0;
    double slope0 = 0;               // d(gap)/dtau at 0, least squares
    double sigma_Mslope = 0;         // sigma * M'(0)
    double orientation = 1.0;        // sign relating the measured gap to sigma M
    double ratio = 0;                // slope0 / (orientation * sigma_Mslope)
    double max_discrepancy = 0;      // max |gap - sigma M| over samples
    std::vector<GapSample> samples;
    bool sign_change_bracketed = false;
};

TransversalityCertificate transversality_check(double sigma, double a,
                                               ManifoldOptions opt = {});

} // namespace kirchhoff

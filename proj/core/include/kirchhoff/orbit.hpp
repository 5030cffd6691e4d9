#pragma once
#include <array>
#include <complex>
#include <vector>

#include "kirchhoff/real.hpp"
#include "kirchhoff/xieta_flow.hpp"

namespace kirchhoff {

/// Reversible-shooting result at working precision Real: the periodic
/// continuation of the libration-times-saddle orbit, its monodromy and the
/// hyperbolic directions at the base point (xi1=0, eta1, xi2=pi, eta2).
template <class Real>
struct PeriodicOrbitT {
    Real sigma{}, a{}, T{};
    std::array<Real, 4> y0{};
    std::array<Real, 16> monodromy{};
    Real mult_unstable{};
    std::array<Real, 4> v_unstable{};  // eta2-component positive
    std::array<Real, 4> v_stable{};
    std::vector<double> newton_residuals;
    bool converged = false;
};

/// Newton shooting on the reversible two-point problem: start on the
/// symmetry set {xi1 = 0, xi2 = pi}, hit it again at T/2, with the period
/// fixed to the unperturbed T_a. Unknowns (eta1(0), eta2(0)).
template <class Real>
PeriodicOrbitT<Real> shoot_periodic(Real sigma, double a, Real rtol);

extern template PeriodicOrbitT<double> shoot_periodic<double>(double, double, double);
extern template PeriodicOrbitT<quad> shoot_periodic<quad>(quad, double, quad);

/// Full double-precision certificate of the continued orbit.
struct PeriodicOrbitSigma {
    double sigma = 0, a = 0, T = 0;
    std::array<double, 4> y0{};
    std::array<std::complex<double>, 4> multipliers{};
    int n_unstable = 0;                   // multipliers with |mu| > 1.05
    double det_monodromy = 0;             // should be 1 (divergence-free field)
    double residual_periodicity = 0;      // |y(T) - y(0)| (angles wrapped)
    double residual_reversibility = 0;    // sup |nu y(-t) - y(t)|
    double c1_distance = 0;               // C^1 distance to the sigma=0 orbit
    std::vector<double> newton_residuals;
    bool converged = false;

    /// Orbit samples over one period (for inspection/serialization).
    std::vector<double> sample_t;
    std::vector<std::array<double, 4>> sample_y;
};

/// Continue the orbit at coupling sigma with pendulum energy a (defaults to
/// the Melnikov-admissible a0 computed by the caller). Practical range
/// sigma <= 0.1; Newton divergence is reported via `converged` and the
/// residual history.
PeriodicOrbitSigma continue_periodic_orbit(double sigma, double a, double rtol = 1e-12);

} // namespace kirchhoff

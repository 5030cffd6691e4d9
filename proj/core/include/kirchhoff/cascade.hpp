#pragma once
#include <array>
#include <functional>
#include <optional>

#include "kirchhoff/ode.hpp"
#include "kirchhoff/real.hpp"
#include "kirchhoff/triplet.hpp"

namespace kirchhoff {

/// Constants threading the chart chain
///   6-eq -> 4-eq -> (x,y) -> translated -> rescaled.
/// Invariants (checked by eff_residuals): c123 = (3/8) rho123 a1 a2 a3,
/// A1 = A2 gamma, B = sqrt((a1^2+a2^2+a3^2) c123 / 2), q = A^{-1} b,
/// E1 = (b1-b2)/a1^2, E2 = b2/a2^2.
struct EffConstants {
    std::array<long, 4> alphas{};
    double c123 = 0, c234 = 0;
    double rho123 = 0, rho234 = 0;
    double E1 = 0, E2 = 0;
    double b1 = 0, b2 = 0;
    double q1 = 0, q2 = 0;
    double A1 = 0, A2 = 0, B = 0;
    double lambda = 1.0;
    double gamma = 0, mu1 = 0, mu2 = 0, sigma = 0;

    double alpha(int n) const { return double(alphas[n]); }
};

/// Build every derived constant from (c123, c234, b1, b2).
/// Requires c123 > 0 for the rescaling block.
EffConstants make_eff_constants(const TripletConfig& cfg, double c123, double c234,
                                double b1, double b2);

/// Worst relative residual over the defining identities.
double eff_residuals(const EffConstants& k);

using State6 = std::array<double, 6>;     // S1..S4, phi123, phi234
using State6Z = std::array<double, 8>;    // S1..S4, Re/Im Z123, Re/Im Z234
using State4 = std::array<double, 4>;     // S3, S4, phi123, phi234
using StateXY = std::array<double, 4>;    // x1, x2, y1, y2
using StateXiEta = std::array<double, 4>; // xi1, eta1, xi2, eta2

void rhs6(const State6& y, const EffConstants& k, State6& dy);
void rhs6z(const State6Z& y, const EffConstants& k, State6Z& dy);
void rhs4(const State4& y, const EffConstants& k, State4& dy);
void rhs_xy(const StateXY& y, const EffConstants& k, StateXY& dy);
void rhs_tilde(const StateXY& y, const EffConstants& k, StateXY& dy);

/// Coupled-pendulum field in the sigma parametrization; lambda multiplies
/// sin(xi2). Runs in double or __float128.
template <class Real>
void rhs_xieta(const std::array<Real, 4>& y, Real sigma, Real lambda,
               std::array<Real, 4>& dy) {
    const Real mu1 = sigma * (Real(2) + Real(3) * sigma) /
                     (Real(6) + Real(18) * sigma + Real(14) * sigma * sigma);
    const Real mu2 = sigma * (Real(2) + Real(3) * sigma) /
                     (Real(2) + Real(6) * sigma + Real(6) * sigma * sigma);
    dy[0] = y[1] - mu1 * y[3];
    dy[1] = -rmath::r_sin(y[0]);
    dy[2] = y[3] - mu2 * y[1];
    dy[3] = -lambda * rmath::r_sin(y[2]);
}

/// Conserved quantities per chart.
double conservedE1(const State6& y);
double conservedE2(const State6& y);
double sum_alpha_S(const State6& y, const EffConstants& k);
double hamiltonianH(const StateXY& y, const EffConstants& k);
double hamiltonianH_tilde(const StateXY& y, const EffConstants& k);

/// Single-pendulum energies H_n = eta^2/2 + 1 - cos(xi).
template <class Real>
Real pendulum_energy(Real xi, Real eta) {
    return eta * eta / Real(2) + (Real(1) - rmath::r_cos(xi));
}

/// The first integral of the coupled system, divided by sigma; finite at
/// sigma = 0 where it reduces to H1 + H2/3.
template <class Real>
Real conservedE_xieta(const std::array<Real, 4>& y, Real sigma) {
    const Real r1 = (Real(2) + Real(3) * sigma) /
                    (Real(6) + Real(18) * sigma + Real(14) * sigma * sigma);  // mu1/sigma
    const Real r2 = (Real(2) + Real(3) * sigma) /
                    (Real(2) + Real(6) * sigma + Real(6) * sigma * sigma);    // mu2/sigma
    const Real H1 = pendulum_energy(y[0], y[1]);
    const Real H2 = pendulum_energy(y[2], y[3]);
    return r2 * H1 + r1 * H2 - sigma * r1 * r2 * y[1] * y[3];
}

/// Chart maps; each forward/backward pair composes to the identity.
State4 reduce6to4(const State6& y, double& E1, double& E2);
State6 lift4to6(const State4& y, double E1, double E2);
StateXY map4toXY(const State4& y, const EffConstants& k);
State4 mapXYto4(const StateXY& y, const EffConstants& k);
StateXY translate(const StateXY& y, const EffConstants& k);    // y -> tilde
StateXY untranslate(const StateXY& y, const EffConstants& k);  // tilde -> y
/// q = A^{-1} b and b = A q for the 2x2 quadratic-form matrix of the config.
std::array<double, 2> q_from_b(const std::array<long, 4>& alphas, double b1, double b2);
std::array<double, 2> b_from_q(const std::array<long, 4>& alphas, double q1, double q2);

/// State part of the rescaling; time scales as tau = B t.
StateXiEta xieta_from_tilde(const StateXY& y, const EffConstants& k);
StateXY tilde_from_xieta(const StateXiEta& y, const EffConstants& k);

struct FlowResult {
    Trajectory traj;
    std::optional<double> first_nonpositive_S;  // meaningfulness monitor
};

FlowResult integrate6(const State6& y0, const EffConstants& k, double t_end,
                      double rtol, double dt_sample, double atol = -1.0);
FlowResult integrate6z(const State6Z& y0, const EffConstants& k, double t_end,
                       double rtol, double dt_sample, double atol = -1.0);
Trajectory integrate_xy(const StateXY& y0, const EffConstants& k, double t_end,
                        double rtol, double dt_sample, bool tilde = false,
                        double atol = -1.0);
Trajectory integrate_xieta(const StateXiEta& y0, double sigma, double lambda,
                           double t_end, double rtol, double dt_sample,
                           double atol = -1.0);

/// S_n(t) and phases of the 6-eq solution carried by a rescaled-chart
/// trajectory: S1 = E1 - q1 - A1 eta1(B t), ..., phi = xi(B t); input times
/// are in the rescaled clock, output times in the slow physical clock.
Trajectory compose_chain(const Trajectory& xi_eta_traj, const EffConstants& k);

/// Point version of the same formulas.
State6 compose_point(const StateXiEta& y, const EffConstants& k);

} // namespace kirchhoff

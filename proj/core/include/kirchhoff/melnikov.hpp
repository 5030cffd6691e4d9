#pragma once

namespace kirchhoff {

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0;
    bool converged = false;
};

/// Reduced Melnikov integral of the coupled-pendulum splitting,
///   M(tau) = -(1/3) Integral p_h(tau + s) sin(xi*(s; a)) ds over. R,
/// trapezoid on a uniform grid with tails cut where |p_h| < 1e-16 and a
/// step-halving convergence check (the integrand is analytic in a strip,
/// so the trapezoid rule converges geometrically).
QuadratureResult melnikov(double tau, double a);

/// J(a) = Integral_0^inf sin(q_h(s)) sin(xi*(s; a)) ds;  M'(0) = (2/3) J(a).
QuadratureResult melnikov_J(double a);
double melnikov_slope0(double a);

/// The a -> 2 limit of J, evaluated by quadrature of (2 sinh s / cosh^2 s)^2
/// (closed form 4/3).
QuadratureResult melnikov_J_limit();

/// Smallest a such that |J(a') - 4/3| <= 2/3 holds on the whole of [a, 2).
double find_a0();

} // namespace kirchhoff

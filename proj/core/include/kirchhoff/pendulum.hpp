#pragma once
#include <array>

namespace kirchhoff {

/// Complete elliptic integral of the first kind, parameter m = k^2 (AGM).
double elliptic_K(double m);

/// Jacobi elliptic functions sn, cn, dn of (u | m), descending Landen.
struct Sncndn {
    double sn, cn, dn;
};
Sncndn jacobi_sncndn(double u, double m);

/// Libration orbit of the normalized pendulum
///   xi'' = -sin(xi),  H(xi, eta) = eta^2/2 + 1 - cos(xi) = a,  a in (0, 2),
/// with xi(0) = 0 and eta(0) = sqrt(2a) > 0:
///   xi(t) = 2 arcsin(k sn(t|m)),  eta(t) = 2 k cn(t|m),  m = k^2 = a/2,
/// period T = 4 K(m). xi is odd and eta is even in t.
struct PendulumOrbit {
    double a = 0;
    double T = 0;
    double k = 0;  // modulus, sqrt(a/2)

    double xi(double t) const;
    double eta(double t) const;
    std::array<double, 2> state(double t) const { return {xi(t), eta(t)}; }
};

/// Throws std::invalid_argument unless 0 < a < 2.
PendulumOrbit pendulum_orbit(double a);

/// Separatrix of the same pendulum (energy 2), upper branch:
///   q_h(s) = 2 arcsin(tanh s),  p_h(s) = +2 / cosh s.
struct Separatrix {
    static double q(double s);
    static double p(double s);  // upper branch; lower branch is -p
};

} // namespace kirchhoff

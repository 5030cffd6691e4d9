#include "kirchhoff/pendulum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kirchhoff {

double elliptic_K(double m) {
    if (m < 0.0 || m >= 1.0) throw std::invalid_argument("elliptic_K: need 0 <= m < 1");
    double a = 1.0, b = std::sqrt(1.0 - m);
    for (int it = 0; it < 40 && std::fabs(a - b) > 4e-16 * a; it++) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (2.0 * a);
}

Sncndn jacobi_sncndn(double u, double m) {
    // descending Landen transformation (Abramowitz & Stegun 16.12)
    constexpr double CA = 1.0e-8;  // result accurate to ~CA^2
    double emc = 1.0 - m;
    Sncndn r{};
    if (emc == 0.0) {
        r.cn = 1.0 / std::cosh(u);
        r.dn = r.cn;
        r.sn = std::tanh(u);
        return r;
    }
    const bool bo = emc < 0.0;
    double d = 1.0;
    if (bo) {
        d = 1.0 - emc;
        emc /= -1.0 / d;
        d = std::sqrt(d);
        u *= d;
    }
    double a = 1.0, dn = 1.0, c = 0.0;
    double em[14], en[14];
    int l = 0;
    for (int i = 0; i < 13; i++) {
        l = i;
        em[i] = a;
        emc = std::sqrt(emc);
        en[i] = emc;
        c = 0.5 * (a + emc);
        if (std::fabs(a - emc) <= CA * a) break;
        emc *= a;
        a = c;
    }
    u *= c;
    double sn = std::sin(u), cn = std::cos(u);
    if (sn != 0.0) {
        a = cn / sn;
        c *= a;
        for (int ii = l; ii >= 0; ii--) {
            const double b = em[ii];
            a *= c;
            c *= dn;
            dn = (en[ii] + a) / (b + a);
            a = c / b;
        }
        a = 1.0 / std::sqrt(c * c + 1.0);
        sn = (sn >= 0.0) ? a : -a;
        cn = c * sn;
    }
    if (bo) {
        a = dn;
        dn = cn;
        cn = a;
        sn /= d;
    }
    r.sn = sn;
    r.cn = cn;
    r.dn = dn;
    return r;
}

double PendulumOrbit::xi(double t) const {
    const auto j = jacobi_sncndn(t, k * k);
    return 2.0 * std::asin(k * j.sn);
}

double PendulumOrbit::eta(double t) const {
    const auto j = jacobi_sncndn(t, k * k);
    return 2.0 * k * j.cn;
}

PendulumOrbit pendulum_orbit(double a) {
    if (!(a > 0.0 && a < 2.0)) throw std::invalid_argument("pendulum_orbit: need 0 < a < 2");
    PendulumOrbit orb;
    orb.a = a;
    orb.k = std::sqrt(a / 2.0);
    orb.T = 4.0 * elliptic_K(a / 2.0);
    return orb;
}

double Separatrix::q(double s) { return 2.0 * std::asin(std::tanh(s)); }
double Separatrix::p(double s) { return 2.0 / std::cosh(s); }

} // namespace kirchhoff

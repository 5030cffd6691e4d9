#include "kirchhoff/melnikov.hpp"

#include <cmath>
#include <functional>

#include "kirchhoff/pendulum.hpp"

namespace kirchhoff {

namespace {

// Trapezoid with step halving until two successive refinements agree.
QuadratureResult trapezoid_refine(const std::function<double(double)>& f,
                                  double lo, double hi, double h0, double tol) {
    auto eval = [&](double h) {
        const long n = std::lround((hi - lo) / h);
        double sum = 0.5 * (f(lo) + f(hi));
        for (long i = 1; i < n; i++) sum += f(lo + i * h);
        return sum * h;
    };
    QuadratureResult r;
    double h = h0;
    double prev = eval(h);
    for (int it = 0; it < 8; it++) {
        h *= 0.5;
        const double cur = eval(h);
        r.error_estimate = std::fabs(cur - prev);
        r.value = cur;
        if (r.error_estimate <= tol * std::max(1.0, std::fabs(cur))) {
            r.converged = true;
            return r;
        }
        prev = cur;
    }
    return r;
}

} // namespace

QuadratureResult melnikov(double tau, double a) {
    const auto orb = pendulum_orbit(a);
    // |p_h(tau+s)| = 2/cosh < 1e-16 for |tau+s| > ~38.5
    const double L = 40.0 + std::fabs(tau);
    auto f = [&](double s) { return Separatrix::p(tau + s) * std::sin(orb.xi(s)); };
    auto r = trapezoid_refine(f, -L, L, 0.25, 1e-13);
    r.value *= -1.0 / 3.0;
    r.error_estimate /= 3.0;
    return r;
}

QuadratureResult melnikov_J(double a) {
    const auto orb = pendulum_orbit(a);
    // even integrand, exponential decay from the separatrix factor
    auto f = [&](double s) { return std::sin(Separatrix::q(s)) * std::sin(orb.xi(s)); };
    auto r = trapezoid_refine(f, -42.0, 42.0, 0.25, 1e-13);
    r.value *= 0.5;
    r.error_estimate *= 0.5;
    return r;
}

double melnikov_slope0(double a) { return 2.0 / 3.0 * melnikov_J(a).value; }

QuadratureResult melnikov_J_limit() {
    auto f = [](double s) {
        const double g = 2.0 * std::sinh(s) / (std::cosh(s) * std::cosh(s));
        return g * g;
    };
    return trapezoid_refine(f, 0.0, 42.0, 0.25, 1e-13);
}

double find_a0() {
    const double J_star = 4.0 / 3.0, band = 2.0 / 3.0;
    auto violates = [&](double a) { return std::fabs(melnikov_J(a).value - J_star) > band; };
    // scan downward from 2 for the first violation
    double a_ok = 1.98, a_bad = 0.0;
    bool found = false;
    for (double a = 1.98; a > 0.02; a -= 0.02) {
        if (violates(a)) {
            a_bad = a;
            found = true;
            break;
        }
        a_ok = a;
    }
    if (!found) return 0.02;
    double lo = a_bad, hi = a_ok;
    for (int it = 0; it < 60; it++) {
        const double mid = 0.5 * (lo + hi);
        (violates(mid) ? lo : hi) = mid;
    }
    return hi;
}

} // namespace kirchhoff

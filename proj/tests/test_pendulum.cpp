#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "kirchhoff/ode.hpp"
#include "kirchhoff/pendulum.hpp"

using namespace kirchhoff;

namespace {

// period oracle: adaptive Simpson on T = 4 int_0^ximax dxi / sqrt(2(a-1+cos xi))
// after the substitution xi = ximax sin(theta) removing the sqrt endpoint
double period_quadrature(double a) {
    const double ximax = std::acos(1.0 - a);
    auto f = [&](double th) {
        // near the turning point the denominator cancels; use the smooth limit
        if (1.0 - std::sin(th) < 1e-10) return std::sqrt(ximax / std::sin(ximax));
        const double xi = ximax * std::sin(th);
        const double den = 2.0 * (a - 1.0 + std::cos(xi));
        return ximax * std::cos(th) / std::sqrt(den);
    };
    // composite Simpson with refinement
    auto simpson = [&](long n) {
        const double h = (M_PI / 2.0) / n;
        double s = f(0.0) + f(M_PI / 2.0);
        for (long i = 1; i < n; i++) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    double prev = simpson(512), cur = simpson(1024);
    for (long n = 2048; std::fabs(cur - prev) > 1e-12 * std::fabs(cur) && n < (1L << 21);
         n *= 2) {
        prev = cur;
        cur = simpson(n);
    }
    return 4.0 * cur;
}

struct PendulumRhs {
    void operator()(double, const std::array<double, 2>& y, std::array<double, 2>& dy) const {
        dy[0] = y[1];
        dy[1] = -std::sin(y[0]);
    }
};

} // namespace

TEST_CASE("harmonic limit of the period") {
    const auto orb = pendulum_orbit(1e-6);
    CHECK(std::fabs(orb.T - 2.0 * M_PI) < 1e-4);
}

TEST_CASE("period at a = 1 against the quadrature oracle") {
    const auto orb = pendulum_orbit(1.0);
    CHECK(orb.T == doctest::Approx(7.4163).epsilon(1e-4));
    CHECK(orb.T == doctest::Approx(period_quadrature(1.0)).epsilon(3e-9));
    for (double a : {0.14565595466577788, 0.5, 1.7, 1.95})
        CHECK(pendulum_orbit(a).T == doctest::Approx(period_quadrature(a)).epsilon(3e-9));
}

TEST_CASE("initial conditions and parity") {
    const double a = 0.8;
    const auto orb = pendulum_orbit(a);
    CHECK(orb.xi(0.0) == doctest::Approx(0.0));
    CHECK(orb.eta(0.0) == doctest::Approx(std::sqrt(2.0 * a)).epsilon(1e-13));
    for (double t : {0.3, 1.1, 2.9, 5.0}) {
        CHECK(orb.xi(-t) == doctest::Approx(-orb.xi(t)).epsilon(1e-12));
        CHECK(orb.eta(-t) == doctest::Approx(orb.eta(t)).epsilon(1e-12));
    }
}

TEST_CASE("energy identity along the evaluator") {
    for (double a : {0.1456, 0.9, 1.9}) {
        const auto orb = pendulum_orbit(a);
        for (int i = 0; i <= 40; i++) {
            const double t = orb.T * i / 40.0;
            const double H = 0.5 * orb.eta(t) * orb.eta(t) + 1.0 - std::cos(orb.xi(t));
            CHECK(std::fabs(H - a) < 1e-11);
        }
    }
}

TEST_CASE("evaluator against the integrated pendulum") {
    const double a = 0.6;
    const auto orb = pendulum_orbit(a);
    PendulumRhs rhs;
    Dop853<double, 2, PendulumRhs>::Options opt;
    opt.rtol = 1e-13;
    opt.atol = 1e-13;
    std::array<double, 2> y0{0.0, std::sqrt(2.0 * a)};
    Dop853<double, 2, PendulumRhs> solver(rhs, 0.0, y0, opt);
    const double tend = 3.0 * orb.T;
    double t_check = 0.37;
    while (solver.t() < tend) {
        REQUIRE(solver.step(tend));
        if (solver.t() >= t_check) {
            // compare at the accepted step end
            CHECK(std::fabs(solver.y()[0] - orb.xi(solver.t())) < 1e-10);
            CHECK(std::fabs(solver.y()[1] - orb.eta(solver.t())) < 1e-10);
            t_check += 1.1;
        }
    }
    // periodicity of the evaluator
    CHECK(std::fabs(orb.xi(orb.T) - 0.0) < 1e-11);
    CHECK(std::fabs(orb.eta(orb.T) - std::sqrt(2.0 * a)) < 1e-11);
}

TEST_CASE("separatrix identities") {
    for (double s : {-3.0, -1.0, 0.0, 0.5, 2.0, 10.0}) {
        const double q = Separatrix::q(s), p = Separatrix::p(s);
        CHECK(0.5 * p * p + 1.0 - std::cos(q) == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(Separatrix::q(-s) == doctest::Approx(-q).epsilon(1e-13));
        CHECK(Separatrix::p(-s) == doctest::Approx(p).epsilon(1e-13));
    }
    CHECK_THROWS(pendulum_orbit(0.0));
    CHECK_THROWS(pendulum_orbit(2.0));
}

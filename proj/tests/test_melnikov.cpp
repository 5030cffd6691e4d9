#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "kirchhoff/melnikov.hpp"

using namespace kirchhoff;

TEST_CASE("M(0) vanishes and M is odd") {
    const double a0 = find_a0();
    const auto m0 = melnikov(0.0, a0);
    CHECK(m0.converged);
    CHECK(std::fabs(m0.value) < 1e-10);
    for (double tau : {0.25, 0.5, 1.0, 1.7, 2.5}) {
        const double mp = melnikov(tau, a0).value;
        const double mm = melnikov(-tau, a0).value;
        CHECK(std::fabs(mp + mm) < 1e-10);
    }
}

TEST_CASE("slope at zero equals (2/3) J(a)") {
    const double a0 = find_a0();
    const double h = 1e-3;
    const double fd = (melnikov(h, a0).value - melnikov(-h, a0).value) / (2.0 * h);
    const double want = melnikov_slope0(a0);
    CHECK(std::fabs(fd - want) / std::fabs(want) < 1e-6);
    CHECK(want > 0.0);
}

TEST_CASE("limit integral equals 4/3") {
    const auto lim = melnikov_J_limit();
    CHECK(lim.converged);
    CHECK(std::fabs(lim.value - 4.0 / 3.0) < 1e-8);
    // J(a) approaches the limit as a -> 2
    CHECK(std::fabs(melnikov_J(1.999).value - 4.0 / 3.0) < 0.02 * 4.0 / 3.0);
}

TEST_CASE("find_a0 admissibility") {
    const double a0 = find_a0();
    std::printf("[melnikov] a0 = %.10f, J(a0) = %.10f, T(a0) slope = %.6f\n", a0,
                melnikov_J(a0).value, melnikov_slope0(a0));
    CHECK(std::fabs(melnikov_J(a0).value - 4.0 / 3.0) <= 2.0 / 3.0 + 1e-9);
    // the band holds on all of [a0, 2)
    for (double a = a0; a < 1.995; a += 0.02)
        CHECK(std::fabs(melnikov_J(a).value - 4.0 / 3.0) <= 2.0 / 3.0 + 1e-9);
    // just below a0 the band is violated
    CHECK(std::fabs(melnikov_J(a0 - 0.01).value - 4.0 / 3.0) > 2.0 / 3.0);
    // reference value from an independent prototype of the same integrals
    CHECK(a0 == doctest::Approx(0.145656).epsilon(1e-3));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "kirchhoff/melnikov.hpp"
#include "kirchhoff/orbit.hpp"
#include "kirchhoff/pendulum.hpp"

using namespace kirchhoff;

TEST_CASE("sigma = 0 reproduces the uncoupled orbit") {
    const double a0 = find_a0();
    const auto orb = continue_periodic_orbit(0.0, a0, 1e-12);
    REQUIRE(orb.converged);
    CHECK(orb.y0[1] == doctest::Approx(std::sqrt(2.0 * a0)).epsilon(1e-12));
    CHECK(std::fabs(orb.y0[3]) < 1e-12);
    CHECK(orb.residual_periodicity < 1e-10);
    CHECK(orb.c1_distance < 1e-9);
    // multiplier structure {1, 1, e^T, e^-T} from the saddle pair
    double mu_max = 0.0, mu_min = 1e300;
    int near_one = 0;
    for (const auto& m : orb.multipliers) {
        const double am = std::abs(m);
        mu_max = std::max(mu_max, am);
        mu_min = std::min(mu_min, am);
        if (std::fabs(am - 1.0) < 1e-6) near_one++;
    }
    CHECK(near_one == 2);
    CHECK(mu_max == doctest::Approx(std::exp(orb.T)).epsilon(1e-7));
    CHECK(mu_min == doctest::Approx(std::exp(-orb.T)).epsilon(1e-7));
}

TEST_CASE("continued orbit at sigma = 0.05") {
    const double a0 = find_a0();
    const double sigma = 0.05;
    const auto orb = continue_periodic_orbit(sigma, a0, 1e-12);
    REQUIRE(orb.converged);
    std::printf("[orbit] sigma=0.05: periodicity %.2e reversibility %.2e C1 %.3f "
                "detM-1 %.2e newton its %zu\n",
                orb.residual_periodicity, orb.residual_reversibility, orb.c1_distance,
                orb.det_monodromy - 1.0, orb.newton_residuals.size());
    CHECK(orb.residual_periodicity <= 1e-9);
    CHECK(orb.residual_reversibility <= 1e-9);
    CHECK(orb.c1_distance <= 10.0 * sigma);
    CHECK(orb.n_unstable == 1);
    // the field is divergence free, so the monodromy is volume preserving
    CHECK(std::fabs(orb.det_monodromy - 1.0) <= 1e-8);
}

TEST_CASE("residual history decays (Newton convergence)") {
    const double a0 = find_a0();
    const auto orb = continue_periodic_orbit(0.08, a0, 1e-12);
    REQUIRE(orb.converged);
    REQUIRE(orb.newton_residuals.size() >= 2);
    CHECK(orb.newton_residuals.back() < 1e-12);
}

TEST_CASE("quad-precision shooting agrees with double") {
    const double a0 = find_a0();
    const auto od = shoot_periodic<double>(0.05, a0, 1e-13);
    const auto oq = shoot_periodic<quad>(quad(0.05), a0, quad(1e-24));
    REQUIRE(od.converged);
    REQUIRE(oq.converged);
    CHECK(std::fabs(double(oq.y0[1]) - od.y0[1]) < 1e-11);
    CHECK(std::fabs(double(oq.y0[3]) - od.y0[3]) < 1e-11);
    CHECK(oq.newton_residuals.back() < 1e-25);
    CHECK(std::fabs(double(oq.mult_unstable) / od.mult_unstable - 1.0) < 1e-9);
    // hyperbolic directions line up
    double dot = 0, nd = 0, nq = 0;
    for (int i = 0; i < 4; i++) {
        dot += od.v_unstable[i] * double(oq.v_unstable[i]);
        nd += od.v_unstable[i] * od.v_unstable[i];
        nq += double(oq.v_unstable[i]) * double(oq.v_unstable[i]);
    }
    CHECK(std::fabs(dot / std::sqrt(nd * nq)) == doctest::Approx(1.0).epsilon(1e-10));
}

#include "kirchhoff/manifold.hpp"

TEST_CASE("manifold splitting matches the Melnikov prediction at first order") {
    const double a0 = find_a0();
    const double sigma = 0.04;
    ManifoldOptions mo;
    mo.scan_points = 33;
    ManifoldGap mg(sigma, a0, mo);
    // unperturbed check is structural: at sigma = 0 both manifolds coincide
    {
        ManifoldGap mg0(0.0, a0, mo);
        for (double tau : {-0.8, 0.3, 1.0}) CHECK(std::fabs(mg0.gap(tau)) < 1e-9);
    }
    for (double tau : {-1.0, -0.4, 0.4, 1.0}) {
        const double g = mg.gap(tau);
        // the measured H1 difference realizes sigma M with orientation -1
        // for the upper-loop branch labels
        const double sm = -sigma * melnikov(tau, a0).value;
        CHECK(std::fabs(g - sm) < 10.0 * sigma * sigma);
    }
    const auto cert = transversality_check(sigma, a0, mo);
    std::printf("[manifold] sigma=%.3f slope0=%.5f sigma*M'(0)=%.5f orient=%+.0f ratio=%.3f bracket=[%.2f,%.2f]\n",
                sigma, cert.slope0, cert.sigma_Mslope, cert.orientation, cert.ratio,
                cert.tau_lo, cert.tau_hi);
    CHECK(cert.sign_change_bracketed);
    CHECK(cert.ratio > 0.5);
    CHECK(cert.ratio < 2.0);
}

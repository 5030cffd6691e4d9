#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "kirchhoff/cascade.hpp"
#include "kirchhoff/synthesis.hpp"
#include "kirchhoff/xieta_flow.hpp"

using namespace kirchhoff;

TEST_CASE("zero angles freeze the superactions") {
    const auto cfg = make_config(2, 3);
    const auto k = make_eff_constants(cfg, 0.3, 0.2, 1.0, 1.0);
    State6 y{1.0, 2.0, 3.0, 4.0, 0.0, 0.0}, dy;
    rhs6(y, k, dy);
    for (int n = 0; n < 4; n++) CHECK(dy[n] == 0.0);
}

TEST_CASE("eff constants identities") {
    const auto cfg = make_config(2, 25);
    const auto plan = make_plan(cfg, 0.05);
    CHECK(eff_residuals(plan.consts) < 1e-13);
    // q = A^{-1} b round trip
    const auto b = b_from_q(cfg.alphas, plan.consts.q1, plan.consts.q2);
    CHECK(b[0] == doctest::Approx(plan.consts.b1).epsilon(1e-13));
    CHECK(b[1] == doctest::Approx(plan.consts.b2).epsilon(1e-13));
    CHECK(plan.consts.lambda == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("q from b for (2,3) with b = (1,1)") {
    const auto q = q_from_b(make_config(2, 3).alphas, 1.0, 1.0);
    CHECK(q[0] == doctest::Approx((218.0 + 24.0) / 16428.0).epsilon(1e-14));
    CHECK(q[1] == doctest::Approx((24.0 + 78.0) / 16428.0).epsilon(1e-14));
    CHECK(q[0] == doctest::Approx(0.014731).epsilon(1e-4));
    CHECK(q[1] == doctest::Approx(0.0062089).epsilon(1e-4));
}

TEST_CASE("chart round trips on random states") {
    const auto cfg = make_config(2, 25);
    const auto plan = make_plan(cfg, 0.07);
    const auto& k = plan.consts;
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ud(0.01, 1.0), ua(-3.0, 3.0);
    for (int it = 0; it < 60; it++) {
        State6 y{ud(rng), ud(rng), ud(rng), ud(rng), ua(rng), ua(rng)};
        double E1, E2;
        const auto y4 = reduce6to4(y, E1, E2);
        const auto y6 = lift4to6(y4, E1, E2);
        for (int i = 0; i < 6; i++) CHECK(y6[i] == doctest::Approx(y[i]).epsilon(1e-13));

        const auto xy = map4toXY(y4, k);
        const auto y4b = mapXYto4(xy, k);
        for (int i = 0; i < 4; i++) CHECK(y4b[i] == doctest::Approx(y4[i]).epsilon(1e-13));

        const auto tl = translate(xy, k);
        const auto xyb = untranslate(tl, k);
        for (int i = 0; i < 4; i++)
            CHECK(std::fabs(xyb[i] - xy[i]) <= 1e-13 * (1.0 + std::fabs(xy[i])));

        const auto xe = xieta_from_tilde(tl, k);
        const auto tlb = tilde_from_xieta(xe, k);
        for (int i = 0; i < 4; i++)
            CHECK(std::fabs(tlb[i] - tl[i]) <= 1e-13 * (1.0 + std::fabs(tl[i])));
    }
}

TEST_CASE("conserved quantities drift along the 6-equation flow") {
    const auto cfg = make_config(2, 25);
    const double eps = 0.05;
    const auto plan = make_plan(cfg, eps);
    const auto& k = plan.consts;
    // a state on the constructed family, slightly perturbed in the angles
    StateXiEta xe0{0.4, 0.9, 0.3, 1.4};
    const State6 y0 = compose_point(xe0, k);
    const double horizon = 100.0 / k.B;  // rescaled horizon 100

    const auto res = integrate6(y0, k, horizon, 1e-11, horizon / 500.0);
    CHECK_FALSE(res.first_nonpositive_S.has_value());
    const auto& tr = res.traj;
    const double E10 = conservedE1(y0), E20 = conservedE2(y0);
    double sAS0 = sum_alpha_S(y0, k);
    double wE1 = 0, wE2 = 0, wS = 0;
    for (std::size_t i = 0; i < tr.size(); i++) {
        const State6 y = {tr.row(i)[0], tr.row(i)[1], tr.row(i)[2],
                          tr.row(i)[3], tr.row(i)[4], tr.row(i)[5]};
        wE1 = std::max(wE1, std::fabs(conservedE1(y) - E10) / std::fabs(E10));
        wE2 = std::max(wE2, std::fabs(conservedE2(y) - E20) / std::fabs(E20));
        wS = std::max(wS, std::fabs(sum_alpha_S(y, k) - sAS0) / std::fabs(sAS0));
    }
    std::printf("[cascade] 6-eq drifts over rescaled 100: E1 %.2e E2 %.2e sumaS %.2e\n",
                wE1, wE2, wS);
    CHECK(wE1 <= 1e-9);
    CHECK(wE2 <= 1e-9);
    CHECK(wS <= 1e-9);
}

TEST_CASE("|Z| is a prime integral of the cartesian truncated system") {
    const auto cfg = make_config(2, 25);
    const double eps = 0.05;
    const auto plan = make_plan(cfg, eps);
    const auto& k = plan.consts;
    const State6 y0 = compose_point({0.4, 0.9, 0.3, 1.4}, k);
    State6Z z0{y0[0], y0[1], y0[2], y0[3],
               k.rho123 * std::cos(y0[4]), k.rho123 * std::sin(y0[4]),
               k.rho234 * std::cos(y0[5]), k.rho234 * std::sin(y0[5])};
    const double horizon = 100.0 / k.B;
    const auto res = integrate6z(z0, k, horizon, 1e-11, horizon / 500.0,
                                 1e-11 * k.rho234);
    double w123 = 0, w234 = 0;
    for (std::size_t i = 0; i < res.traj.size(); i++) {
        const double* r = res.traj.row(i);
        const double m123 = std::hypot(r[4], r[5]), m234 = std::hypot(r[6], r[7]);
        w123 = std::max(w123, std::fabs(m123 - k.rho123) / k.rho123);
        w234 = std::max(w234, std::fabs(m234 - k.rho234) / k.rho234);
    }
    std::printf("[cascade] |Z| drifts over rescaled 100: %.2e %.2e\n", w123, w234);
    CHECK(w123 <= 1e-9);
    CHECK(w234 <= 1e-9);

    // cross-validation: polar and cartesian trajectories agree on S
    const auto res6 = integrate6(y0, k, horizon, 1e-11, horizon / 500.0);
    REQUIRE(res6.traj.size() == res.traj.size());
    double gap = 0;
    for (std::size_t i = 0; i < res.traj.size(); i++)
        for (int n = 0; n < 4; n++)
            gap = std::max(gap, std::fabs(res.traj.row(i)[n] - res6.traj.row(i)[n]) /
                                    std::fabs(res6.traj.row(i)[n]));
    CHECK(gap < 1e-7);
}

TEST_CASE("H conserved along (x,y), calE along (xi,eta)") {
    const auto cfg = make_config(2, 25);
    const auto plan = make_plan(cfg, 0.05);
    const auto& k = plan.consts;
    const State6 y0 = compose_point({0.4, 0.9, 0.3, 1.4}, k);
    double E1, E2;
    const auto y4 = reduce6to4(y0, E1, E2);
    const StateXY xy0 = map4toXY(y4, k);
    const double horizon = 100.0 / k.B;
    const auto txy = integrate_xy(xy0, k, horizon, 1e-11, horizon / 500.0);
    const double H0 = hamiltonianH(xy0, k);
    double wH = 0;
    for (std::size_t i = 0; i < txy.size(); i++) {
        const StateXY y = {txy.row(i)[0], txy.row(i)[1], txy.row(i)[2], txy.row(i)[3]};
        wH = std::max(wH, std::fabs(hamiltonianH(y, k) - H0) / std::fabs(H0));
    }
    std::printf("[cascade] H drift over rescaled 100: %.2e\n", wH);
    CHECK(wH <= 1e-9);

    const double sigma = cfg.sigma;
    StateXiEta xe0{0.4, 0.9, 0.3, 1.4};
    const auto txe = integrate_xieta(xe0, sigma, 1.0, 200.0, 1e-11, 0.5);
    const double C0 = conservedE_xieta<double>(xe0, sigma);
    double wC = 0;
    for (std::size_t i = 0; i < txe.size(); i++) {
        const StateXiEta y = {txe.row(i)[0], txe.row(i)[1], txe.row(i)[2], txe.row(i)[3]};
        wC = std::max(wC, std::fabs(conservedE_xieta<double>(y, sigma) - C0) / std::fabs(C0));
    }
    std::printf("[cascade] calE drift over rescaled 200: %.2e\n", wC);
    CHECK(wC <= 1e-10);
}

TEST_CASE("sigma = 0 decouples the pendulums") {
    StateXiEta y0{0.7, 0.5, 2.3, 0.8};
    const auto tr = integrate_xieta(y0, 0.0, 1.0, 150.0, 1e-12, 0.5);
    const double H10 = pendulum_energy(y0[0], y0[1]);
    const double H20 = pendulum_energy(y0[2], y0[3]);
    double w1 = 0, w2 = 0;
    for (std::size_t i = 0; i < tr.size(); i++) {
        w1 = std::max(w1, std::fabs(pendulum_energy(tr.row(i)[0], tr.row(i)[1]) - H10));
        w2 = std::max(w2, std::fabs(pendulum_energy(tr.row(i)[2], tr.row(i)[3]) - H20));
    }
    CHECK(w1 < 1e-10);
    CHECK(w2 < 1e-10);
}

TEST_CASE("the flow is reversible under (xi,eta,t) -> (-xi,eta,-t)") {
    const double sigma = 0.05;
    StateXiEta y0{0.7, 0.5, 2.3, 0.8};
    const auto fwd = xieta_flow<double>(y0, sigma, 1.0, 40.0, 1e-12);
    const StateXiEta ry{-fwd[0], fwd[1], -fwd[2], fwd[3]};
    const auto back = xieta_flow<double>(ry, sigma, 1.0, 40.0, 1e-12);
    const StateXiEta expect{-y0[0], y0[1], -y0[2], y0[3]};
    for (int i = 0; i < 4; i++) CHECK(std::fabs(back[i] - expect[i]) < 1e-9);
}

TEST_CASE("rescaling maps solutions to solutions (time direction fixed)") {
    const auto cfg = make_config(2, 25);
    const auto plan = make_plan(cfg, 0.1);
    const auto& k = plan.consts;
    // integrate the tilde chart, map, and compare against the xieta flow
    const StateXY tl0{0.3, 0.6, k.A1 * 0.8, k.A2 * 1.2};
    const StateXiEta xe0 = xieta_from_tilde(tl0, k);
    const double tau = 25.0;                // rescaled span
    const double t_slow = tau / k.B;        // tilde-chart span
    const auto tl1traj = integrate_xy(tl0, k, t_slow, 1e-12, 0.0, true);
    const StateXY tl1 = {tl1traj.row(tl1traj.size() - 1)[0], tl1traj.row(tl1traj.size() - 1)[1],
                         tl1traj.row(tl1traj.size() - 1)[2], tl1traj.row(tl1traj.size() - 1)[3]};
    const auto xe1 = xieta_flow<double>(xe0, cfg.sigma, k.lambda, tau, 1e-12);
    const auto xe1b = xieta_from_tilde(tl1, k);
    for (int i = 0; i < 4; i++) CHECK(std::fabs(xe1[i] - xe1b[i]) < 1e-8);
}

TEST_CASE("compose_chain constants and residual against rhs6") {
    const auto cfg = make_config(2, 25);
    const double eps = 0.05;
    const auto plan = make_plan(cfg, eps);
    const auto& k = plan.consts;

    // (2,25) spec anchors for the eps-free constants
    CHECK(plan.s1 == doctest::Approx(3136.0 / 12.0).epsilon(1e-12));
    CHECK(plan.s4 == 1.0);
    CHECK(plan.a1 == doctest::Approx(0.021829).epsilon(1e-4));
    CHECK(plan.a2 == doctest::Approx(0.0073010).epsilon(1e-4));
    CHECK(plan.b == doctest::Approx(17.18).epsilon(1e-3));

    // eta = 0 gives the constant S values
    const State6 c = compose_point({0.0, 0.0, 0.0, 0.0}, k);
    CHECK(c[0] == doctest::Approx(k.E1 - k.q1).epsilon(1e-13));
    CHECK(c[1] == doctest::Approx(k.E2 - k.q1 - k.q2).epsilon(1e-13));
    CHECK(c[2] == doctest::Approx(k.q1 - k.q2).epsilon(1e-13));
    CHECK(c[3] == doctest::Approx(k.q2).epsilon(1e-13));

    // a composed trajectory solves the 6-equation system (finite differences)
    StateXiEta xe0{0.4, 0.9, 0.3, 1.4};
    const double tau_end = 30.0;
    const auto xetraj = integrate_xieta(xe0, cfg.sigma, 1.0, tau_end, 1e-12, tau_end / 4000.0);
    const auto composed = compose_chain(xetraj, k);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 2; i + 2 < composed.size(); i++) {
        const double dt = composed.t[i + 1] - composed.t[i - 1];
        State6 y = {composed.row(i)[0], composed.row(i)[1], composed.row(i)[2],
                    composed.row(i)[3], composed.row(i)[4], composed.row(i)[5]};
        State6 dy;
        rhs6(y, k, dy);
        for (int n = 0; n < 6; n++) {
            // fourth-order central difference
            const double fd = (8.0 * (composed.row(i + 1)[n] - composed.row(i - 1)[n]) -
                               (composed.row(i + 2)[n] - composed.row(i - 2)[n])) /
                              (6.0 * dt);
            worst = std::max(worst, std::fabs(fd - dy[n]));
            scale = std::max(scale, std::fabs(dy[n]));
        }
    }
    std::printf("[cascade] composed-vs-rhs6 residual %.3e (scale %.3e)\n", worst, scale);
    CHECK(worst <= 1e-6 * scale);
}

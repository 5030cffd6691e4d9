#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "kirchhoff/kirchhoff_flow.hpp"

using namespace kirchhoff;

namespace {

PhysicalState random_state(const TripletConfig& cfg, std::mt19937& rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    PhysicalState s{SpectralField::zero(cfg, Flavor::Physical),
                    SpectralField::zero(cfg, Flavor::Physical), 0.0};
    for (int n = 0; n < 4; n++) {
        s.u.at(n, +1) = {g(rng), g(rng)};
        s.u.at(n, -1) = std::conj(s.u.at(n, +1));
        s.v.at(n, +1) = {g(rng), g(rng)};
        s.v.at(n, -1) = std::conj(s.v.at(n, +1));
    }
    return s;
}

} // namespace

TEST_CASE("rhs of the zero state vanishes") {
    const auto cfg = make_config(2, 3);
    PhysicalState z{SpectralField::zero(cfg, Flavor::Physical),
                    SpectralField::zero(cfg, Flavor::Physical), 0.0};
    const auto d = kirchhoff_rhs(z);
    for (int i = 0; i < 8; i++) {
        CHECK(std::abs(d.u.c[i]) == 0.0);
        CHECK(std::abs(d.v.c[i]) == 0.0);
    }
}

TEST_CASE("single-mode rhs by hand") {
    const auto cfg = make_config(2, 3);  // alpha1 = 2
    const double eps = 0.1;
    PhysicalState s{SpectralField::zero(cfg, Flavor::Physical),
                    SpectralField::zero(cfg, Flavor::Physical), 0.0};
    s.u.at(0, +1) = {eps / 2.0, 0.0};
    s.u.at(0, -1) = {eps / 2.0, 0.0};
    const double G = 2.0 * 4.0 * (eps / 2.0) * (eps / 2.0);
    CHECK(kirchhoff_G(s.u) == doctest::Approx(G).epsilon(1e-15));
    const auto d = kirchhoff_rhs(s);
    CHECK(d.v.at(0, +1).real() ==
          doctest::Approx(-4.0 * (1.0 + G) * eps / 2.0).epsilon(1e-15));
    // energy of (u single mode, v = 0) is G/2 + G^2/4
    CHECK(kirchhoff_energy(s) == doctest::Approx(0.5 * G + 0.25 * G * G).epsilon(1e-14));
}

TEST_CASE("linearized flow matches the closed wave form") {
    const auto cfg = make_config(2, 3);
    std::mt19937 rng(3);
    auto s0 = random_state(cfg, rng, 0.02);
    KirchhoffParams prm;
    prm.linearize = true;
    prm.rtol = 1e-12;
    prm.atol = 1e-16;
    const double t1 = 10.0;
    const auto traj = integrate_kirchhoff(s0, cfg, t1, prm, 0.0);
    const auto s1 = unpack_state(
        {traj.row(traj.size() - 1)[0], traj.row(traj.size() - 1)[1], traj.row(traj.size() - 1)[2],
         traj.row(traj.size() - 1)[3], traj.row(traj.size() - 1)[4], traj.row(traj.size() - 1)[5],
         traj.row(traj.size() - 1)[6], traj.row(traj.size() - 1)[7], traj.row(traj.size() - 1)[8],
         traj.row(traj.size() - 1)[9], traj.row(traj.size() - 1)[10], traj.row(traj.size() - 1)[11],
         traj.row(traj.size() - 1)[12], traj.row(traj.size() - 1)[13], traj.row(traj.size() - 1)[14],
         traj.row(traj.size() - 1)[15]},
        cfg, t1);
    for (int n = 0; n < 4; n++) {
        const double w = cfg.alpha(n);
        const cplx expect_u =
            s0.u.at(n, +1) * std::cos(w * t1) + s0.v.at(n, +1) * std::sin(w * t1) / w;
        const cplx expect_v =
            -w * s0.u.at(n, +1) * std::sin(w * t1) + s0.v.at(n, +1) * std::cos(w * t1);
        CHECK(std::abs(s1.u.at(n, +1) - expect_u) < 1e-10);
        CHECK(std::abs(s1.v.at(n, +1) - expect_v) < 1e-10);
    }
}

TEST_CASE("energy conservation over t = 1000 at tol 1e-13") {
    const auto cfg = make_config(2, 25);
    std::mt19937 rng(11);
    auto s0 = random_state(cfg, rng, 0.0125);  // ~eps = 0.05 scale
    const double E0 = kirchhoff_energy(s0);
    KirchhoffParams prm;
    prm.rtol = 1e-13;
    prm.atol = 1e-17;
    double max_drift = 0.0;
    auto cb = [&](double, const PhysicalState& st) {
        max_drift = std::max(max_drift, std::fabs(kirchhoff_energy(st) - E0) / E0);
    };
    const auto traj = integrate_kirchhoff(s0, cfg, 1000.0, prm, 5.0, cb);
    std::printf("[kirchhoff] t=1000 tol=1e-13: drift=%.3e steps=%ld\n", max_drift,
                traj.stats.n_accepted);
    CHECK(max_drift <= 1e-9);
    CHECK(traj.stats.step_underflow == false);
}

TEST_CASE("time reversal returns to the initial state") {
    const auto cfg = make_config(2, 3);
    std::mt19937 rng(5);
    auto s0 = random_state(cfg, rng, 0.01);
    KirchhoffParams prm;
    prm.rtol = 1e-12;
    prm.atol = 1e-16;
    const double T = 50.0;
    auto traj = integrate_kirchhoff(s0, cfg, T, prm, 0.0);
    auto mid = unpack_state(*reinterpret_cast<const std::array<double, 16>*>(
                                traj.row(traj.size() - 1)),
                            cfg, 0.0);
    // reverse: flip v, integrate T, flip v again
    for (int i = 0; i < 8; i++) mid.v.c[i] = -mid.v.c[i];
    auto back = integrate_kirchhoff(mid, cfg, T, prm, 0.0);
    auto fin = unpack_state(*reinterpret_cast<const std::array<double, 16>*>(
                                back.row(back.size() - 1)),
                            cfg, 0.0);
    for (int i = 0; i < 8; i++) fin.v.c[i] = -fin.v.c[i];
    for (int i = 0; i < 8; i++) {
        CHECK(std::abs(fin.u.c[i] - s0.u.c[i]) < 1e-8);
        CHECK(std::abs(fin.v.c[i] - s0.v.c[i]) < 1e-8);
    }
}

TEST_CASE("reality constraint preserved through integration") {
    const auto cfg = make_config(2, 3);
    std::mt19937 rng(8);
    auto s0 = random_state(cfg, rng, 0.05);
    KirchhoffParams prm;
    prm.rtol = 1e-12;
    auto traj = integrate_kirchhoff(s0, cfg, 20.0, prm, 0.0);
    auto s1 = unpack_state(*reinterpret_cast<const std::array<double, 16>*>(
                               traj.row(traj.size() - 1)),
                           cfg, 0.0);
    CHECK(s1.u.reality_residual() < 1e-14);
    CHECK(s1.v.reality_residual() < 1e-14);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kirchhoff/spectral_field.hpp"

using namespace kirchhoff;

namespace {

SpectralField random_pair_field(const TripletConfig& cfg, std::mt19937& rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    auto f = SpectralField::zero(cfg, Flavor::ConjugatePair);
    for (auto& c : f.c) c = {g(rng), g(rng)};
    return f;
}

} // namespace

TEST_CASE("observables by hand evaluation") {
    const auto cfg = make_config(2, 3);
    auto u = SpectralField::zero(cfg, Flavor::ConjugatePair);
    u.at(0, +1) = {1.0, 0.0};
    u.at(0, -1) = {0.0, 2.0};
    const auto o = observables(u);
    CHECK(o.S[0] == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(o.B[0].real() == doctest::Approx(0.0));
    CHECK(o.B[0].imag() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(o.S[1] == 0.0);
}

TEST_CASE("zero field observables degenerate") {
    const auto cfg = make_config(2, 3);
    const auto o = observables(SpectralField::zero(cfg, Flavor::ConjugatePair));
    for (int n = 0; n < 4; n++) {
        CHECK(o.S[n] == 0.0);
        CHECK(std::abs(o.B[n]) == 0.0);
    }
    CHECK(std::abs(o.Z123) == 0.0);
    CHECK_FALSE(o.phi123.has_value());
    CHECK_FALSE(o.phi234.has_value());
}

TEST_CASE("unit-B field gives Z123 = 1 at angle 0") {
    const auto cfg = make_config(2, 3);
    auto u = SpectralField::zero(cfg, Flavor::ConjugatePair);
    const double r = 1.0 / std::sqrt(2.0);
    for (int n = 0; n < 3; n++) {
        u.at(n, +1) = {r, 0.0};
        u.at(n, -1) = {r, 0.0};  // B_n = 2 r^2 = 1
    }
    const auto o = observables(u);
    CHECK(std::abs(o.Z123 - cplx(1.0, 0.0)) < 1e-14);
    CHECK(o.rho123 == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(o.phi123.has_value());
    CHECK(*o.phi123 == doctest::Approx(0.0));
}

TEST_CASE("sobolev norm examples") {
    const auto cfg = make_config(2, 3);  // alpha1 = 2
    auto u = SpectralField::zero(cfg, Flavor::ConjugatePair);
    u.at(0, +1) = {1.0, 0.0};
    CHECK(sobolev_norm(u, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sobolev_norm(u, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sobolev_norm(SpectralField::zero(cfg, Flavor::ConjugatePair), 1.5) == 0.0);
}

TEST_CASE("|B_n| <= S_n on random fields") {
    const auto cfg = make_config(3, 11);
    std::mt19937 rng(7);
    for (int it = 0; it < 100; it++) {
        const auto u = random_pair_field(cfg, rng, 0.7);
        const auto o = observables(u);
        for (int n = 0; n < 4; n++) CHECK(std::abs(o.B[n]) <= o.S[n] * (1.0 + 1e-14));
    }
}

TEST_CASE("phi2 with f = g real gives p = 0, q = sqrt2 f") {
    const auto cfg = make_config(2, 3);
    auto f = SpectralField::zero(cfg, Flavor::Physical);
    f.at(1, +1) = {0.3, 0.0};
    f.at(1, -1) = {0.3, 0.0};
    const auto qp = phi2_map(f, f);
    for (int i = 0; i < 8; i++) {
        CHECK(std::abs(qp.second.c[i]) < 1e-16);
        CHECK(std::abs(qp.first.c[i] - std::sqrt(2.0) * f.c[i]) < 1e-15);
    }
}

TEST_CASE("round trips and the norm identities") {
    const auto cfg = make_config(2, 25);
    std::mt19937 rng(99);
    for (int it = 0; it < 25; it++) {
        const auto f = random_pair_field(cfg, rng, 0.5);
        const auto g = conjugate_pair_of(f);
        CHECK(conj_pair_residual(f, g) < 1e-15);

        const auto qp = phi2_map(f, g);
        CHECK(qp.first.reality_residual() < 1e-14);
        CHECK(qp.second.reality_residual() < 1e-14);
        const auto fg2 = phi2_inverse(qp.first, qp.second);
        const auto uv = phi1_map(qp.first, qp.second);
        const auto qp2 = phi1_inverse(uv.first, uv.second);
        for (int i = 0; i < 8; i++) {
            CHECK(std::abs(fg2.first.c[i] - f.c[i]) <= 1e-14 * (1.0 + std::abs(f.c[i])));
            CHECK(std::abs(fg2.second.c[i] - g.c[i]) <= 1e-14 * (1.0 + std::abs(g.c[i])));
            CHECK(std::abs(qp2.first.c[i] - qp.first.c[i]) <= 1e-14 * (1.0 + std::abs(qp.first.c[i])));
            CHECK(std::abs(qp2.second.c[i] - qp.second.c[i]) <= 1e-14 * (1.0 + std::abs(qp.second.c[i])));
        }
        // ||q||_s^2 + ||p||_s^2 = 2 ||f||_s^2 and ||u||_{s+1/2} = ||q||_s
        for (double s : {0.0, 0.5, 1.0, 1.5}) {
            const double nq = sobolev_norm(qp.first, s), np = sobolev_norm(qp.second, s);
            const double nf = sobolev_norm(f, s);
            CHECK(nq * nq + np * np == doctest::Approx(2.0 * nf * nf).epsilon(1e-13));
            CHECK(sobolev_norm(uv.first, s + 0.5) == doctest::Approx(nq).epsilon(1e-13));
            CHECK(sobolev_norm(uv.second, s - 0.5) == doctest::Approx(np).epsilon(1e-13));
        }
        // calN of (u, v) equals sqrt2 ||f||_1
        const double nu = sobolev_norm(uv.first, 1.5), nv = sobolev_norm(uv.second, 0.5);
        const double calN = std::sqrt(nu * nu + nv * nv);
        CHECK(calN == doctest::Approx(std::sqrt(2.0) * sobolev_norm(f, 1.0)).epsilon(1e-13));
        // and matches the observables channel
        CHECK(observables(f).calN == doctest::Approx(calN).epsilon(1e-13));
    }
}

TEST_CASE("angle helpers") {
    CHECK(wrap_2pi(-0.1) == doctest::Approx(2.0 * M_PI - 0.1));
    CHECK(wrap_2pi(2.0 * M_PI) == doctest::Approx(0.0));
    CHECK(angle_diff(0.1, 2.0 * M_PI - 0.1) == doctest::Approx(0.2).epsilon(1e-12));
}

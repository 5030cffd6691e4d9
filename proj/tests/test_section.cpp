#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "kirchhoff/melnikov.hpp"
#include "kirchhoff/section.hpp"

using namespace kirchhoff;

TEST_CASE("symbol arithmetic") {
    CHECK(extract_symbols({0.0, 23.1}, 7.4163) == std::vector<long>{3});
    CHECK(extract_symbols({0.0, 7.0, 22.0}, 7.0) == std::vector<long>{1, 2});
}

TEST_CASE("energy lift of a section point") {
    const double sigma = 0.05;
    const StateXiEta y{0.4, 0.7, 0.0, 1.93};
    const double calE = conservedE_xieta<double>(y, sigma);
    const double e2 = section_eta2_from_energy(y[0], y[1], sigma, calE);
    CHECK(e2 == doctest::Approx(y[3]).epsilon(1e-12));
}

TEST_CASE("poincare map returns to the section and conserves energy") {
    const double a0 = find_a0();
    const double sigma = 0.05;
    const auto orb = shoot_periodic<double>(sigma, a0, 1e-13);
    // start from a point of the unstable segment pushed to the section
    std::array<double, 4> y0 = orb.y0;
    for (int i = 0; i < 4; i++) y0[i] += 1e-5 * orb.v_unstable[i];
    XiEtaTracker<double> tr;
    tr.sigma = sigma;
    tr.rtol = 1e-13;
    tr.run(y0, 0.0, 200.0, 1);
    REQUIRE(tr.section.size() >= 1);
    const SectionPoint pt{double(tr.section[0].y[0]), double(tr.section[0].y[1]),
                          double(tr.section[0].y[3])};
    const double calE0 = conservedE_xieta<double>(lift_section_point(pt), sigma);
    const auto ret = poincare_map(pt, sigma, 1e-13, 400.0);
    REQUIRE(ret.ok);
    CHECK(ret.return_time > 0.5 * orb.T);
    const double calE1 = conservedE_xieta<double>(lift_section_point(ret.point), sigma);
    CHECK(std::fabs(calE1 - calE0) / std::fabs(calE0) < 1e-10);
    // the returned point sits on the section with eta2 > 0 by construction
    CHECK(ret.point.eta2 > 0.0);
}

TEST_CASE("M0 measurement") {
    const double a0 = find_a0();
    const auto m0 = measure_M0(0.05, a0, 32);
    std::printf("[section] M0(0.05) = %d (observed %zu symbols, log(1/sigma)=%.2f)\n",
                m0.M0, m0.observed.size(), m0.log_sigma_inv);
    CHECK(m0.M0 >= 0);
    CHECK(!m0.observed.empty());
    for (long s : m0.observed) CHECK(s >= m0.M0);
}

TEST_CASE("two-symbol itinerary realized exactly") {
    const double a0 = find_a0();
    const double sigma = 0.05;
    const auto m0r = measure_M0(sigma, a0, 32);
    const std::vector<long> seq = {m0r.M0 + 1, m0r.M0 + 2};
    const auto res = target_itinerary(seq, sigma, a0);
    std::printf("[section] 2-symbol target: success=%d prefix=%d bracket=%.3e msg='%s'\n",
                int(res.success), res.achieved_prefix, res.bracket_width,
                res.message.c_str());
    std::printf("[section] realized:");
    for (long s : res.itinerary.realized) std::printf(" %ld", s);
    std::printf("  theta:");
    for (double th : res.itinerary.theta) std::printf(" %.3f", th);
    std::printf("\n");
    REQUIRE(res.success);
    REQUIRE(res.itinerary.realized.size() >= seq.size());
    for (std::size_t i = 0; i < seq.size(); i++)
        CHECK(res.itinerary.realized[i] == seq[i]);
    for (std::size_t i = 0; i < seq.size(); i++) {
        CHECK(res.itinerary.theta[i] >= 0.0);
        CHECK(res.itinerary.theta[i] < 1.0);
    }
    // Prop 4.1-type bounds: the first-pendulum shadow stays sigma-close
    CHECK(res.itinerary.sup_dev_xi1 <= 10.0 * sigma);
    CHECK(res.itinerary.sup_dev_eta1 <= 10.0 * sigma);
    // eta2 pattern: rises above 2 - C sigma on up intervals, dips below
    // C sigma on the dwell intervals
    REQUIRE(!res.itinerary.eta2_max_I.empty());
    for (double m : res.itinerary.eta2_max_I) CHECK(m >= 2.0 - 10.0 * sigma);
    for (double m : res.itinerary.eta2_min_E) CHECK(m <= 10.0 * sigma);
}

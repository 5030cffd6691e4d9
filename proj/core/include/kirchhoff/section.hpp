#pragma once
#include <string>
#include <vector>

#include "kirchhoff/orbit.hpp"

namespace kirchhoff {

/// Point of the Poincare section {xi2 = 0 mod 2pi, eta2 > 0} on a fixed
/// energy level (coordinates xi1, eta1, eta2).
struct SectionPoint {
    double xi1 = 0, eta1 = 0, eta2 = 0;
};

StateXiEta lift_section_point(const SectionPoint& p);

/// eta2 > 0 on the level conservedE_xieta = calE at (xi1, eta1, xi2 = 0).
double section_eta2_from_energy(double xi1, double eta1, double sigma, double calE);

struct PoincareResult {
    SectionPoint point;
    double return_time = 0;
    bool ok = false;
};

/// First return to the section; t_max guards against non-returning points.
PoincareResult poincare_map(const SectionPoint& pt, double sigma, double rtol = 1e-13,
                            double t_max = 400.0);

/// omega_k = floor((t_k - t_{k-1}) / T).
std::vector<long> extract_symbols(const std::vector<double>& times, double T);

struct M0Result {
    int M0 = 0;
    std::vector<long> observed;  // first-return symbols over the scanned segment
    double log_sigma_inv = 0;
};

/// Minimal first-return symbol observed over one fundamental segment of
/// W^u on the section (orbits that stay on the positive-rotation branch).
M0Result measure_M0(double sigma, double a, int n_scan = 48, double rtol = 1e-13);

struct Itinerary {
    std::vector<long> prescribed;
    std::vector<long> realized;
    std::vector<double> t_section;  // hitting times, t_section[0] = 0
    std::vector<double> theta;      // realized fractional parts, in [0,1)
    std::vector<double> t_up, t_down;          // eta2 = 1 crossings (same clock)
    std::vector<double> eta2_max_I, eta2_min_E;
    double min_eta2 = 0, max_eta2 = 0;
    double sup_dev_xi1 = 0, sup_dev_eta1 = 0;  // vs the unperturbed libration
};

struct TargetOptions {
    double d0 = 1e-8;            // seed distance on the unstable eigenvector
    double rtol_flow = 1e-17;    // quad working tolerance for probes
    double rtol_shoot = 1e-24;   // quad tolerance for the orbit continuation
    int scan_points = 17;
    int zoom_depth = 22;
    int bisect_iters = 140;
    double theta_lo = 0.10, theta_hi = 0.90;  // target window inside [m, m+1)
    double offbranch_eta2 = -0.6;             // branch guard
};

struct TargetResult {
    bool success = false;
    int achieved_prefix = 0;
    double bracket_width = 0;  // final relative width of the seed bracket
    double sigma = 0, a = 0, T = 0;
    int M0 = 0;
    SectionPoint start;           // the first section hit (double precision)
    StateXiEta start_state{};     // experiment start: eta2 = 1 upward crossing
    double t_first_section = 0;   // time from start_state to the first hit
    std::array<std::string, 4> start_state_str{};  // full-precision decimals
    Itinerary itinerary;
    std::string message;
};

/// Nested bisection along one fundamental segment of W^u cap Pi: at each
/// stage keep the subsegment whose next return symbol matches m_j. Runs in
/// quadruple precision internally (after two or three symbols the parameter
/// brackets fall far below double resolution).
TargetResult target_itinerary(const std::vector<long>& m_seq, double sigma, double a,
                              const TargetOptions& opts = {});

} // namespace kirchhoff

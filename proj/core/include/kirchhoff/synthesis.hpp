#pragma once
#include <array>
#include <complex>

#include "kirchhoff/cascade.hpp"
#include "kirchhoff/spectral_field.hpp"
#include "kirchhoff/triplet.hpp"

namespace kirchhoff {

/// All constants of the initial-datum construction at amplitude eps:
/// q2 = eps^2, q1 = (1 + 2r/3) q2 with r = a4^2/a3^2, the rescaling
/// amplitudes A1 = a1 eps^3, A2 = a2 eps^3, B = b eps^3, and the
/// admissibility thresholds. Desk-scale eps beyond eps0 is permitted and
/// reported through the flags, never enforced.
struct SynthesisPlan {
    TripletConfig cfg;
    double eps = 0;
    double q1 = 0, q2 = 0;
    double r = 0;                    // alpha4^2 / alpha3^2
    double a1 = 0, a2 = 0, b = 0;    // eps-free parts of A1, A2, B
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;  // constant parts of S_n / eps^2
    double c1 = 0;                   // 7 alpha4^2 / 3
    double r1 = 0;                   // 2 alpha2 alpha3 a2
    double eps0 = 0;
    bool flag_A1_q2 = false;         // A1 <= q2 / 9
    bool flag_A1_q2_32 = false;      // A1 <= a1 q2^{3/2}
    bool flag_q2 = false;            // 8 alpha4^{2 m1} q2 <= delta1^2
    EffConstants consts;
};

SynthesisPlan make_plan(const TripletConfig& cfg, double eps);

/// Per-sphere moduli r_n and phases psi_n realizing the prescribed angles
/// and couplings: r_n = r0 / alpha_n (n = 1..3), r_4 = r0 / (gamma alpha_4),
/// r0 = ((4/3)(a1^2+a2^2+a3^2) A1^2)^{1/3}; psi = (phi123, 0, 0, -phi234).
struct RnPsin {
    std::array<double, 4> r{};
    std::array<double, 4> psi{};
    bool r1_within_q2_half = false;  // threshold r1 <= q2/2 of the construction
};
RnPsin rn_psin(const SynthesisPlan& plan, double phi123_0, double phi234_0);

/// z1, z2 with |z1|^2 + |z2|^2 = s and 2 z1 z2 = r e^{i psi} (0 < r <= s);
/// moduli from x^2 - s x + r^2/4 = 0, phase placed on z1.
std::array<cplx, 2> split_complex(double s, double r, double psi);

/// Amplitude data of the trigonometric-polynomial datum.
struct DatumSpec {
    std::array<double, 4> S_target{};
    double phi123_0 = 0, phi234_0 = 0;
    RnPsin rp;
    std::array<cplx, 4> z1{}, z2{};
    std::array<long, 4> k{};  // lattice representatives alpha_n * e_1
};

DatumSpec build_datum_spec(const SynthesisPlan& plan, const std::array<double, 4>& S0,
                           double phi123_0, double phi234_0);

/// u0 = sum_n (z1_n e^{i k_n x} + z2_n e^{-i k_n x}).
SpectralField build_u0(const DatumSpec& spec, const TripletConfig& cfg);

/// Check of the eight defining identities plus the norm bounds.
struct DatumReport {
    std::array<double, 4> S_residual{};  // relative
    double phi123_residual = 0, phi234_residual = 0;  // mod 2 pi
    double c123_residual = 0, c234_residual = 0;      // relative
    double norm1_sq = 0, norm_m1_sq = 0;
    double norm_bound_1 = 0, norm_bound_m1 = 0;  // 8 alpha4^{2s} q2
    bool norms_ok = false;
    bool in_ball = false;        // ||u0||_{m1} <= delta1 (meaningful when flag_q2)
    bool identities_ok = false;  // all residuals <= 1e-11
    double worst_identity = 0;
};
DatumReport verify_u0(const SpectralField& u0, const SynthesisPlan& plan,
                      const DatumSpec& spec);

} // namespace kirchhoff

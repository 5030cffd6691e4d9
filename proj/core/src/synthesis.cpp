#include "kirchhoff/synthesis.hpp"

#include <cmath>
#include <stdexcept>

namespace kirchhoff {

SynthesisPlan make_plan(const TripletConfig& cfg, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("make_plan: need eps > 0");
    SynthesisPlan p;
    p.cfg = cfg;
    p.eps = eps;
    const double a1 = cfg.alpha(0), a2 = cfg.alpha(1), a3 = cfg.alpha(2), a4 = cfg.alpha(3);
    const double s123 = cfg.s123();

    p.q2 = eps * eps;
    p.r = a4 * a4 / (a3 * a3);
    p.q1 = (1.0 + 2.0 / 3.0 * p.r) * p.q2;

    p.a1 = std::sqrt(3.0 / 32.0 * a1 * a1 * a1 / s123);
    p.a2 = p.a1 / cfg.gamma;
    p.b = 0.5 * s123 * p.a1;
    const double A1 = p.a1 * eps * eps * eps;

    p.s1 = a4 * a4 / (3.0 * a1 * a1);
    p.s2 = a4 * a4 / (3.0 * a2 * a2);
    p.s3 = 2.0 * a4 * a4 / (3.0 * a3 * a3);
    p.s4 = 1.0;
    p.c1 = 7.0 / 3.0 * a4 * a4;
    p.r1 = 2.0 * a2 * a3 * p.a2;

    const double c123 = 0.5 * s123 * A1 * A1;
    const double c234 = c123 / cfg.gamma;
    const double E1 = ((a1 * a1 + 2.0 * a3 * a3) * p.q1 - (2.0 * a3 * a3 + a4 * a4) * p.q2) /
                      (a1 * a1);
    const double E2 = (-(a3 * a3 - a2 * a2) * p.q1 + (a2 * a2 + a3 * a3 + a4 * a4) * p.q2) /
                      (a2 * a2);
    const double b1 = a1 * a1 * E1 + a2 * a2 * E2;
    const double b2 = a2 * a2 * E2;
    p.consts = make_eff_constants(cfg, c123, c234, b1, b2);

    p.eps0 = std::min({1.0,
                       std::sqrt(32.0 / 3.0 * s123 / (a1 * a1 * a1)) / 9.0,
                       cfg.delta1 / (std::sqrt(8.0) * std::pow(a4, cfg.m1))});
    const double slack = 1.0 + 1e-12;
    p.flag_A1_q2 = A1 <= p.q2 / 9.0 * slack;
    p.flag_A1_q2_32 = A1 <= p.a1 * std::pow(p.q2, 1.5) * slack;
    p.flag_q2 = 8.0 * std::pow(a4, 2.0 * cfg.m1) * p.q2 <= cfg.delta1 * cfg.delta1 * slack;
    return p;
}

RnPsin rn_psin(const SynthesisPlan& plan, double phi123_0, double phi234_0) {
    RnPsin out;
    const auto& cfg = plan.cfg;
    const double A1 = plan.consts.A1;
    const double r0 = std::cbrt(4.0 / 3.0 * cfg.s123() * A1 * A1);
    out.r = {r0 / cfg.alpha(0), r0 / cfg.alpha(1), r0 / cfg.alpha(2),
             r0 / (cfg.gamma * cfg.alpha(3))};
    out.psi = {phi123_0, 0.0, 0.0, -phi234_0};
    out.r1_within_q2_half = out.r[0] <= plan.q2 / 2.0 * (1.0 + 1e-9);
    return out;
}

std::array<cplx, 2> split_complex(double s, double r, double psi) {
    if (!(r > 0.0) || r > s * (1.0 + 1e-14))
        throw std::invalid_argument("split_complex: need 0 < r <= s");
    r = std::min(r, s);
    // moduli^2 are the roots of x^2 - s x + r^2/4
    const double disc = std::sqrt(std::max(0.0, s * s - r * r));
    const double rho1sq = 0.5 * (s + disc);
    const double rho2sq = (0.25 * r * r) / rho1sq;  // product of roots, no cancellation
    const double rho1 = std::sqrt(rho1sq), rho2 = std::sqrt(rho2sq);
    return {rho1 * std::polar(1.0, psi), cplx(rho2, 0.0)};
}

DatumSpec build_datum_spec(const SynthesisPlan& plan, const std::array<double, 4>& S0,
                           double phi123_0, double phi234_0) {
    DatumSpec spec;
    spec.S_target = S0;
    spec.phi123_0 = phi123_0;
    spec.phi234_0 = phi234_0;
    spec.rp = rn_psin(plan, phi123_0, phi234_0);
    for (int n = 0; n < 4; n++) {
        const auto z = split_complex(S0[n], spec.rp.r[n], spec.rp.psi[n]);
        spec.z1[n] = z[0];
        spec.z2[n] = z[1];
        spec.k[n] = plan.cfg.alphas[n];
    }
    return spec;
}

SpectralField build_u0(const DatumSpec& spec, const TripletConfig& cfg) {
    SpectralField u0 = SpectralField::zero(cfg, Flavor::ConjugatePair);
    for (int n = 0; n < 4; n++) {
        u0.at(n, +1) = spec.z1[n];
        u0.at(n, -1) = spec.z2[n];
    }
    return u0;
}

DatumReport verify_u0(const SpectralField& u0, const SynthesisPlan& plan,
                      const DatumSpec& spec) {
    DatumReport rep;
    const auto obs = observables(u0);
    const auto& k = plan.consts;
    auto rel = [](double got, double want) {
        const double s = std::max(std::fabs(got), std::fabs(want));
        return s == 0.0 ? 0.0 : std::fabs(got - want) / s;
    };
    for (int n = 0; n < 4; n++) rep.S_residual[n] = rel(obs.S[n], spec.S_target[n]);
    rep.phi123_residual = obs.phi123 ? std::fabs(angle_diff(*obs.phi123, spec.phi123_0)) : 1.0;
    rep.phi234_residual = obs.phi234 ? std::fabs(angle_diff(*obs.phi234, spec.phi234_0)) : 1.0;
    const double a1 = plan.cfg.alpha(0), a2 = plan.cfg.alpha(1);
    const double a3 = plan.cfg.alpha(2), a4 = plan.cfg.alpha(3);
    rep.c123_residual = rel(3.0 / 8.0 * obs.rho123 * a1 * a2 * a3, k.c123);
    rep.c234_residual = rel(3.0 / 8.0 * obs.rho234 * a2 * a3 * a4, k.c234);

    rep.worst_identity = std::max({rep.S_residual[0], rep.S_residual[1], rep.S_residual[2],
                                   rep.S_residual[3], rep.phi123_residual, rep.phi234_residual,
                                   rep.c123_residual, rep.c234_residual});
    rep.identities_ok = rep.worst_identity <= 1e-11;

    const double n1 = sobolev_norm(u0, 1.0);
    const double nm1 = sobolev_norm(u0, double(plan.cfg.m1));
    rep.norm1_sq = n1 * n1;
    rep.norm_m1_sq = nm1 * nm1;
    rep.norm_bound_1 = 8.0 * std::pow(a4, 2.0) * plan.q2;
    rep.norm_bound_m1 = 8.0 * std::pow(a4, 2.0 * plan.cfg.m1) * plan.q2;
    rep.norms_ok = rep.norm1_sq <= rep.norm_bound_1 * (1.0 + 1e-12) &&
                   rep.norm_m1_sq <= rep.norm_bound_m1 * (1.0 + 1e-12);
    rep.in_ball = nm1 <= plan.cfg.delta1;
    return rep;
}

} // namespace kirchhoff

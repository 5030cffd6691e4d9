#include "kirchhoff/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kirchhoff/melnikov.hpp"
#include "kirchhoff/spectral_field.hpp"

namespace kirchhoff {

namespace {

// phase of the pendulum-2 point along the upper separatrix branch
double phase_proxy(double xi2, double eta2, double window) {
    if (eta2 <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    double xw = std::remainder(xi2, 2.0 * std::numbers::pi);  // (-pi, pi]
    const double s = std::sin(0.5 * xw);
    const double tau = std::atanh(std::clamp(s, -0.999999, 0.999999));
    if (std::fabs(tau) > window) return std::numeric_limits<double>::quiet_NaN();
    return tau;
}

double H1_of(const std::array<double, 4>& y) {
    return 0.5 * y[1] * y[1] + (1.0 - std::cos(y[0]));
}

} // namespace

ManifoldGap::ManifoldGap(double sigma, double a, ManifoldOptions opt)
    : opt_(opt), orb_(shoot_periodic<double>(sigma, a, opt.rtol)) {
    if (!orb_.converged)
        throw std::runtime_error("ManifoldGap: periodic-orbit continuation failed");
    samples_u_ = scan(false);
    samples_s_ = scan(true);
}

std::vector<ManifoldGap::Sample> ManifoldGap::scan(bool stable) const {
    std::vector<Sample> out;
    const double lnmu = std::log(std::fabs(orb_.mult_unstable));
    for (int i = 0; i < opt_.scan_points; i++) {
        const double f = double(i) / (opt_.scan_points - 1);
        const double s = opt_.seed * std::exp(f * lnmu);
        std::array<double, 4> y0 = orb_.y0;
        const auto& v = stable ? orb_.v_stable : orb_.v_unstable;
        for (int k = 0; k < 4; k++) y0[k] += s * v[k];

        XiEtaTracker<double> tracker;
        tracker.sigma = orb_.sigma;
        tracker.rtol = opt_.rtol;
        tracker.set_angle_index(0);
        const double span = opt_.span_periods * orb_.T;
        tracker.run(y0, 0.0, stable ? -span : span);
        // keep only the primary-excursion crossing: later ones belong to
        // other folds of the manifold and carry different H1
        for (const auto& cr : tracker.section) {
            const double tau = phase_proxy(cr.y[2], cr.y[3], opt_.tau_window);
            if (std::isnan(tau)) continue;
            out.push_back({f, tau, H1_of(cr.y), cr.t});
            break;
        }
    }
    return out;
}

BranchPoint ManifoldGap::eval(bool stable, double f, double t_hint) const {
    BranchPoint bp;
    const double lnmu = std::log(std::fabs(orb_.mult_unstable));
    const double s = opt_.seed * std::exp(f * lnmu);
    std::array<double, 4> y0 = orb_.y0;
    const auto& v = stable ? orb_.v_stable : orb_.v_unstable;
    for (int k = 0; k < 4; k++) y0[k] += s * v[k];

    XiEtaTracker<double> tracker;
    tracker.sigma = orb_.sigma;
    tracker.rtol = opt_.rtol;
    tracker.set_angle_index(0);
    const double span = opt_.span_periods * orb_.T;
    tracker.run(y0, 0.0, stable ? -span : span);

    (void)t_hint;
    for (const auto& cr : tracker.section) {
        const double tau = phase_proxy(cr.y[2], cr.y[3], opt_.tau_window + 0.5);
        if (std::isnan(tau)) continue;
        bp.tau = tau;
        bp.H1 = H1_of(cr.y);
        bp.t = cr.t;
        bp.y = cr.y;
        bp.ok = true;
        break;  // primary excursion only
    }
    return bp;
}

BranchPoint ManifoldGap::branch_point(bool stable, double tau) const {
    const auto& samples = stable ? samples_s_ : samples_u_;
    if (samples.empty()) return {};
    // nearest scan sample, then secant refinement in the seed parameter
    const Sample* s0 = &samples.front();
    for (const auto& s : samples)
        if (std::fabs(s.tau - tau) < std::fabs(s0->tau - tau)) s0 = &s;

    double f0 = s0->f, t_hint = s0->t;
    BranchPoint p0 = eval(stable, f0, t_hint);
    if (!p0.ok) return {};
    // the crossing phase advances by ~T per unit of ln(seed)/ln(mu), so a
    // small step in f moves tau nearly linearly
    double f1 = f0 + ((p0.tau < tau) ? 1.0 : -1.0) * 0.02;
    BranchPoint p1 = eval(stable, f1, p0.t);
    if (!p1.ok) return {};
    for (int it = 0; it < 60; it++) {
        if (std::fabs(p1.tau - tau) < 1e-11) break;
        const double denom = p1.tau - p0.tau;
        if (denom == 0.0) break;
        double f2 = f1 - (p1.tau - tau) * (f1 - f0) / denom;
        f2 = std::clamp(f2, std::min(f0, f1) - 0.2, std::max(f0, f1) + 0.2);
        f0 = f1;
        p0 = p1;
        f1 = f2;
        p1 = eval(stable, f1, p0.t);
        if (!p1.ok) return {};
    }
    return p1;
}

double ManifoldGap::gap(double tau) const {
    const auto zs = branch_point(true, tau);
    const auto zu = branch_point(false, tau);
    if (!zs.ok || !zu.ok)
        throw std::runtime_error("ManifoldGap::gap: manifold point not found (escape)");
    return zs.H1 - zu.H1;
}

TransversalityCertificate transversality_check(double sigma, double a, ManifoldOptions opt) {
    TransversalityCertificate cert;
    cert.sigma = sigma;
    cert.a = a;
    ManifoldGap mg(sigma, a, opt);

    const std::vector<double> taus = {-1.5, -1.0, -0.6, -0.3, -0.15, 0.15, 0.3, 0.6, 1.0, 1.5};
    for (double tau : taus) {
        GapSample s;
        s.tau = tau;
        s.gap = mg.gap(tau);
        s.sigma_M = sigma * melnikov(tau, a).value;
        cert.samples.push_back(s);
    }
    // bracket the zero nearest tau = 0
    for (std::size_t i = 0; i + 1 < cert.samples.size(); i++) {
        const auto &L = cert.samples[i], &R = cert.samples[i + 1];
        if ((L.gap <= 0.0) != (R.gap <= 0.0)) {
            if (!cert.sign_change_bracketed ||
                std::fabs(L.tau) + std::fabs(R.tau) < std::fabs(cert.tau_lo) + std::fabs(cert.tau_hi)) {
                cert.tau_lo = L.tau;
                cert.tau_hi = R.tau;
                cert.gap_lo = L.gap;
                cert.gap_hi = R.gap;
                cert.sign_change_bracketed = true;
            }
        }
    }
    // least-squares slope through the inner samples
    double sxx = 0, sxy = 0;
    for (const auto& s : cert.samples)
        if (std::fabs(s.tau) <= 0.61) {
            sxx += s.tau * s.tau;
            sxy += s.tau * s.gap;
        }
    cert.slope0 = sxy / sxx;
    cert.sigma_Mslope = sigma * melnikov_slope0(a);
    // with the upper-loop branch labels the measured H1 difference realizes
    // the first-order identity with a fixed orientation; record it and
    // compare magnitudes against the Melnikov oracle
    cert.orientation = (cert.slope0 * cert.sigma_Mslope >= 0.0) ? 1.0 : -1.0;
    cert.ratio = cert.slope0 / (cert.orientation * cert.sigma_Mslope);
    for (auto& s : cert.samples) {
        s.sigma_M *= cert.orientation;
        cert.max_discrepancy = std::max(cert.max_discrepancy, std::fabs(s.gap - s.sigma_M));
    }
    return cert;
}

} // namespace kirchhoff

#include "kirchhoff/section.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kirchhoff/pendulum.hpp"
#include "kirchhoff/spectral_field.hpp"

namespace kirchhoff {

StateXiEta lift_section_point(const SectionPoint& p) {
    return {p.xi1, p.eta1, 0.0, p.eta2};
}

double section_eta2_from_energy(double xi1, double eta1, double sigma, double calE) {
    const double r1 = (2.0 + 3.0 * sigma) / (6.0 + 18.0 * sigma + 14.0 * sigma * sigma);
    const double r2 = (2.0 + 3.0 * sigma) / (2.0 + 6.0 * sigma + 6.0 * sigma * sigma);
    const double H1 = 0.5 * eta1 * eta1 + (1.0 - std::cos(xi1));
    // calE = r2 H1 + (r1/2) eta2^2 - sigma r1 r2 eta1 eta2
    const double b = sigma * r2 * eta1;
    const double disc = b * b - 2.0 * (r2 * H1 - calE) / r1;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    return b + std::sqrt(disc);
}

PoincareResult poincare_map(const SectionPoint& pt, double sigma, double rtol, double t_max) {
    PoincareResult out;
    XiEtaTracker<double> tracker;
    tracker.sigma = sigma;
    tracker.rtol = rtol;
    tracker.run(lift_section_point(pt), 0.0, t_max, 1);
    if (tracker.section.empty()) return out;
    const auto& cr = tracker.section.front();
    out.point = {cr.y[0], cr.y[1], cr.y[3]};
    out.return_time = cr.t;
    out.ok = true;
    return out;
}

std::vector<long> extract_symbols(const std::vector<double>& times, double T) {
    std::vector<long> sym;
    for (std::size_t i = 0; i + 1 < times.size(); i++)
        sym.push_back(long(std::floor((times[i + 1] - times[i]) / T)));
    return sym;
}

namespace {

template <class Real>
struct ProbeContext {
    PeriodicOrbitT<Real> orb;
    Real d0{}, lnmu{}, rtol{}, offbranch{};
    std::vector<long> m_seq;

    static constexpr double INF_MARK = 1e30;

    std::array<Real, 4> seed(Real f) const {
        const Real s = d0 * rmath::r_exp(f * lnmu);
        std::array<Real, 4> y0 = orb.y0;
        for (int k = 0; k < 4; k++) y0[k] += s * orb.v_unstable[k];
        return y0;
    }

    Real entry_time() const {
        return (rmath::r_log(Real(1) / d0) + Real(8)) * Real(1.2);
    }

    Real span_for(int j) const {
        Real acc = Real(4) * orb.T;
        for (int k = 0; k <= j && k < int(m_seq.size()); k++)
            acc += (Real(m_seq[k]) + Real(2)) * orb.T;
        return acc;
    }

    /// D_j = (t_{j+1} - t_j)/T at seed parameter f; +inf when the needed
    /// crossing is missing or the orbit left the positive-rotation branch
    /// before producing it.
    Real D(Real f, int j) const {
        XiEtaTracker<Real> tr;
        tr.sigma = orb.sigma;
        tr.rtol = rtol;
        tr.run(seed(f), Real(0), entry_time() + span_for(j), long(j + 2));
        if (long(tr.section.size()) < j + 2) return Real(INF_MARK);
        if (tr.section_min_eta2[j + 1] < offbranch) return Real(INF_MARK);
        return (tr.section[j + 1].t - tr.section[j].t) / orb.T;
    }
};

/// Keep (below, above) with D(below) < thr <= D(above); bisect f.
template <class Real>
struct Boundary {
    Real below{}, above{};
};

template <class Real>
Boundary<Real> bisect_boundary(const ProbeContext<Real>& ctx, int j, Real thr,
                               Real f_below, Real f_above, int iters) {
    for (int it = 0; it < iters; it++) {
        const Real mid = (f_below + f_above) / Real(2);
        if (mid == f_below || mid == f_above) break;
        if (ctx.D(mid, j) < thr)
            f_below = mid;
        else
            f_above = mid;
    }
    return {f_below, f_above};
}

template <class Real>
void finalize_itinerary(TargetResult& out, const ProbeContext<Real>& ctx, Real f) {
    const int n = int(ctx.m_seq.size());
    const auto pend = pendulum_orbit(double(ctx.orb.a));

    XiEtaTracker<Real> tr;
    tr.sigma = ctx.orb.sigma;
    tr.rtol = ctx.rtol;
    double sup_dxi = 0.0, sup_deta = 0.0;
    tr.on_sample = [&](Real t, const std::array<Real, 4>& y) {
        const double td = rmath::to_double(t);
        sup_dxi = std::max(sup_dxi,
                           std::fabs(angle_diff(rmath::to_double(y[0]), pend.xi(td))));
        sup_deta = std::max(sup_deta, std::fabs(rmath::to_double(y[1]) - pend.eta(td)));
    };
    tr.run(ctx.seed(f), Real(0), ctx.entry_time() + ctx.span_for(n - 1) + Real(2) * ctx.orb.T,
           long(n + 1));

    Itinerary& it = out.itinerary;
    it.prescribed = ctx.m_seq;
    it.sup_dev_xi1 = sup_dxi;
    it.sup_dev_eta1 = sup_deta;
    it.min_eta2 = rmath::to_double(tr.min_eta2);
    it.max_eta2 = rmath::to_double(tr.max_eta2);
    if (tr.section.empty()) return;

    const Real shift = tr.section.front().t;
    for (const auto& cr : tr.section) it.t_section.push_back(rmath::to_double(cr.t - shift));
    it.realized = extract_symbols(it.t_section, out.T);
    for (std::size_t i = 0; i + 1 < it.t_section.size(); i++) {
        const double D = (it.t_section[i + 1] - it.t_section[i]) / out.T;
        it.theta.push_back(D - std::floor(D));
    }
    for (const auto& cr : tr.eta2_up) it.t_up.push_back(rmath::to_double(cr.t - shift));
    for (const auto& cr : tr.eta2_down) it.t_down.push_back(rmath::to_double(cr.t - shift));
    for (const auto& v : tr.eta2_max_between) it.eta2_max_I.push_back(rmath::to_double(v));
    for (const auto& v : tr.eta2_min_between) it.eta2_min_E.push_back(rmath::to_double(v));

    const auto& s0 = tr.section.front();
    out.start = {rmath::to_double(s0.y[0]), rmath::to_double(s0.y[1]),
                 rmath::to_double(s0.y[3])};
    // experiment start: last eta2 = 1 upward crossing before the first hit
    const typename XiEtaTracker<Real>::Crossing* up = nullptr;
    for (const auto& cr : tr.eta2_up)
        if (cr.t < s0.t) up = &cr;
    if (up) {
        for (int k = 0; k < 4; k++) {
            out.start_state[k] = rmath::to_double(up->y[k]);
            out.start_state_str[k] = rmath::to_string(up->y[k]);
        }
        out.t_first_section = rmath::to_double(s0.t - up->t);
    }

    int prefix = 0;
    while (prefix < int(it.realized.size()) && prefix < n &&
           it.realized[prefix] == ctx.m_seq[prefix])
        prefix++;
    out.achieved_prefix = prefix;
    out.success = (prefix == n);
}

} // namespace

M0Result measure_M0(double sigma, double a, int n_scan, double rtol) {
    M0Result out;
    out.log_sigma_inv = std::log(1.0 / sigma);
    ProbeContext<double> ctx;
    ctx.orb = shoot_periodic<double>(sigma, a, rtol);
    ctx.d0 = 1e-8;
    ctx.lnmu = std::log(std::fabs(ctx.orb.mult_unstable));
    ctx.rtol = rtol;
    ctx.offbranch = -0.6;
    ctx.m_seq = {40};
    long best = std::numeric_limits<long>::max();
    for (int i = 0; i < n_scan; i++) {
        const double f = double(i) / (n_scan - 1);
        const double d = ctx.D(f, 0);
        if (d >= 1e29) continue;
        const long sym = long(std::floor(d));
        out.observed.push_back(sym);
        best = std::min(best, sym);
    }
    out.M0 = int(std::max(0L, best == std::numeric_limits<long>::max() ? 0L : best));
    return out;
}

TargetResult target_itinerary(const std::vector<long>& m_seq, double sigma, double a,
                              const TargetOptions& opts) {
    using R = quad;
    using namespace rmath;
    TargetResult out;
    out.sigma = sigma;
    out.a = a;
    out.itinerary.prescribed = m_seq;

    ProbeContext<R> ctx;
    ctx.orb = shoot_periodic<R>(R(sigma), a, R(opts.rtol_shoot));
    ctx.d0 = R(opts.d0);
    ctx.lnmu = r_log(r_abs(ctx.orb.mult_unstable));
    ctx.rtol = R(opts.rtol_flow);
    ctx.offbranch = R(opts.offbranch_eta2);
    ctx.m_seq = m_seq;
    out.T = double(ctx.orb.T);
    out.M0 = measure_M0(sigma, a).M0;

    R fl = R(0), fh = R(1);
    for (int stage = 0; stage < int(m_seq.size()); stage++) {
        const R tgt_lo = R(double(m_seq[stage])) + R(opts.theta_lo);
        const R tgt_hi = R(double(m_seq[stage])) + R(opts.theta_hi);

        R zl = fl, zh = fh;
        bool found = false;
        R f_below{}, f_above{};
        for (int zoom = 0; zoom < opts.zoom_depth && !found; zoom++) {
            const int K = opts.scan_points;
            std::vector<R> fs(K), ds(K);
            for (int i = 0; i < K; i++) {
                fs[i] = zl + (zh - zl) * R(i) / R(K - 1);
                ds[i] = ctx.D(fs[i], stage);
            }
            for (int i = 0; i + 1 < K; i++) {
                const bool lo_i = ds[i] < tgt_lo, lo_n = ds[i + 1] < tgt_lo;
                if (lo_i != lo_n) {
                    f_below = lo_i ? fs[i] : fs[i + 1];
                    f_above = lo_i ? fs[i + 1] : fs[i];
                    found = true;
                    break;
                }
            }
            if (found) break;
            int ibest = -1;
            R dbest = R(-1);
            for (int i = 0; i < K; i++)
                if (ds[i] < R(ProbeContext<R>::INF_MARK) && ds[i] > dbest) {
                    dbest = ds[i];
                    ibest = i;
                }
            if (ibest < 0) {
                found = false;
                break;
            }
            const int il = std::max(0, ibest - 1), ih = std::min(K - 1, ibest + 1);
            zl = fs[il];
            zh = fs[ih];
        }
        if (!found) {
            out.message = "no symbol window found at stage " + std::to_string(stage);
            finalize_itinerary<R>(out, ctx, (fl + fh) / R(2));
            out.achieved_prefix = std::min(out.achieved_prefix, stage);
            out.success = false;
            return out;
        }
        // lower boundary of { f : D_stage(f) >= m + theta_lo }
        const auto b1 = bisect_boundary<R>(ctx, stage, tgt_lo, f_below, f_above,
                                           opts.bisect_iters);
        // bracket the upper threshold: march from the found boundary toward
        // the singular flank until D >= m + theta_hi (clamped to the zoom box)
        R fa2 = f_above, prev = b1.above;
        const R dir = (f_above >= f_below) ? R(1) : R(-1);
        R stepw = r_abs(f_above - b1.above);
        if (!(stepw > R(0))) stepw = r_abs(fh - fl) * R(1e-6);
        bool have_hi = !(ctx.D(fa2, stage) < tgt_hi);
        for (int guard = 0; guard < 80 && !have_hi; guard++) {
            prev = fa2;
            fa2 = fa2 + dir * stepw;
            stepw *= R(2);
            if (dir > 0 ? fa2 > fh : fa2 < fl) {
                fa2 = dir > 0 ? fh : fl;
                have_hi = !(ctx.D(fa2, stage) < tgt_hi);
                break;
            }
            have_hi = !(ctx.D(fa2, stage) < tgt_hi);
        }
        if (!have_hi) {
            out.message = "upper symbol boundary not bracketed at stage " +
                          std::to_string(stage);
            finalize_itinerary<R>(out, ctx, b1.above);
            out.achieved_prefix = std::min(out.achieved_prefix, stage);
            out.success = false;
            return out;
        }
        const auto b2 = bisect_boundary<R>(ctx, stage, tgt_hi, prev, fa2,
                                           opts.bisect_iters);
        fl = r_min(b1.above, b2.below);
        fh = r_max(b1.above, b2.below);
        out.bracket_width = double(fh - fl);
        if (!(fh > fl)) {
            out.message = "bracket collapsed at stage " + std::to_string(stage);
            finalize_itinerary<R>(out, ctx, fl);
            out.success = false;
            return out;
        }
    }
    finalize_itinerary<R>(out, ctx, (fl + fh) / R(2));
    if (!out.success && out.message.empty())
        out.message = "verification run realized a shorter prefix";
    return out;
}

} // namespace kirchhoff

#include "kirchhoff/harness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

#include "kirchhoff/melnikov.hpp"
#include "kirchhoff/xieta_flow.hpp"

namespace kirchhoff {

namespace {

/// One moving-average stage over a fixed sample count.
class BoxcarStage {
public:
    explicit BoxcarStage(int window) : window_(window) {}
    bool push(double x) {
        buf_.push_back(x);
        sum_ += x;
        if (int(buf_.size()) > window_) {
            sum_ -= buf_.front();
            buf_.pop_front();
        }
        if (++count_ == refresh_) {  // kill running-sum roundoff on long runs
            count_ = 0;
            sum_ = 0;
            for (double v : buf_) sum_ += v;
        }
        return int(buf_.size()) == window_;
    }
    double mean() const { return sum_ / double(buf_.size()); }

private:
    int window_;
    std::deque<double> buf_;
    double sum_ = 0;
    long count_ = 0;
    static constexpr long refresh_ = 1 << 16;
};

/// Cascade of moving averages (sinc^stages response). A single four-period
/// average leaves the slowest fast beat (alpha3 - alpha2 scale) attenuated
/// by only ~25x, which stays above the eps^3 resonant signal at desk scale;
/// the cascade pushes it far below.
class Boxcar {
public:
    Boxcar(int window, int decimate, int stages = 3)
        : decimate_(decimate), stages_(stages, BoxcarStage(window)) {}
    bool push(double x) {
        for (auto& st : stages_) {
            if (!st.push(x)) return false;
            x = st.mean();
        }
        out_ = x;
        count_++;
        return (count_ % decimate_) == 0;
    }
    double mean() const { return out_; }

private:
    int decimate_;
    std::vector<BoxcarStage> stages_;
    double out_ = 0;
    long count_ = 0;
};

struct PhaseUnwrapper {
    bool started = false;
    double prev = 0, acc = 0;
    double push(double wrapped) {
        if (!started) {
            started = true;
            prev = wrapped;
            acc = wrapped;
            return acc;
        }
        acc += angle_diff(wrapped, prev);
        prev = wrapped;
        return acc;
    }
};

/// Dense reference for the rescaled-chart orbit: linear interpolation on a
/// fine uniform grid (double shadow of the targeted orbit).
struct XiEtaRef {
    double tau0 = 0, dtau = 0;
    std::vector<StateXiEta> y;

    StateXiEta at(double tau) const {
        const double s = (tau - tau0) / dtau;
        const long i = std::clamp(long(std::floor(s)), 0L, long(y.size()) - 2);
        const double w = s - double(i);
        StateXiEta out;
        for (int k = 0; k < 4; k++) out[k] = (1.0 - w) * y[i][k] + w * y[i + 1][k];
        return out;
    }
};

XiEtaRef make_xieta_ref(const StateXiEta& y0, double sigma, double tau_end, double rtol) {
    XiEtaRef ref;
    ref.tau0 = 0.0;
    ref.dtau = 6.402 / 512.0;
    XiEtaRhs<double> rhs{sigma, 1.0};
    typename Dop853<double, 4, XiEtaRhs<double>>::Options opt;
    opt.rtol = rtol;
    opt.atol = rtol;
    opt.dense = true;
    Dop853<double, 4, XiEtaRhs<double>> solver(rhs, 0.0, y0, opt);
    double t_next = 0.0;
    ref.y.push_back(y0);
    t_next += ref.dtau;
    while (solver.t() < tau_end) {
        if (!solver.step(tau_end)) break;
        while (t_next <= solver.t()) {
            ref.y.push_back(solver.dense(t_next));
            t_next += ref.dtau;
        }
    }
    ref.y.push_back(solver.y());
    return ref;
}

} // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); i++) {
        const double lx = std::log(x[i]), ly = std::log(std::fabs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

OscillationReport detect_oscillations(const std::vector<double>& t,
                                      const std::vector<double>& calN,
                                      const SynthesisPlan& plan, int prescribed_count,
                                      double delta_frac, bool auto_center) {
    OscillationReport rep;
    rep.prescribed_count = prescribed_count;
    rep.auto_centered = auto_center;
    const double eps = plan.eps;
    if (auto_center) {
        // robust center/amplitude from percentiles of the trimmed series
        std::vector<double> v(calN);
        std::sort(v.begin(), v.end());
        const double lo = v[std::size_t(0.02 * (v.size() - 1))];
        const double hi = v[std::size_t(0.98 * (v.size() - 1))];
        rep.A_eps = 0.5 * (hi + lo);
        rep.B_eps = 0.5 * (hi - lo);
    } else {
        const double N_hi =
            std::sqrt(2.0 * (eps * eps * plan.c1 + 2.0 * eps * eps * eps * plan.r1));
        const double N_lo = std::sqrt(2.0 * eps * eps * plan.c1);
        rep.A_eps = 0.5 * (N_hi + N_lo);
        rep.B_eps = 0.5 * (N_hi - N_lo);
    }
    rep.delta_eps = delta_frac * rep.B_eps;
    // template mode switches on the band delta/2; the auto-centered mode
    // uses B/3 so that desk-scale filter residue cannot chatter
    const double band = auto_center ? rep.B_eps / 3.0 : rep.delta_eps / 2.0;

    // hysteresis state machine; intervals recorded only when complete
    enum class Phase { Unknown, Up, Down };
    Phase phase = Phase::Unknown;
    double ext = 0, t_enter = 0;
    bool enter_known = false;
    for (std::size_t i = 0; i < t.size(); i++) {
        const double x = calN[i] - rep.A_eps;
        const bool up = x > band;
        const bool down = x < -band;
        if (phase == Phase::Unknown) {
            if (up || down) {
                phase = up ? Phase::Up : Phase::Down;
                t_enter = t[i];
                ext = x;
                enter_known = true;
            }
            continue;
        }
        if (phase == Phase::Up) {
            ext = std::max(ext, x);
            rep.band_ok &= (x >= -rep.delta_eps) && (x <= rep.B_eps + rep.delta_eps);
            if (down) {
                rep.I_start.push_back(t_enter);
                rep.I_end.push_back(t[i]);
                rep.I_max_dev.push_back(ext);
                phase = Phase::Down;
                t_enter = t[i];
                ext = x;
            }
        } else {
            ext = std::min(ext, x);
            rep.band_ok &= (x >= -rep.B_eps - rep.delta_eps) && (x <= rep.delta_eps);
            if (up) {
                rep.E_start.push_back(t_enter);
                rep.E_end.push_back(t[i]);
                rep.E_min_dev.push_back(ext);
                phase = Phase::Up;
                t_enter = t[i];
                ext = x;
            }
        }
    }
    (void)enter_known;

    // merge chatter: a genuine oscillation phase lasts a slow-time unit or
    // more; drop interval pairs shorter than a third of 1/B
    const double min_dur = 0.33 / plan.consts.B;
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t j = 0; j + 1 < rep.I_start.size() && j < rep.E_start.size(); j++) {
            if (rep.E_end[j] - rep.E_start[j] < min_dur) {
                // absorb E_j and I_{j+1} into I_j
                rep.I_end[j] = rep.I_end[j + 1];
                rep.I_max_dev[j] = std::max(rep.I_max_dev[j], rep.I_max_dev[j + 1]);
                rep.I_start.erase(rep.I_start.begin() + j + 1);
                rep.I_end.erase(rep.I_end.begin() + j + 1);
                rep.I_max_dev.erase(rep.I_max_dev.begin() + j + 1);
                rep.E_start.erase(rep.E_start.begin() + j);
                rep.E_end.erase(rep.E_end.begin() + j);
                rep.E_min_dev.erase(rep.E_min_dev.begin() + j);
                merged = true;
                break;
            }
        }
        if (merged) continue;
        for (std::size_t j = 0; j + 1 < rep.E_start.size() && j + 1 < rep.I_start.size(); j++) {
            if (rep.I_start[j + 1] < rep.E_end[j]) continue;
            if (rep.I_end[j + 1] - rep.I_start[j + 1] < min_dur) {
                rep.E_end[j] = rep.E_end[j + 1];
                rep.E_min_dev[j] = std::min(rep.E_min_dev[j], rep.E_min_dev[j + 1]);
                rep.E_start.erase(rep.E_start.begin() + j + 1);
                rep.E_end.erase(rep.E_end.begin() + j + 1);
                rep.E_min_dev.erase(rep.E_min_dev.begin() + j + 1);
                rep.I_start.erase(rep.I_start.begin() + j + 1);
                rep.I_end.erase(rep.I_end.begin() + j + 1);
                rep.I_max_dev.erase(rep.I_max_dev.begin() + j + 1);
                merged = true;
                break;
            }
        }
    }
    rep.detected_count = int(rep.I_start.size());
    for (double m : rep.I_max_dev) rep.extrema_ok &= (m >= rep.B_eps - rep.delta_eps);
    for (double m : rep.E_min_dev) rep.extrema_ok &= (m <= -rep.B_eps + rep.delta_eps);
    for (std::size_t j = 0; j + 1 < rep.I_start.size() && j < rep.E_start.size(); j++)
        rep.alternating &= rep.I_end[j] <= rep.E_start[j] + 1e-9 &&
                           rep.E_end[j] <= rep.I_start[j + 1] + 1e-9;
    rep.pass = rep.detected_count >= prescribed_count && rep.alternating && rep.extrema_ok;
    return rep;
}

Experiment run_experiment(const TripletConfig& cfg, double eps,
                          const std::vector<long>& m_seq, const ExperimentOptions& opts) {
    Experiment ex;
    ex.cfg = cfg;
    ex.eps = eps;
    ex.m_seq = m_seq;
    ex.plan = make_plan(cfg, eps);
    const double a = opts.a > 0.0 ? opts.a : find_a0();

    ex.target = target_itinerary(m_seq, cfg.sigma, a);
    ex.targeting_ok = ex.target.success;

    const auto& k = ex.plan.consts;
    ex.B = k.B;
    // rescaled horizon: through the last prescribed return plus margin
    double tau_end = ex.target.t_first_section + opts.tau_margin * ex.target.T;
    for (long m : m_seq) tau_end += (double(m) + 1.0) * ex.target.T;

    const auto ref = make_xieta_ref(ex.target.start_state, cfg.sigma, tau_end, 1e-13);
    ex.t_end = tau_end / k.B;

    // initial data from the state at tau = 0
    const State6 s0 = compose_point(ex.target.start_state, k);
    ex.spec = build_datum_spec(ex.plan, {s0[0], s0[1], s0[2], s0[3]}, wrap_2pi(s0[4]),
                               wrap_2pi(s0[5]));
    const auto u0 = build_u0(ex.spec, cfg);
    ex.datum_report = verify_u0(u0, ex.plan, ex.spec);

    // effective reference trajectory (slow clock) via the 6-equation flow
    {
        const auto eff = integrate6(s0, k, ex.t_end, 1e-12, ex.t_end / 2000.0);
        ex.traj_effective = eff.traj;
    }

    if (opts.skip_exact) return ex;

    const auto g = conjugate_pair_of(u0);
    const auto qp = phi2_map(u0, g);
    const auto uv = phi1_map(qp.first, qp.second);
    PhysicalState init{uv.first, uv.second, 0.0};
    ex.energy0 = kirchhoff_energy(init, cfg.measure_factor());

    const double fast_period = 2.0 * std::numbers::pi / cfg.alpha(3);
    const double dt_sample = fast_period / opts.samples_per_fast_period;
    const double window = 4.0 * 2.0 * std::numbers::pi / cfg.alpha(0);
    const int n_window = std::max(4, int(std::lround(window / dt_sample)));
    const int decim = std::max(1, n_window / 8);
    ex.series.window = 3.0 * n_window * dt_sample;  // cascade support

    // the slow parts of Z rotate at the resonant phase rates only, so the
    // complex components are filtered and the modulus/argument taken after
    Boxcar fS1(n_window, decim), fS2(n_window, decim), fS3(n_window, decim),
        fS4(n_window, decim), fN(n_window, decim), fZ1r(n_window, decim),
        fZ1i(n_window, decim), fZ2r(n_window, decim), fZ2i(n_window, decim);
    PhaseUnwrapper uw1, uw2;
    const int raw_decim = std::max(1, n_window / 2);
    long count = 0;
    double max_drift = 0, max_r1 = 0, max_r2 = 0;
    const double mf = cfg.measure_factor();

    auto on_sample = [&](double t, const PhysicalState& st) {
        const auto qp2 = phi1_inverse(st.u, st.v);
        const auto fg = phi2_inverse(qp2.first, qp2.second);
        const auto obs = observables(fg.first);
        const double E = kirchhoff_energy(st, mf);
        max_drift = std::max(max_drift, std::fabs(E - ex.energy0) / std::fabs(ex.energy0));

        fS1.push(obs.S[0]);
        fS2.push(obs.S[1]);
        fS3.push(obs.S[2]);
        fZ1r.push(obs.Z123.real());
        fZ1i.push(obs.Z123.imag());
        fZ2r.push(obs.Z234.real());
        fZ2i.push(obs.Z234.imag());
        const bool e1 = fS4.push(obs.S[3]);
        const bool e2 = fN.push(obs.calN);
        if (e1 && e2) {
            const double tc = t - ex.series.window / 2.0;  // cascade group delay
            const cplx Z1(fZ1r.mean(), fZ1i.mean()), Z2(fZ2r.mean(), fZ2i.mean());
            ex.series.t.push_back(tc);
            ex.series.S_f.push_back({fS1.mean(), fS2.mean(), fS3.mean(), fS4.mean()});
            ex.series.calN_f.push_back(fN.mean());
            ex.series.rho123_f.push_back(std::abs(Z1));
            ex.series.rho234_f.push_back(std::abs(Z2));
            ex.series.phi123.push_back(uw1.push(wrap_2pi(std::arg(Z1))));
            ex.series.phi234.push_back(uw2.push(wrap_2pi(std::arg(Z2))));
            max_r1 = std::max(max_r1, std::fabs(std::abs(Z1) - k.rho123) / k.rho123);
            max_r2 = std::max(max_r2, std::fabs(std::abs(Z2) - k.rho234) / k.rho234);
        }
        if ((count++ % raw_decim) == 0) {
            ex.series.t_raw.push_back(t);
            ex.series.calN_raw.push_back(obs.calN);
            ex.series.energy_raw.push_back(E);
        }
    };

    KirchhoffParams prm;
    prm.rtol = opts.rtol_exact;
    prm.atol = opts.atol_exact;
    auto traj = integrate_kirchhoff(init, cfg, ex.t_end, prm, dt_sample, on_sample);
    ex.stats = traj.stats;
    ex.energy_drift = max_drift;
    ex.rho123_excursion = max_r1;
    ex.rho234_excursion = max_r2;
    ex.polar_ok = max_r1 < 0.5 && max_r2 < 0.5;

    // Gronwall diagnostic against the composed effective reference
    ex.gronwall.threshold_paper = std::pow(eps, 0.75);
    ex.gronwall.gate = 0.2 * 2.0 * ex.plan.a2;
    const double e3 = eps * eps * eps;
    PhaseUnwrapper uwe1, uwe2;
    double phase_off1 = 0, phase_off2 = 0;
    for (std::size_t i = 0; i < ex.series.t.size(); i++) {
        const double tau = ex.series.t[i] * k.B;
        const State6 se = compose_point(ref.at(tau), k);
        std::array<double, 6> psi{};
        for (int n = 0; n < 4; n++) psi[n] = (ex.series.S_f[i][n] - se[n]) / e3;
        const double pe1 = uwe1.push(wrap_2pi(se[4]));
        const double pe2 = uwe2.push(wrap_2pi(se[5]));
        if (i == 0) {
            phase_off1 = ex.series.phi123[0] - pe1;
            phase_off2 = ex.series.phi234[0] - pe2;
        }
        psi[4] = ex.series.phi123[i] - pe1 - phase_off1;
        psi[5] = ex.series.phi234[i] - pe2 - phase_off2;
        double norm = 0;
        for (double v : psi) norm += v * v;
        ex.gronwall.sup_psi = std::max(ex.gronwall.sup_psi, std::sqrt(norm));
        for (int n = 0; n < 4; n++)
            ex.gronwall.filtered_S_gap_max =
                std::max(ex.gronwall.filtered_S_gap_max, std::fabs(psi[n]));
        ex.gronwall.t.push_back(ex.series.t[i]);
        ex.gronwall.psi.push_back(psi);
    }
    // detrended channels: subtract each S-gap's time mean (the quasi-static
    // observable offset of the skipped near-identity maps)
    if (!ex.gronwall.psi.empty()) {
        for (int n = 0; n < 4; n++) {
            double m = 0;
            for (const auto& p : ex.gronwall.psi) m += p[n];
            ex.gronwall.S_gap_mean[n] = m / double(ex.gronwall.psi.size());
        }
        for (const auto& p : ex.gronwall.psi)
            for (int n = 0; n < 4; n++)
                ex.gronwall.detrended_S_gap_max =
                    std::max(ex.gronwall.detrended_S_gap_max,
                             std::fabs(p[n] - ex.gronwall.S_gap_mean[n]));
    }
    ex.gronwall.pass_gate = ex.gronwall.filtered_S_gap_max <= ex.gronwall.gate;
    ex.gronwall.pass_gate_detrended = ex.gronwall.detrended_S_gap_max <= ex.gronwall.gate;

    ex.oscillation = detect_oscillations(ex.series.t, ex.series.calN_f, ex.plan,
                                         int(m_seq.size()), opts.delta_frac, false);
    ex.oscillation_auto = detect_oscillations(ex.series.t, ex.series.calN_f, ex.plan,
                                              int(m_seq.size()), opts.delta_frac, true);
    return ex;
}

ScalingResult scaling_study(const TripletConfig& cfg, const std::vector<double>& eps_list,
                            long m0, const ExperimentOptions& opts) {
    ScalingResult out;
    const double a = opts.a > 0.0 ? opts.a : find_a0();
    if (m0 < 0) m0 = measure_M0(cfg.sigma, a).M0 + 1;

    // one targeted single-symbol orbit reused across all eps
    const auto target = target_itinerary({m0}, cfg.sigma, a);
    const double T = target.T;
    const double tau_end = target.t_first_section + (double(m0) + 1.8) * T;
    const auto ref = make_xieta_ref(target.start_state, cfg.sigma, tau_end, 1e-13);

    // closed-form effective amplitudes: max - min of eta2 scales the S4
    // oscillation by a2 eps^3 exactly
    {
        std::vector<double> ampl;
        double e2min = 1e300, e2max = -1e300;
        for (const auto& y : ref.y) {
            e2min = std::min(e2min, y[3]);
            e2max = std::max(e2max, y[3]);
        }
        for (double eps : eps_list) {
            const auto plan = make_plan(cfg, eps);
            ampl.push_back(plan.a2 * eps * eps * eps * (e2max - e2min));
        }
        out.exp_S_effective = loglog_slope(eps_list, ampl);
    }

    for (double eps : eps_list) {
        Experiment ex;
        ex.cfg = cfg;
        ex.eps = eps;
        ex.plan = make_plan(cfg, eps);
        const auto& k = ex.plan.consts;
        const State6 s0 = compose_point(target.start_state, k);
        ex.spec = build_datum_spec(ex.plan, {s0[0], s0[1], s0[2], s0[3]}, wrap_2pi(s0[4]),
                                   wrap_2pi(s0[5]));
        const auto u0 = build_u0(ex.spec, cfg);
        const auto g = conjugate_pair_of(u0);
        const auto qp = phi2_map(u0, g);
        const auto uv = phi1_map(qp.first, qp.second);
        PhysicalState init{uv.first, uv.second, 0.0};

        const double t_end = tau_end / k.B;
        const double fast_period = 2.0 * std::numbers::pi / cfg.alpha(3);
        const double dt_sample = fast_period / opts.samples_per_fast_period;
        const double window = 4.0 * 2.0 * std::numbers::pi / cfg.alpha(0);
        const int n_window = std::max(4, int(std::lround(window / dt_sample)));
        const int decim = std::max(1, n_window / 8);

        Boxcar fS4(n_window, decim), fN(n_window, decim);
        std::vector<double> ts, S4s, Ns;
        auto on_sample = [&](double t, const PhysicalState& st) {
            const auto qp2 = phi1_inverse(st.u, st.v);
            const auto fg = phi2_inverse(qp2.first, qp2.second);
            const auto obs = observables(fg.first);
            fN.push(obs.calN);
            if (fS4.push(obs.S[3])) {
                ts.push_back(t - 3.0 * n_window * dt_sample / 2.0);
                S4s.push_back(fS4.mean());
                Ns.push_back(fN.mean());
            }
        };
        KirchhoffParams prm;
        prm.rtol = opts.rtol_exact;
        prm.atol = opts.atol_exact;
        integrate_kirchhoff(init, cfg, t_end, prm, dt_sample, on_sample);

        double s4min = 1e300, s4max = -1e300, nmin = 1e300, nmax = -1e300;
        for (double v : S4s) {
            s4min = std::min(s4min, v);
            s4max = std::max(s4max, v);
        }
        for (double v : Ns) {
            nmin = std::min(nmin, v);
            nmax = std::max(nmax, v);
        }
        // period from upward crossings of the S4 midline
        const double mid = eps * eps * ex.plan.s4 + eps * eps * eps * ex.plan.a2;
        std::vector<double> ups;
        for (std::size_t i = 0; i + 1 < S4s.size(); i++)
            if (S4s[i] <= mid && S4s[i + 1] > mid) {
                const double w = (mid - S4s[i]) / (S4s[i + 1] - S4s[i]);
                ups.push_back(ts[i] + w * (ts[i + 1] - ts[i]));
            }
        out.eps.push_back(eps);
        out.amp_S4.push_back(s4max - s4min);
        out.amp_calN.push_back(nmax - nmin);
        out.period.push_back(ups.size() >= 2 ? ups[1] - ups[0] : 0.0);
    }
    out.exp_S = loglog_slope(out.eps, out.amp_S4);
    out.exp_calN = loglog_slope(out.eps, out.amp_calN);
    out.exp_period = loglog_slope(out.eps, out.period);
    return out;
}

CalibrationResult calibrate_measure_convention(const TripletConfig& cfg, double eps) {
    CalibrationResult out;
    const auto plan = make_plan(cfg, eps);
    const auto& k = plan.consts;
    const double e2 = eps * eps;
    // constant-part state with a quarter-turn drive on the second triplet:
    // there d(phi234)/dt vanishes, so the drive is frozen during the fit
    const std::array<double, 4> S0 = {e2 * plan.s1, e2 * plan.s2, e2 * plan.s3, e2 * plan.s4};
    const double phi123_0 = 0.0, phi234_0 = 0.5 * std::numbers::pi;
    const auto spec = build_datum_spec(plan, S0, phi123_0, phi234_0);

    const double window = 4.0 * 2.0 * std::numbers::pi / cfg.alpha(0);
    const double t_skip = 3.0 * window;          // let the map transient settle
    const double t_fit = 0.35 / k.B;             // tau-span 0.35: drive still frozen
    const double t_end = t_skip + t_fit;

    // reference slope from the truncated effective flow over the same span
    {
        const State6 s6{S0[0], S0[1], S0[2], S0[3], phi123_0, phi234_0};
        const auto eff = integrate6(s6, k, t_end, 1e-12, t_end / 400.0);
        const auto& tr = eff.traj;
        double s1 = 0, t1 = 0, s2 = 0, t2 = 0;
        for (std::size_t i = 0; i < tr.size(); i++) {
            if (tr.t[i] <= t_skip) {
                t1 = tr.t[i];
                s1 = tr.row(i)[3];
            }
            t2 = tr.t[i];
            s2 = tr.row(i)[3];
        }
        out.slope_predicted = (s2 - s1) / (t2 - t1);
    }

    for (int conv = 0; conv < 2; conv++) {
        TripletConfig c2 = cfg;
        c2.measure = conv == 0 ? MeasureConvention::Normalized
                               : MeasureConvention::TwoPiWeighted;
        const auto u0 = build_u0(spec, c2);
        const auto g = conjugate_pair_of(u0);
        const auto qp = phi2_map(u0, g);
        const auto uv = phi1_map(qp.first, qp.second);
        PhysicalState init{uv.first, uv.second, 0.0};

        const double fast_period = 2.0 * std::numbers::pi / c2.alpha(3);
        const double dt_sample = fast_period / 6.0;
        const int n_window = std::max(4, int(std::lround(window / dt_sample)));
        Boxcar fS4(n_window, std::max(1, n_window / 8));
        std::vector<double> ts, S4s;
        auto on_sample = [&](double t, const PhysicalState& st) {
            const auto qp2 = phi1_inverse(st.u, st.v);
            const auto fg = phi2_inverse(qp2.first, qp2.second);
            const auto obs = observables(fg.first);
            if (fS4.push(obs.S[3])) {
                const double tc = t - 3.0 * n_window * dt_sample / 2.0;
                if (tc >= t_skip) {
                    ts.push_back(tc);
                    S4s.push_back(fS4.mean());
                }
            }
        };
        KirchhoffParams prm;
        prm.rtol = 1e-12;
        prm.atol = 1e-15;
        integrate_kirchhoff(init, c2, t_end, prm, dt_sample, on_sample);

        // least-squares slope of the filtered S4 series on the fit window
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = double(ts.size());
        for (std::size_t i = 0; i < ts.size(); i++) {
            sx += ts[i];
            sy += S4s[i];
            sxx += ts[i] * ts[i];
            sxy += ts[i] * S4s[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double gap = std::fabs(slope - out.slope_predicted) /
                           std::fabs(out.slope_predicted);
        if (conv == 0) {
            out.slope_measured_normalized = slope;
            out.gap_normalized = gap;
        } else {
            out.slope_measured_twopi = slope;
            out.gap_twopi = gap;
        }
    }
    out.selected = out.gap_normalized <= out.gap_twopi ? MeasureConvention::Normalized
                                                       : MeasureConvention::TwoPiWeighted;
    out.decisive = out.gap_normalized < 0.5 * out.gap_twopi &&
                   out.slope_measured_normalized * out.slope_predicted > 0.0;
    out.within_bound = out.gap_normalized <= 0.3;
    return out;
}

} // namespace kirchhoff

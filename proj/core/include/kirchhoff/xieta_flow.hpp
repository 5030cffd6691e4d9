#pragma once
#include <functional>
#include <vector>

#include "kirchhoff/cascade.hpp"
#include "kirchhoff/ode.hpp"
#include "kirchhoff/real.hpp"

namespace kirchhoff {

/// Coupled-pendulum vector field in the sigma parametrization (lambda = 1),
/// with the optional 4x4 variational block appended row-major.
template <class Real>
struct XiEtaRhs {
    Real sigma{}, lambda{1};
    void operator()(Real, const std::array<Real, 4>& y, std::array<Real, 4>& dy) const {
        rhs_xieta<Real>(y, sigma, lambda, dy);
    }
};

template <class Real>
struct XiEtaVarRhs {
    Real sigma{}, lambda{1};
    void operator()(Real, const std::array<Real, 20>& y, std::array<Real, 20>& dy) const {
        std::array<Real, 4> s{y[0], y[1], y[2], y[3]}, ds;
        rhs_xieta<Real>(s, sigma, lambda, ds);
        for (int i = 0; i < 4; i++) dy[i] = ds[i];
        const Real mu1 = sigma * (Real(2) + Real(3) * sigma) /
                         (Real(6) + Real(18) * sigma + Real(14) * sigma * sigma);
        const Real mu2 = sigma * (Real(2) + Real(3) * sigma) /
                         (Real(2) + Real(6) * sigma + Real(6) * sigma * sigma);
        const Real c1 = rmath::r_cos(y[0]), c2 = rmath::r_cos(y[2]);
        // J = [[0,1,0,-mu1],[-cos xi1,0,0,0],[0,-mu2,0,1],[0,0,-lambda cos xi2,0]]
        const Real* X = y.data() + 4;
        Real* dX = dy.data() + 4;
        for (int j = 0; j < 4; j++) {
            const Real x0 = X[0 * 4 + j], x1 = X[1 * 4 + j], x2 = X[2 * 4 + j], x3 = X[3 * 4 + j];
            dX[0 * 4 + j] = x1 - mu1 * x3;
            dX[1 * 4 + j] = -c1 * x0;
            dX[2 * 4 + j] = -mu2 * x1 + x3;
            dX[3 * 4 + j] = -lambda * c2 * x2;
        }
    }
};

/// Flow map of the coupled-pendulum system.
template <class Real>
std::array<Real, 4> xieta_flow(const std::array<Real, 4>& y0, Real sigma, Real lambda,
                               Real t1, Real rtol) {
    XiEtaRhs<Real> rhs{sigma, lambda};
    typename Dop853<Real, 4, XiEtaRhs<Real>>::Options opt;
    opt.rtol = rtol;
    opt.atol = rtol;
    Dop853<Real, 4, XiEtaRhs<Real>> solver(rhs, Real(0), y0, opt);
    while ((t1 >= 0 && solver.t() < t1) || (t1 < 0 && solver.t() > t1))
        if (!solver.step(t1)) break;
    return solver.y();
}

/// Flow map together with the 4x4 tangent map (row-major).
template <class Real>
void xieta_flow_var(std::array<Real, 4>& y, std::array<Real, 16>& M, Real sigma,
                    Real lambda, Real t1, Real rtol) {
    XiEtaVarRhs<Real> rhs{sigma, lambda};
    std::array<Real, 20> Y{};
    for (int i = 0; i < 4; i++) Y[i] = y[i];
    for (int i = 0; i < 4; i++) Y[4 + 5 * i] = Real(1);
    typename Dop853<Real, 20, XiEtaVarRhs<Real>>::Options opt;
    opt.rtol = rtol;
    opt.atol = rtol;
    Dop853<Real, 20, XiEtaVarRhs<Real>> solver(rhs, Real(0), Y, opt);
    while ((t1 >= 0 && solver.t() < t1) || (t1 < 0 && solver.t() > t1))
        if (!solver.step(t1)) break;
    for (int i = 0; i < 4; i++) y[i] = solver.y()[i];
    for (int i = 0; i < 16; i++) M[i] = solver.y()[4 + i];
}

/// Integrates the coupled-pendulum flow recording
///   - crossings of {angle component == 0 mod 2pi, conjugate momentum > 0}
///     (angle_index 2: the Poincare section; angle_index 0: the section
///     used to measure the splitting),
///   - crossings of eta2 through 1 (upward/downward), and
///   - extrema of eta2 between those crossings.
/// Angles integrate unwrapped; events refine on the dense output.
template <class Real>
class XiEtaTracker {
public:
    struct Crossing {
        Real t;
        std::array<Real, 4> y;
    };

    Real sigma{}, lambda{1};
    Real rtol = Real(1e-13);
    Real section_dead_time = Real(1e-3);  // skip section events this close to start

    std::vector<Crossing> section;
    std::vector<Crossing> eta2_up;
    std::vector<Crossing> eta2_down;
    std::vector<Real> eta2_max_between;  // pushed at each downward crossing
    std::vector<Real> eta2_min_between;  // pushed at each upward crossing after a down
    std::vector<Real> section_min_eta2;  // running min of eta2 at each section crossing
    Real min_eta2 = Real(1e30);
    Real max_eta2 = Real(-1e30);
    bool hit_step_limit = false;

    /// Called on every dense sub-sample (time, state) when set.
    std::function<void(Real, const std::array<Real, 4>&)> on_sample;

    void set_angle_index(int idx) { angle_index_ = idx; }

    /// Run from y0 over [t0, t0 + span] (span may be negative), stopping
    /// early once max_section crossings were recorded (when > 0).
    void run(const std::array<Real, 4>& y0, Real t0, Real span, long max_section = 0) {
        XiEtaRhs<Real> rhs{sigma, lambda};
        typename Dop853<Real, 4, XiEtaRhs<Real>>::Options opt;
        opt.rtol = rtol;
        opt.atol = rtol;
        opt.dense = true;
        Dop853<Real, 4, XiEtaRhs<Real>> solver(rhs, t0, y0, opt);
        const Real t_end = t0 + span;
        t_start_ = t0;

        phase_above_ = y0[3] > Real(1);
        cur_ext_ = y0[3];
        track_extreme(y0[3]);

        while ((span >= 0 && solver.t() < t_end) || (span < 0 && solver.t() > t_end)) {
            if (!solver.step(t_end)) {
                hit_step_limit = true;
                break;
            }
            scan_step(solver);
            if (max_section > 0 && long(section.size()) >= max_section) break;
        }
    }

private:
    bool phase_above_ = false;
    Real cur_ext_{};
    Real t_start_{};
    int angle_index_ = 2;

    void track_extreme(Real e2) {
        if (e2 < min_eta2) min_eta2 = e2;
        if (e2 > max_eta2) max_eta2 = e2;
        if (phase_above_) {
            if (e2 > cur_ext_) cur_ext_ = e2;
        } else {
            if (e2 < cur_ext_) cur_ext_ = e2;
        }
    }

    template <class Solver>
    void scan_step(const Solver& solver) {
        using namespace rmath;
        const int ai = angle_index_;
        const int ci = ai + 1;
        constexpr int M = 4;  // sub-samples per step
        Real tl = solver.t_prev();
        std::array<Real, 4> yl = solver.y_prev();
        for (int j = 1; j <= M; j++) {
            const Real tr = solver.t_prev() + (solver.t() - solver.t_prev()) * Real(j) / Real(M);
            const std::array<Real, 4> yr = (j == M) ? solver.y() : solver.dense(tr);
            track_extreme(yr[3]);
            if (on_sample) on_sample(tr, yr);

            const Real gl = r_sin(yl[ai] / Real(2));
            const Real gr = r_sin(yr[ai] / Real(2));
            if ((gl <= Real(0)) != (gr <= Real(0))) {
                auto cr = refine(solver, tl, tr,
                                 [ai](const std::array<Real, 4>& y) { return rmath::r_sin(y[ai] / Real(2)); });
                if (cr.y[ci] > Real(0) && r_abs(cr.t - t_start_) > section_dead_time) {
                    section.push_back(cr);
                    section_min_eta2.push_back(min_eta2);
                }
            }
            const Real el = yl[3] - Real(1), er = yr[3] - Real(1);
            if ((el <= Real(0)) != (er <= Real(0))) {
                auto cr = refine(solver, tl, tr,
                                 [](const std::array<Real, 4>& y) { return y[3] - Real(1); });
                if (er > Real(0)) {
                    if (!eta2_down.empty()) eta2_min_between.push_back(cur_ext_);
                    eta2_up.push_back(cr);
                    phase_above_ = true;
                } else {
                    eta2_max_between.push_back(cur_ext_);
                    eta2_down.push_back(cr);
                    phase_above_ = false;
                }
                cur_ext_ = Real(1);
            }
            tl = tr;
            yl = yr;
        }
    }

    template <class Solver, class G>
    Crossing refine(const Solver& solver, Real lo, Real hi, G g) const {
        using namespace rmath;
        Real glo = g(solver.dense(lo));
        for (int it = 0; it < 220; it++) {
            const Real mid = (lo + hi) / Real(2);
            if (mid == lo || mid == hi) break;
            const Real gm = g(solver.dense(mid));
            if ((glo <= Real(0)) == (gm <= Real(0))) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
            if (r_abs(hi - lo) < Real(1e-14) * (Real(1) + r_abs(hi))) break;
        }
        const Real tc = (lo + hi) / Real(2);
        return {tc, solver.dense(tc)};
    }
};

} // namespace kirchhoff

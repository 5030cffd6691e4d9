#include "kirchhoff/kirchhoff_flow.hpp"

#include <cmath>

namespace kirchhoff {

double kirchhoff_G(const SpectralField& u, double measure_factor) {
    double g = 0.0;
    for (int n = 0; n < 4; n++)
        g += u.alpha(n) * u.alpha(n) * (std::norm(u.at(n, +1)) + std::norm(u.at(n, -1)));
    return g * measure_factor;
}

namespace {

struct PackedRhs {
    std::array<double, 4> al2;  // alpha_n^2
    double mf = 1.0;
    bool linearize = false;

    void operator()(double /*t*/, const std::array<double, 16>& y,
                    std::array<double, 16>& dy) const {
        // layout: y[0..7]  = Re/Im of u_{+alpha_n}  (n fastest: re0,im0,re1,im1,...)
        //         y[8..15] = Re/Im of v_{+alpha_n}
        double G = 0.0;
        if (!linearize) {
            for (int n = 0; n < 4; n++)
                G += al2[n] * (y[2 * n] * y[2 * n] + y[2 * n + 1] * y[2 * n + 1]);
            G *= 2.0 * mf;  // negative modes double the positive ones
        }
        const double c = 1.0 + G;
        for (int n = 0; n < 4; n++) {
            dy[2 * n] = y[8 + 2 * n];
            dy[2 * n + 1] = y[8 + 2 * n + 1];
            dy[8 + 2 * n] = -c * al2[n] * y[2 * n];
            dy[8 + 2 * n + 1] = -c * al2[n] * y[2 * n + 1];
        }
    }
};

PackedRhs make_rhs(const SpectralField& u, const KirchhoffParams& prm, double mf) {
    PackedRhs r;
    for (int n = 0; n < 4; n++) r.al2[n] = u.alpha(n) * u.alpha(n);
    r.mf = mf;
    r.linearize = prm.linearize;
    return r;
}

} // namespace

PhysicalState kirchhoff_rhs(const PhysicalState& s, const KirchhoffParams& prm,
                            double measure_factor) {
    PhysicalState d = s;
    double G = prm.linearize ? 0.0 : kirchhoff_G(s.u, measure_factor);
    const double c = 1.0 + G;
    for (int n = 0; n < 4; n++)
        for (int sg : {+1, -1}) {
            d.u.at(n, sg) = s.v.at(n, sg);
            d.v.at(n, sg) = -c * s.u.alpha(n) * s.u.alpha(n) * s.u.at(n, sg);
        }
    return d;
}

double kirchhoff_energy(const PhysicalState& s, double measure_factor) {
    double ev = 0.0, eu = 0.0;
    for (int n = 0; n < 4; n++) {
        ev += std::norm(s.v.at(n, +1)) + std::norm(s.v.at(n, -1));
        eu += s.u.alpha(n) * s.u.alpha(n) * (std::norm(s.u.at(n, +1)) + std::norm(s.u.at(n, -1)));
    }
    const double G = kirchhoff_G(s.u, measure_factor);
    return 0.5 * ev + 0.5 * eu + 0.25 * G * G / measure_factor;
}

std::array<double, 16> pack_state(const PhysicalState& s) {
    std::array<double, 16> y{};
    for (int n = 0; n < 4; n++) {
        y[2 * n] = s.u.at(n, +1).real();
        y[2 * n + 1] = s.u.at(n, +1).imag();
        y[8 + 2 * n] = s.v.at(n, +1).real();
        y[8 + 2 * n + 1] = s.v.at(n, +1).imag();
    }
    return y;
}

PhysicalState unpack_state(const std::array<double, 16>& y, const TripletConfig& cfg, double t) {
    PhysicalState s{SpectralField::zero(cfg, Flavor::Physical),
                    SpectralField::zero(cfg, Flavor::Physical), t};
    for (int n = 0; n < 4; n++) {
        s.u.at(n, +1) = {y[2 * n], y[2 * n + 1]};
        s.u.at(n, -1) = std::conj(s.u.at(n, +1));
        s.v.at(n, +1) = {y[8 + 2 * n], y[8 + 2 * n + 1]};
        s.v.at(n, -1) = std::conj(s.v.at(n, +1));
    }
    return s;
}

Trajectory integrate_kirchhoff(const PhysicalState& init, const TripletConfig& cfg,
                               double t_end, const KirchhoffParams& prm,
                               double dt_sample,
                               const std::function<void(double, const PhysicalState&)>& cb) {
    const auto rhs = make_rhs(init.u, prm, cfg.measure_factor());
    using Solver = Dop853<double, 16, PackedRhs>;
    Solver::Options opt;
    opt.rtol = prm.rtol;
    opt.atol = prm.atol;
    opt.dense = dt_sample > 0;

    Trajectory traj;
    traj.dim = 16;
    auto y0 = pack_state(init);
    Solver solver(rhs, init.t, y0, opt);

    auto emit = [&](double t, const std::array<double, 16>& y) {
        traj.push(t, y.data());
        if (cb) cb(t, unpack_state(y, cfg, t));
    };
    emit(init.t, y0);

    double t_next = init.t + (dt_sample > 0 ? dt_sample : 0.0);
    while (solver.t() < t_end) {
        if (!solver.step(t_end)) break;
        if (dt_sample > 0) {
            while (t_next <= solver.t() && t_next < t_end) {
                emit(t_next, solver.dense(t_next));
                t_next += dt_sample;
            }
        }
    }
    emit(solver.t(), solver.y());
    traj.stats = solver.stats();
    return traj;
}

} // namespace kirchhoff

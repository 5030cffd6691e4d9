#include "kirchhoff/cascade.hpp"

#include <cmath>
#include <stdexcept>

namespace kirchhoff {

EffConstants make_eff_constants(const TripletConfig& cfg, double c123, double c234,
                                double b1, double b2) {
    if (c123 <= 0.0) throw std::invalid_argument("make_eff_constants: need c123 > 0");
    EffConstants k;
    k.alphas = cfg.alphas;
    k.gamma = cfg.gamma;
    k.mu1 = cfg.mu1;
    k.mu2 = cfg.mu2;
    k.sigma = cfg.sigma;
    k.c123 = c123;
    k.c234 = c234;
    const double a1 = cfg.alpha(0), a2 = cfg.alpha(1), a3 = cfg.alpha(2), a4 = cfg.alpha(3);
    k.rho123 = 8.0 / 3.0 * c123 / (a1 * a2 * a3);
    k.rho234 = 8.0 / 3.0 * c234 / (a2 * a3 * a4);
    k.b1 = b1;
    k.b2 = b2;
    const auto q = q_from_b(cfg.alphas, b1, b2);
    k.q1 = q[0];
    k.q2 = q[1];
    k.E1 = (b1 - b2) / (a1 * a1);
    k.E2 = b2 / (a2 * a2);
    const double s123 = cfg.s123(), s234 = cfg.s234();
    k.A1 = std::sqrt(2.0 * c123 / s123);
    k.B = std::sqrt(c123 * s123 / 2.0);
    k.A2 = 2.0 * k.B / s234;
    k.lambda = c234 * s234 / (c123 * s123);
    return k;
}

double eff_residuals(const EffConstants& k) {
    const double a1 = k.alpha(0), a2 = k.alpha(1), a3 = k.alpha(2), a4 = k.alpha(3);
    const double s123 = a1 * a1 + a2 * a2 + a3 * a3;
    auto rel = [](double got, double want) {
        const double s = std::max(std::abs(got), std::abs(want));
        return s == 0.0 ? 0.0 : std::abs(got - want) / s;
    };
    double worst = 0.0;
    worst = std::max(worst, rel(k.c123, 3.0 / 8.0 * k.rho123 * a1 * a2 * a3));
    worst = std::max(worst, rel(k.c234, 3.0 / 8.0 * k.rho234 * a2 * a3 * a4));
    worst = std::max(worst, rel(k.A1, k.A2 * k.gamma));
    worst = std::max(worst, rel(k.B, std::sqrt(s123 * k.c123 / 2.0)));
    const auto b = b_from_q(k.alphas, k.q1, k.q2);
    worst = std::max(worst, rel(k.b1, b[0]));
    worst = std::max(worst, rel(k.b2, b[1]));
    worst = std::max(worst, rel(k.E1, (k.b1 - k.b2) / (a1 * a1)));
    worst = std::max(worst, rel(k.E2, k.b2 / (a2 * a2)));
    return worst;
}

void rhs6(const State6& y, const EffConstants& k, State6& dy) {
    const double a1 = k.alpha(0), a2 = k.alpha(1), a3 = k.alpha(2), a4 = k.alpha(3);
    const double s123 = k.c123 * std::sin(y[4]);
    const double s234 = k.c234 * std::sin(y[5]);
    dy[0] = s123;
    dy[1] = s123 + s234;
    dy[2] = -s123 + s234;
    dy[3] = -s234;
    dy[4] = -0.5 * (a1 * a1 * y[0] + a2 * a2 * y[1] - a3 * a3 * y[2]);
    dy[5] = -0.5 * (a2 * a2 * y[1] + a3 * a3 * y[2] - a4 * a4 * y[3]);
}

void rhs6z(const State6Z& y, const EffConstants& k, State6Z& dy) {
    const double a1 = k.alpha(0), a2 = k.alpha(1), a3 = k.alpha(2), a4 = k.alpha(3);
    const double th123 = y[5], th234 = y[7];  // Im Z
    const double c123 = 3.0 / 8.0 * a1 * a2 * a3, c234 = 3.0 / 8.0 * a2 * a3 * a4;
    dy[0] = c123 * th123;
    dy[1] = c123 * th123 + c234 * th234;
    dy[2] = -c123 * th123 + c234 * th234;
    dy[3] = -c234 * th234;
    const double om123 = a1 * a1 * y[0] + a2 * a2 * y[1] - a3 * a3 * y[2];
    const double om234 = a2 * a2 * y[1] + a3 * a3 * y[2] - a4 * a4 * y[3];
    // dZ/dt = -(i/2) omega Z
    dy[4] = 0.5 * om123 * y[5];
    dy[5] = -0.5 * om123 * y[4];
    dy[6] = 0.5 * om234 * y[7];
    dy[7] = -0.5 * om234 * y[6];
}

void rhs4(const State4& y, const EffConstants& k, State4& dy) {
    const double a1 = k.alpha(0), a2 = k.alpha(1), a3 = k.alpha(2), a4 = k.alpha(3);
    const double s123 = k.c123 * std::sin(y[2]);
    const double s234 = k.c234 * std::sin(y[3]);
    dy[0] = -s123 + s234;
    dy[1] = -s234;
    dy[2] = -0.5 * (a1 * a1 * k.E1 + a2 * a2 * k.E2) +
            0.5 * (a1 * a1 + a2 * a2 + a3 * a3) * y[0] +
            0.5 * (a1 * a1 + 2.0 * a2 * a2) * y[1];
    dy[3] = -0.5 * a2 * a2 * k.E2 - 0.5 * (a3 * a3 - a2 * a2) * y[0] +
            0.5 * (2.0 * a2 * a2 + a4 * a4) * y[1];
}

void rhs_xy(const StateXY& y, const EffConstants& k, StateXY& dy) {
    const double a1 = k.alpha(0), a2 = k.alpha(1), a3 = k.alpha(2), a4 = k.alpha(3);
    const double A11 = a1 * a1 + a2 * a2 + a3 * a3;
    const double A12 = -(a3 * a3 - a2 * a2);
    const double A22 = a2 * a2 + a3 * a3 + a4 * a4;
    dy[0] = -0.5 * k.b1 + 0.5 * (A11 * y[2] + A12 * y[3]);
    dy[1] = -0.5 * k.b2 + 0.5 * (A12 * y[2] + A22 * y[3]);
    dy[2] = -k.c123 * std::sin(y[0]);
    dy[3] = -k.c234 * std::sin(y[1]);
}

void rhs_tilde(const StateXY& y, const EffConstants& k, StateXY& dy) {
    const double a1 = k.alpha(0), a2 = k.alpha(1), a3 = k.alpha(2), a4 = k.alpha(3);
    const double A11 = a1 * a1 + a2 * a2 + a3 * a3;
    const double A12 = -(a3 * a3 - a2 * a2);
    const double A22 = a2 * a2 + a3 * a3 + a4 * a4;
    dy[0] = 0.5 * (A11 * y[2] + A12 * y[3]);
    dy[1] = 0.5 * (A12 * y[2] + A22 * y[3]);
    dy[2] = -k.c123 * std::sin(y[0]);
    dy[3] = -k.c234 * std::sin(y[1]);
}

double conservedE1(const State6& y) { return y[0] + y[2] + y[3]; }
double conservedE2(const State6& y) { return y[1] + y[2] + 2.0 * y[3]; }

double sum_alpha_S(const State6& y, const EffConstants& k) {
    double s = 0.0;
    for (int n = 0; n < 4; n++) s += k.alpha(n) * y[n];
    return s;
}

double hamiltonianH(const StateXY& y, const EffConstants& k) {
    const double a1 = k.alpha(0), a2 = k.alpha(1), a3 = k.alpha(2), a4 = k.alpha(3);
    const double A11 = a1 * a1 + a2 * a2 + a3 * a3;
    const double A12 = -(a3 * a3 - a2 * a2);
    const double A22 = a2 * a2 + a3 * a3 + a4 * a4;
    const double qf = A11 * y[2] * y[2] + 2.0 * A12 * y[2] * y[3] + A22 * y[3] * y[3];
    return -k.c123 * std::cos(y[0]) - k.c234 * std::cos(y[1]) -
           0.5 * (k.b1 * y[2] + k.b2 * y[3]) + 0.25 * qf;
}

double hamiltonianH_tilde(const StateXY& y, const EffConstants& k) {
    StateXY yy = untranslate(y, k);
    return hamiltonianH(yy, k);
}

State4 reduce6to4(const State6& y, double& E1, double& E2) {
    E1 = conservedE1(y);
    E2 = conservedE2(y);
    return {y[2], y[3], y[4], y[5]};
}

State6 lift4to6(const State4& y, double E1, double E2) {
    const double S3 = y[0], S4 = y[1];
    return {E1 - S3 - S4, E2 - S3 - 2.0 * S4, S3, S4, y[2], y[3]};
}

StateXY map4toXY(const State4& y, const EffConstants&) {
    return {y[2], y[3], y[0] + y[1], y[1]};
}

State4 mapXYto4(const StateXY& y, const EffConstants&) {
    return {y[2] - y[3], y[3], y[0], y[1]};
}

StateXY translate(const StateXY& y, const EffConstants& k) {
    return {y[0], y[1], y[2] - k.q1, y[3] - k.q2};
}

StateXY untranslate(const StateXY& y, const EffConstants& k) {
    return {y[0], y[1], y[2] + k.q1, y[3] + k.q2};
}

std::array<double, 2> q_from_b(const std::array<long, 4>& alphas, double b1, double b2) {
    const double a1 = double(alphas[0]), a2 = double(alphas[1]);
    const double a3 = double(alphas[2]), a4 = double(alphas[3]);
    const double A11 = a1 * a1 + a2 * a2 + a3 * a3;
    const double A12 = -(a3 * a3 - a2 * a2);
    const double A22 = a2 * a2 + a3 * a3 + a4 * a4;
    const double det = A11 * A22 - A12 * A12;
    return {(A22 * b1 - A12 * b2) / det, (-A12 * b1 + A11 * b2) / det};
}

std::array<double, 2> b_from_q(const std::array<long, 4>& alphas, double q1, double q2) {
    const double a1 = double(alphas[0]), a2 = double(alphas[1]);
    const double a3 = double(alphas[2]), a4 = double(alphas[3]);
    const double A11 = a1 * a1 + a2 * a2 + a3 * a3;
    const double A12 = -(a3 * a3 - a2 * a2);
    const double A22 = a2 * a2 + a3 * a3 + a4 * a4;
    return {A11 * q1 + A12 * q2, A12 * q1 + A22 * q2};
}

StateXiEta xieta_from_tilde(const StateXY& y, const EffConstants& k) {
    return {y[0], y[2] / k.A1, y[1], y[3] / k.A2};
}

StateXY tilde_from_xieta(const StateXiEta& y, const EffConstants& k) {
    return {y[0], y[2], k.A1 * y[1], k.A2 * y[3]};
}

namespace {

template <std::size_t N, class RHS>
Trajectory run_flow(RHS rhs, const std::array<double, N>& y0, double t_end,
                    double rtol, double dt_sample,
                    const std::function<void(double, const std::array<double, N>&)>& cb,
                    double atol = -1.0) {
    using Solver = Dop853<double, N, RHS>;
    typename Solver::Options opt;
    opt.rtol = rtol;
    opt.atol = atol > 0.0 ? atol : rtol * 1e-2;
    opt.dense = dt_sample > 0;
    Trajectory traj;
    traj.dim = int(N);
    Solver solver(rhs, 0.0, y0, opt);
    auto emit = [&](double t, const std::array<double, N>& y) {
        traj.push(t, y.data());
        if (cb) cb(t, y);
    };
    emit(0.0, y0);
    double t_next = dt_sample;
    while (solver.t() < t_end) {
        if (!solver.step(t_end)) break;
        if (dt_sample > 0)
            while (t_next <= solver.t() && t_next < t_end) {
                emit(t_next, solver.dense(t_next));
                t_next += dt_sample;
            }
    }
    emit(solver.t(), solver.y());
    traj.stats = solver.stats();
    return traj;
}

} // namespace

FlowResult integrate6(const State6& y0, const EffConstants& k, double t_end,
                      double rtol, double dt_sample, double atol) {
    FlowResult out;
    auto rhs = [&k](double, const State6& y, State6& dy) { rhs6(y, k, dy); };
    std::function<void(double, const State6&)> monitor =
        [&out](double t, const State6& y) {
            if (!out.first_nonpositive_S)
                for (int n = 0; n < 4; n++)
                    if (y[n] <= 0.0) {
                        out.first_nonpositive_S = t;
                        break;
                    }
        };
    out.traj = run_flow<6>(rhs, y0, t_end, rtol, dt_sample, monitor, atol);
    return out;
}

FlowResult integrate6z(const State6Z& y0, const EffConstants& k, double t_end,
                       double rtol, double dt_sample, double atol) {
    FlowResult out;
    auto rhs = [&k](double, const State6Z& y, State6Z& dy) { rhs6z(y, k, dy); };
    std::function<void(double, const State6Z&)> monitor =
        [&out](double t, const State6Z& y) {
            if (!out.first_nonpositive_S)
                for (int n = 0; n < 4; n++)
                    if (y[n] <= 0.0) {
                        out.first_nonpositive_S = t;
                        break;
                    }
        };
    out.traj = run_flow<8>(rhs, y0, t_end, rtol, dt_sample, monitor, atol);
    return out;
}

Trajectory integrate_xy(const StateXY& y0, const EffConstants& k, double t_end,
                        double rtol, double dt_sample, bool tilde, double atol) {
    auto rhs = [&k, tilde](double, const StateXY& y, StateXY& dy) {
        tilde ? rhs_tilde(y, k, dy) : rhs_xy(y, k, dy);
    };
    return run_flow<4>(rhs, y0, t_end, rtol, dt_sample, nullptr, atol);
}

Trajectory integrate_xieta(const StateXiEta& y0, double sigma, double lambda,
                           double t_end, double rtol, double dt_sample, double atol) {
    auto rhs = [sigma, lambda](double, const StateXiEta& y, StateXiEta& dy) {
        rhs_xieta<double>(y, sigma, lambda, dy);
    };
    return run_flow<4>(rhs, y0, t_end, rtol, dt_sample, nullptr, atol);
}

State6 compose_point(const StateXiEta& y, const EffConstants& k) {
    const double e1 = y[1], e2 = y[3];
    return {k.E1 - k.q1 - k.A1 * e1,
            k.E2 - k.q1 - k.q2 - k.A1 * e1 - k.A2 * e2,
            k.q1 - k.q2 + k.A1 * e1 - k.A2 * e2,
            k.q2 + k.A2 * e2,
            y[0],
            y[2]};
}

Trajectory compose_chain(const Trajectory& xi_eta_traj, const EffConstants& k) {
    Trajectory out;
    out.dim = 6;
    out.stats = xi_eta_traj.stats;
    for (std::size_t i = 0; i < xi_eta_traj.size(); i++) {
        const double* r = xi_eta_traj.row(i);
        const State6 s = compose_point({r[0], r[1], r[2], r[3]}, k);
        out.push(xi_eta_traj.t[i] / k.B, s.data());
    }
    return out;
}

} // namespace kirchhoff

#include "kirchhoff/resonant_flow.hpp"

#include <cmath>

namespace kirchhoff {

namespace {

// Sphere-level sums over the signed support: for the one-pair-per-sphere
// support these factorizations are identical to the displayed mode sums.
struct SphereSums {
    std::array<cplx, 4> Bu{};   // sum_{|j|=mu} u_j u_{-j}   = 2 u_+ u_-
    std::array<cplx, 4> Bv{};   // sum_{|l|=mu} v_l v_{-l}
    std::array<cplx, 4> Quv{};  // sum_{|l|=mu} u_l v_{-l}
};

SphereSums sphere_sums(const SpectralField& u, const SpectralField& v) {
    SphereSums s;
    for (int n = 0; n < 4; n++) {
        s.Bu[n] = 2.0 * u.at(n, +1) * u.at(n, -1);
        s.Bv[n] = 2.0 * v.at(n, +1) * v.at(n, -1);
        s.Quv[n] = u.at(n, +1) * v.at(n, -1) + u.at(n, -1) * v.at(n, +1);
    }
    return s;
}

SpectralField conj_component(const SpectralField& w) {
    // second component of an operator whose value is the pointwise complex
    // conjugate of the first: coefficients (w2)_k = conj((w1)_{-k})
    SpectralField out = w;
    for (int n = 0; n < 4; n++) {
        out.at(n, +1) = std::conj(w.at(n, -1));
        out.at(n, -1) = std::conj(w.at(n, +1));
    }
    return out;
}

} // namespace

FieldPair z3_apply(const SpectralField& u, const SpectralField& v) {
    const auto s = sphere_sums(u, v);
    SpectralField w1 = u, w2 = u;
    const cplx i4(0.0, 0.25);
    for (int n = 0; n < 4; n++) {
        const double lam2 = u.alpha(n) * u.alpha(n);
        for (int sg : {+1, -1}) {
            w1.at(n, sg) = -i4 * lam2 * s.Bu[n] * v.at(n, sg);
            w2.at(n, sg) = i4 * lam2 * s.Bv[n] * u.at(n, sg);
        }
    }
    return {w1, w2};
}

FieldPair z5_apply(const SpectralField& u, const SpectralField& v) {
    const auto s = sphere_sums(u, v);
    const std::array<double, 4> al = {u.alpha(0), u.alpha(1), u.alpha(2), u.alpha(3)};
    SpectralField w1 = u;
    const cplx iu(0.0, 1.0);

    for (int n = 0; n < 4; n++) {
        const double lam = al[n];

        // group 1: |j| = |l|, factor u_k
        cplx g1 = 0.0;
        for (int m = 0; m < 4; m++) {
            const double mu = al[m];
            double coef = 1.0 / (mu + lam);
            if (m != n) coef -= 1.0 / (mu - lam);
            g1 += s.Bu[m] * s.Bv[m] * mu * mu * mu * mu * coef;
        }
        g1 *= iu / 32.0;

        // group 2: |k| = |j| + |l|, factor v_k
        cplx g2 = 0.0;
        for (int m = 0; m < 4; m++)
            for (int q = 0; q < 4; q++)
                if (al[m] + al[q] == lam)
                    g2 += s.Bu[m] * s.Bu[q] * al[m] * al[q];
        g2 *= 3.0 * iu / 32.0 * lam;

        // group 3: |j| = |k|, factor v_k
        cplx g3 = 0.0;
        for (int q = 0; q < 4; q++) {
            const double nu = al[q];
            double coef = 6.0 + nu / (nu + lam);
            if (q != n) coef += nu / (nu - lam);
            g3 += s.Quv[q] * nu * coef;
        }
        g3 *= iu / 16.0 * lam * lam * s.Bu[n];

        // group 4: |k| = |j| - |l|, factor v_k
        cplx g4 = 0.0;
        for (int m = 0; m < 4; m++)
            for (int q = 0; q < 4; q++)
                if (al[m] - al[q] == lam)
                    g4 += s.Bu[m] * s.Bv[q] * al[m] * al[q];
        g4 *= 3.0 * iu / 16.0 * lam;

        for (int sg : {+1, -1})
            w1.at(n, sg) = g1 * u.at(n, sg) + (g2 + g3 + g4) * v.at(n, sg);
    }
    return {w1, conj_component(w1)};
}

FieldPair d1_apply(const SpectralField& u, const SpectralField& v) {
    SpectralField w1 = u, w2 = v;
    const cplx iu(0.0, 1.0);
    for (int n = 0; n < 4; n++)
        for (int sg : {+1, -1}) {
            w1.at(n, sg) = -iu * u.alpha(n) * u.at(n, sg);
            w2.at(n, sg) = iu * v.alpha(n) * v.at(n, sg);
        }
    return {w1, w2};
}

std::array<double, 4> z5_superaction_rate(const SpectralField& u) {
    const auto v = conjugate_pair_of(u);
    const auto w = z5_apply(u, v);
    std::array<double, 4> dS{};
    for (int n = 0; n < 4; n++)
        for (int sg : {+1, -1})
            dS[n] += 2.0 * std::real(w.first.at(n, sg) * std::conj(u.at(n, sg)));
    return dS;
}

std::array<double, 4> z3_superaction_rate(const SpectralField& u) {
    const auto v = conjugate_pair_of(u);
    const auto w = z3_apply(u, v);
    std::array<double, 4> dS{};
    for (int n = 0; n < 4; n++)
        for (int sg : {+1, -1})
            dS[n] += 2.0 * std::real(w.first.at(n, sg) * std::conj(u.at(n, sg)));
    return dS;
}

std::array<double, 16> pack_resonant(const SpectralField& u) {
    std::array<double, 16> y{};
    for (int i = 0; i < 8; i++) {
        y[2 * i] = u.c[i].real();
        y[2 * i + 1] = u.c[i].imag();
    }
    return y;
}

SpectralField unpack_resonant(const std::array<double, 16>& y, const TripletConfig& cfg) {
    SpectralField u = SpectralField::zero(cfg, Flavor::ConjugatePair);
    for (int i = 0; i < 8; i++) u.c[i] = {y[2 * i], y[2 * i + 1]};
    return u;
}

namespace {

struct ResonantRhs {
    TripletConfig cfg;
    void operator()(double /*t*/, const std::array<double, 16>& y,
                    std::array<double, 16>& dy) const {
        SpectralField u = unpack_resonant(y, cfg);
        const auto v = conjugate_pair_of(u);
        const auto d1 = d1_apply(u, v);
        const auto z3 = z3_apply(u, v);
        const auto z5 = z5_apply(u, v);
        SpectralField du = u;
        for (int i = 0; i < 8; i++)
            du.c[i] = d1.first.c[i] + z3.first.c[i] + z5.first.c[i];
        dy = pack_resonant(du);
    }
};

} // namespace

Trajectory integrate_resonant(const ResonantState& init, const TripletConfig& cfg,
                              double t_end, double rtol, double dt_sample,
                              const std::function<void(double, const SpectralField&)>& cb) {
    ResonantRhs rhs{cfg};
    using Solver = Dop853<double, 16, ResonantRhs>;
    Solver::Options opt;
    opt.rtol = rtol;
    opt.atol = rtol * 1e-2;
    opt.dense = dt_sample > 0;

    Trajectory traj;
    traj.dim = 16;
    auto y0 = pack_resonant(init.u);
    Solver solver(rhs, init.t, y0, opt);

    auto emit = [&](double t, const std::array<double, 16>& y) {
        traj.push(t, y.data());
        if (cb) cb(t, unpack_resonant(y, cfg));
    };
    emit(init.t, y0);
    double t_next = init.t + dt_sample;
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

} // namespace kirchhoff

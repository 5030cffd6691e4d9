#include "kirchhoff/orbit.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "kirchhoff/pendulum.hpp"
#include "kirchhoff/spectral_field.hpp"

namespace kirchhoff {

namespace {

template <class Real>
Real wrap_pi_r(Real x) {
    using namespace rmath;
    const Real pi = Real(3.14159265358979323846264338327950288Q);
    const Real two_pi = Real(2) * pi;
    while (x > pi) x -= two_pi;
    while (x <= -pi) x += two_pi;
    return x;
}

// Solve the 4x4 system A x = b (partial pivoting), generic over Real.
template <class Real>
std::array<Real, 4> solve4(std::array<Real, 16> A, std::array<Real, 4> b) {
    using namespace rmath;
    for (int c = 0; c < 4; c++) {
        int piv = c;
        for (int r = c + 1; r < 4; r++)
            if (r_abs(A[4 * r + c]) > r_abs(A[4 * piv + c])) piv = r;
        if (piv != c) {
            for (int j = 0; j < 4; j++) std::swap(A[4 * c + j], A[4 * piv + j]);
            std::swap(b[c], b[piv]);
        }
        const Real d = A[4 * c + c];
        for (int r = c + 1; r < 4; r++) {
            const Real f = A[4 * r + c] / d;
            for (int j = c; j < 4; j++) A[4 * r + j] -= f * A[4 * c + j];
            b[r] -= f * b[c];
        }
    }
    std::array<Real, 4> x{};
    for (int r = 3; r >= 0; r--) {
        Real s = b[r];
        for (int j = r + 1; j < 4; j++) s -= A[4 * r + j] * x[j];
        x[r] = s / A[4 * r + r];
    }
    return x;
}

template <class Real>
std::array<Real, 4> matvec4(const std::array<Real, 16>& A, const std::array<Real, 4>& v) {
    std::array<Real, 4> w{};
    for (int r = 0; r < 4; r++)
        for (int c = 0; c < 4; c++) w[r] += A[4 * r + c] * v[c];
    return w;
}

template <class Real>
void normalize4(std::array<Real, 4>& v) {
    using namespace rmath;
    Real n = Real(0);
    for (auto x : v) n += x * x;
    n = r_sqrt(n);
    for (auto& x : v) x /= n;
}

// Dominant eigenpair by power iteration (well separated here: the unstable
// multiplier is ~e^T against ~1).
template <class Real>
void power_iteration(const std::array<Real, 16>& M, std::array<Real, 4>& v, Real& lam) {
    v = {Real(0.01), Real(0.01), Real(1), Real(1)};
    normalize4(v);
    for (int it = 0; it < 80; it++) {
        auto w = matvec4(M, v);
        normalize4(w);
        v = w;
    }
    const auto Mv = matvec4(M, v);
    Real num = Real(0), den = Real(0);
    for (int i = 0; i < 4; i++) {
        num += v[i] * Mv[i];
        den += v[i] * v[i];
    }
    lam = num / den;
}

} // namespace

template <class Real>
PeriodicOrbitT<Real> shoot_periodic(Real sigma, double a, Real rtol) {
    using namespace rmath;
    const Real pi = Real(3.14159265358979323846264338327950288Q);
    PeriodicOrbitT<Real> orb;
    orb.sigma = sigma;
    orb.a = Real(a);
    orb.T = Real(4.0 * elliptic_K(a / 2.0));

    Real e1 = r_sqrt(Real(2) * Real(a));
    Real e2 = Real(0);
    const Real tol_newton = eps_of<Real>() * Real(1e3);

    for (int it = 0; it < 40; it++) {
        std::array<Real, 4> y{Real(0), e1, pi, e2};
        std::array<Real, 16> M{};
        xieta_flow_var<Real>(y, M, sigma, Real(1), orb.T / Real(2), rtol);
        const Real F0 = wrap_pi_r<Real>(y[0]);
        const Real F1 = wrap_pi_r<Real>(y[2] - pi);
        const double res = r_max(double(r_abs(F0)), double(r_abs(F1)));
        orb.newton_residuals.push_back(res);
        if (Real(res) <= tol_newton) {
            orb.converged = true;
            break;
        }
        // 2x2 Newton in (eta1(0), eta2(0)) on rows (xi1, xi2)
        const Real J00 = M[0 * 4 + 1], J01 = M[0 * 4 + 3];
        const Real J10 = M[2 * 4 + 1], J11 = M[2 * 4 + 3];
        const Real det = J00 * J11 - J01 * J10;
        e1 -= (J11 * F0 - J01 * F1) / det;
        e2 -= (-J10 * F0 + J00 * F1) / det;
        if (it > 30 && res > 1e-3) break;
    }
    orb.y0 = {Real(0), e1, pi, e2};

    std::array<Real, 4> y = orb.y0;
    xieta_flow_var<Real>(y, orb.monodromy, sigma, Real(1), orb.T, rtol);

    power_iteration<Real>(orb.monodromy, orb.v_unstable, orb.mult_unstable);
    if (orb.v_unstable[3] < Real(0))
        for (auto& x : orb.v_unstable) x = -x;

    // stable direction: dominant eigenvector of M^{-1} via iterated solves
    std::array<Real, 4> vs{Real(0.01), Real(0.01), Real(1), Real(-1)};
    normalize4(vs);
    for (int it = 0; it < 80; it++) {
        vs = solve4<Real>(orb.monodromy, vs);
        normalize4(vs);
    }
    // the upper-loop branch of W^s leaves the saddle with
    // (delta xi2 < 0, delta eta2 > 0) in backward time
    if (vs[3] < Real(0))
        for (auto& x : vs) x = -x;
    orb.v_stable = vs;
    return orb;
}

template PeriodicOrbitT<double> shoot_periodic<double>(double, double, double);
template PeriodicOrbitT<quad> shoot_periodic<quad>(quad, double, quad);

PeriodicOrbitSigma continue_periodic_orbit(double sigma, double a, double rtol) {
    PeriodicOrbitSigma out;
    const auto orb = shoot_periodic<double>(sigma, a, rtol);
    out.sigma = sigma;
    out.a = a;
    out.T = orb.T;
    out.y0 = orb.y0;
    out.newton_residuals = orb.newton_residuals;
    out.converged = orb.converged;

    Eigen::Matrix4d M;
    for (int r = 0; r < 4; r++)
        for (int c = 0; c < 4; c++) M(r, c) = orb.monodromy[4 * r + c];
    out.det_monodromy = M.determinant();
    Eigen::EigenSolver<Eigen::Matrix4d> es(M);
    for (int i = 0; i < 4; i++) {
        out.multipliers[i] = es.eigenvalues()[i];
        if (std::abs(out.multipliers[i]) > 1.05) out.n_unstable++;
    }

    // one-period sampling; periodicity and reversibility residuals;
    // C^1 distance to the unperturbed orbit P(t) = (xi1*(t), eta1*(t), pi, 0)
    const auto pend = pendulum_orbit(a);
    const int NS = 512;
    XiEtaRhs<double> rhs{sigma, 1.0};
    typename Dop853<double, 4, XiEtaRhs<double>>::Options opt;
    opt.rtol = rtol;
    opt.atol = rtol;
    opt.dense = true;
    Dop853<double, 4, XiEtaRhs<double>> solver(rhs, 0.0, orb.y0, opt);
    out.sample_t.reserve(NS + 1);
    out.sample_y.reserve(NS + 1);
    double t_next = 0.0;
    const double dt = orb.T / NS;
    auto emit = [&](double t, const std::array<double, 4>& y) {
        out.sample_t.push_back(t);
        out.sample_y.push_back(y);
    };
    emit(0.0, orb.y0);
    t_next = dt;
    while (solver.t() < orb.T) {
        if (!solver.step(orb.T)) break;
        while (t_next <= solver.t() && t_next < orb.T) {
            emit(t_next, solver.dense(t_next));
            t_next += dt;
        }
    }
    emit(orb.T, solver.y());

    const auto& yT = out.sample_y.back();
    out.residual_periodicity = std::max(
        std::max(std::abs(angle_diff(yT[0], orb.y0[0])), std::abs(yT[1] - orb.y0[1])),
        std::max(std::abs(angle_diff(yT[2], orb.y0[2])), std::abs(yT[3] - orb.y0[3])));

    double rev = 0.0, c0 = 0.0, c1 = 0.0;
    for (std::size_t i = 0; i < out.sample_y.size(); i++) {
        const double t = out.sample_t[i];
        const auto& y = out.sample_y[i];
        // reversibility: nu y(T - t) vs y(t), nu = (-xi1, eta1, -xi2, eta2)
        const std::size_t j = out.sample_y.size() - 1 - i;
        const auto& ymt = out.sample_y[j];
        rev = std::max(rev, std::abs(angle_diff(-ymt[0], y[0])));
        rev = std::max(rev, std::abs(ymt[1] - y[1]));
        rev = std::max(rev, std::abs(angle_diff(-ymt[2], y[2])));
        rev = std::max(rev, std::abs(ymt[3] - y[3]));
        // C^1 distance
        const double dxi1 = angle_diff(y[0], pend.xi(t));
        const double deta1 = y[1] - pend.eta(t);
        const double dxi2 = angle_diff(y[2], std::numbers::pi);
        const double deta2 = y[3];
        c0 = std::max({c0, std::abs(dxi1), std::abs(deta1), std::abs(dxi2), std::abs(deta2)});
        std::array<double, 4> dy, dyp;
        rhs_xieta<double>(y, sigma, 1.0, dy);
        const std::array<double, 4> yp{pend.xi(t), pend.eta(t), std::numbers::pi, 0.0};
        rhs_xieta<double>(yp, 0.0, 1.0, dyp);
        for (int kk = 0; kk < 4; kk++) c1 = std::max(c1, std::abs(dy[kk] - dyp[kk]));
    }
    out.residual_reversibility = rev;
    out.c1_distance = c0 + c1;
    return out;
}

} // namespace kirchhoff

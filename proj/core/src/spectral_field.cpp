#include "kirchhoff/spectral_field.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kirchhoff {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

SpectralField SpectralField::zero(const TripletConfig& cfg, Flavor fl) {
    SpectralField f;
    f.alphas = cfg.alphas;
    f.d = cfg.d;
    f.flavor = fl;
    return f;
}

double SpectralField::reality_residual() const {
    if (flavor != Flavor::Physical) return 0.0;
    double worst = 0.0;
    for (int n = 0; n < 4; n++) {
        const double scale = std::abs(at(n, +1)) + std::abs(at(n, -1));
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(at(n, -1) - std::conj(at(n, +1))) / scale);
    }
    return worst;
}

SpectralField conjugate_pair_of(const SpectralField& u) {
    SpectralField v = u;
    v.flavor = Flavor::ConjugatePair;
    for (int n = 0; n < 4; n++) {
        v.at(n, +1) = std::conj(u.at(n, -1));
        v.at(n, -1) = std::conj(u.at(n, +1));
    }
    return v;
}

double conj_pair_residual(const SpectralField& u, const SpectralField& v) {
    double worst = 0.0;
    for (int n = 0; n < 4; n++)
        for (int s : {+1, -1}) {
            const double scale = std::abs(u.at(n, -s)) + std::abs(v.at(n, s));
            if (scale == 0.0) continue;
            worst = std::max(worst, std::abs(v.at(n, s) - std::conj(u.at(n, -s))) / scale);
        }
    return worst;
}

Observables observables(const SpectralField& u) {
    Observables o;
    for (int n = 0; n < 4; n++) {
        o.S[n] = std::norm(u.at(n, +1)) + std::norm(u.at(n, -1));
        o.B[n] = 2.0 * u.at(n, +1) * u.at(n, -1);
        o.N1 += u.alpha(n) * u.alpha(n) * o.S[n];
    }
    o.calN = std::sqrt(2.0 * o.N1);
    o.Z123 = o.B[0] * o.B[1] * std::conj(o.B[2]);
    o.Z234 = o.B[1] * o.B[2] * std::conj(o.B[3]);
    o.rho123 = std::abs(o.Z123);
    o.rho234 = std::abs(o.Z234);
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor123 = std::max(1e-300, 32.0 * eps * o.S[0] * o.S[1] * o.S[2]);
    const double floor234 = std::max(1e-300, 32.0 * eps * o.S[1] * o.S[2] * o.S[3]);
    if (o.rho123 >= floor123) o.phi123 = wrap_2pi(std::arg(o.Z123));
    if (o.rho234 >= floor234) o.phi234 = wrap_2pi(std::arg(o.Z234));
    return o;
}

double sobolev_norm(const SpectralField& u, double s) {
    double sum = 0.0;
    for (int n = 0; n < 4; n++)
        sum += (std::norm(u.at(n, +1)) + std::norm(u.at(n, -1))) * std::pow(u.alpha(n), 2.0 * s);
    return std::sqrt(sum);
}

namespace {
SpectralField like(const SpectralField& a, Flavor fl) {
    SpectralField f;
    f.alphas = a.alphas;
    f.d = a.d;
    f.flavor = fl;
    return f;
}
} // namespace

FieldPair phi2_map(const SpectralField& f, const SpectralField& g) {
    const cplx isqrt2(0.0, std::numbers::sqrt2);
    SpectralField q = like(f, Flavor::Physical), p = like(f, Flavor::Physical);
    for (int i = 0; i < 8; i++) {
        q.c[i] = (f.c[i] + g.c[i]) / std::numbers::sqrt2;
        p.c[i] = (f.c[i] - g.c[i]) / isqrt2;
    }
    return {q, p};
}

FieldPair phi2_inverse(const SpectralField& q, const SpectralField& p) {
    const cplx iu(0.0, 1.0);
    SpectralField f = like(q, Flavor::ConjugatePair), g = like(q, Flavor::ConjugatePair);
    for (int i = 0; i < 8; i++) {
        f.c[i] = (q.c[i] + iu * p.c[i]) / std::numbers::sqrt2;
        g.c[i] = (q.c[i] - iu * p.c[i]) / std::numbers::sqrt2;
    }
    return {f, g};
}

FieldPair phi1_map(const SpectralField& q, const SpectralField& p) {
    SpectralField u = like(q, Flavor::Physical), v = like(q, Flavor::Physical);
    for (int n = 0; n < 4; n++) {
        const double r = std::sqrt(q.alpha(n));
        if (q.alphas[n] == 0) throw std::invalid_argument("phi1_map: zero frequency in support");
        for (int s : {+1, -1}) {
            u.at(n, s) = q.at(n, s) / r;
            v.at(n, s) = p.at(n, s) * r;
        }
    }
    return {u, v};
}

FieldPair phi1_inverse(const SpectralField& u, const SpectralField& v) {
    SpectralField q = like(u, Flavor::Physical), p = like(u, Flavor::Physical);
    for (int n = 0; n < 4; n++) {
        if (u.alphas[n] == 0) throw std::invalid_argument("phi1_inverse: zero frequency in support");
        const double r = std::sqrt(u.alpha(n));
        for (int s : {+1, -1}) {
            q.at(n, s) = u.at(n, s) * r;
            p.at(n, s) = v.at(n, s) / r;
        }
    }
    return {q, p};
}

double wrap_2pi(double phi) {
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0;
    return w;
}

double angle_diff(double a, double b) {
    double dphi = std::fmod(a - b, two_pi);
    if (dphi <= -std::numbers::pi) dphi += two_pi;
    if (dphi > std::numbers::pi) dphi -= two_pi;
    return dphi;
}

} // namespace kirchhoff

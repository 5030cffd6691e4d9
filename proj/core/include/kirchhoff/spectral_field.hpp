#pragma once
#include <array>
#include <complex>
#include <optional>

#include "kirchhoff/triplet.hpp"

namespace kirchhoff {

using cplx = std::complex<double>;

/// Reality structure of a field on the support.
///   Physical:      c_{-k} = conj(c_k)  (real-valued function)
///   ConjugatePair: the field is one member u of a pair (u, v) with
///                  v = conj(u) as functions, i.e. v_k = conj(u_{-k}).
enum class Flavor { Physical, ConjugatePair };

/// Complex Fourier coefficients on the eight signed frequencies
/// {±alpha_1..±alpha_4} (one opposite lattice pair per sphere; d >= 2 uses
/// the representative alpha_n * e_1, which is all the synthesis needs).
struct SpectralField {
    std::array<long, 4> alphas{};
    int d = 1;
    Flavor flavor = Flavor::ConjugatePair;
    std::array<cplx, 8> c{};  // index 2n   -> +alpha_n
                              // index 2n+1 -> -alpha_n

    static SpectralField zero(const TripletConfig& cfg, Flavor fl);

    cplx& at(int n, int sign) { return c[2 * n + (sign < 0 ? 1 : 0)]; }
    const cplx& at(int n, int sign) const { return c[2 * n + (sign < 0 ? 1 : 0)]; }
    double alpha(int n) const { return double(alphas[n]); }

    /// Max relative violation of the flavor constraint (0 for ConjugatePair,
    /// which is a pair-level property checked in conj_pair_residual).
    double reality_residual() const;
};

/// v with v = conj(u) as functions: v_k = conj(u_{-k}).
SpectralField conjugate_pair_of(const SpectralField& u);
double conj_pair_residual(const SpectralField& u, const SpectralField& v);

/// Superactions, pair-correlators and triple products of one field.
/// Polar angles carry a degeneracy marker instead of a garbage value when
/// |Z| falls below the roundoff floor of the triple product.
struct Observables {
    std::array<double, 4> S{};
    std::array<cplx, 4> B{};
    cplx Z123{}, Z234{};
    double rho123 = 0, rho234 = 0;
    std::optional<double> phi123, phi234;  // in [0, 2*pi); nullopt = degenerate
    double N1 = 0;    // sum alpha_n^2 S_n
    double calN = 0;  // sqrt(2 * N1)
};

Observables observables(const SpectralField& u);

/// (sum |u_k|^2 |k|^{2s})^{1/2} over the support.
double sobolev_norm(const SpectralField& u, double s);

/// The linear symmetrizing / diagonalizing maps of the wave part:
///   Phi2: (f, g) -> (q, p) = ((f+g)/sqrt2, (f-g)/(i sqrt2))
///   Phi1: (q, p) -> (u, v) = (|Dx|^{-1/2} q, |Dx|^{1/2} p)
/// All act coefficientwise on the support; zero frequencies never occur
/// (fields are zero-average by construction), enforced by the support type.
struct FieldPair {
    SpectralField first, second;
};

FieldPair phi2_map(const SpectralField& f, const SpectralField& g);
FieldPair phi2_inverse(const SpectralField& q, const SpectralField& p);
FieldPair phi1_map(const SpectralField& q, const SpectralField& p);
FieldPair phi1_inverse(const SpectralField& u, const SpectralField& v);

/// Wrap an angle to [0, 2*pi).
double wrap_2pi(double phi);
/// Difference a-b wrapped to (-pi, pi].
double angle_diff(double a, double b);

} // namespace kirchhoff

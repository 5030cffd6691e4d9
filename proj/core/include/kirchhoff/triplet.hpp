#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace kirchhoff {

/// Measure normalization used for the quasilinear coefficient
/// G = integral of |grad u|^2. Normalized means G equals
/// sum |k|^2 |u_k|^2 exactly (the convention under which the resonant
/// coefficients below are calibrated); TwoPiWeighted multiplies by (2*pi)^d.
enum class MeasureConvention { Normalized, TwoPiWeighted };

/// Ordered resonant triplet (alpha, beta, lambda) with alpha + beta = lambda.
struct Triplet {
    long a, b, lam;
    bool operator==(const Triplet&) const = default;
};

/// Frequency configuration for the two-triplet support
/// alpha = (m, m+p, 2m+p, 3m+2p) together with every derived constant used
/// downstream: sigma = m/p, gamma, the couplings mu1/mu2 with their
/// sigma-Taylor remainders, and the quadratic-form matrix A with its
/// determinant.
struct TripletConfig {
    long m = 0;
    long p = 0;
    int d = 1;
    int m1 = 1;                                 // regularity index: 1 if d==1 else 2
    std::array<long, 4> alphas{};               // m, m+p, 2m+p, 3m+2p
    double sigma = 0;                           // m/p
    double gamma = 0;                           // (a2^2+a3^2+a4^2)/(a1^2+a2^2+a3^2)
    double mu1 = 0, mu2 = 0;                    // coupling coefficients
    double tilde_mu1 = 0, tilde_mu2 = 0;        // mu1 = sigma(1/3+tmu1), mu2 = sigma(1+tmu2)
    std::array<std::array<std::int64_t, 2>, 2> A{};
    std::int64_t detA = 0;
    double delta1 = 1.0;                        // normal-form ball radius, reported only
    MeasureConvention measure = MeasureConvention::Normalized;

    double alpha(int n) const { return double(alphas[n]); }  // n = 0..3
    /// a1^2+a2^2+a3^2 and a2^2+a3^2+a4^2, the diagonal entries of A.
    double s123() const;
    double s234() const;
    /// (2*pi)^d factor when the weighted convention is active, else 1.
    double measure_factor() const;
};

/// Build the configuration from (m, p, d). Throws std::invalid_argument
/// unless 2 <= m < p and d >= 1.
TripletConfig make_config(long m, long p, int d = 1);

/// All ordered triplets (a, b, lam) with a + b = lam inside an arbitrary
/// 4-element frequency set (brute force over ordered pairs).
std::vector<Triplet> triplets_of(const std::array<long, 4>& freqs);

/// Triplets of a valid configuration. Postcondition (checked): exactly
/// { (a1,a2,a3), (a2,a1,a3), (a2,a3,a4), (a3,a2,a4) }.
std::vector<Triplet> enumerate_triplets(const TripletConfig& cfg);

/// True when the 4-set carries exactly the canonical two-triplet chain.
bool is_two_triplet_chain(const std::array<long, 4>& freqs);

/// Flat key=value serialization of the configuration.
std::string config_to_kv(const TripletConfig& cfg);
TripletConfig config_from_kv(const std::string& text);

} // namespace kirchhoff

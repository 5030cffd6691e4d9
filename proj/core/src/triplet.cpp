#include "kirchhoff/triplet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kirchhoff {

double TripletConfig::s123() const {
    return alpha(0) * alpha(0) + alpha(1) * alpha(1) + alpha(2) * alpha(2);
}
double TripletConfig::s234() const {
    return alpha(1) * alpha(1) + alpha(2) * alpha(2) + alpha(3) * alpha(3);
}
double TripletConfig::measure_factor() const {
    if (measure == MeasureConvention::Normalized) return 1.0;
    return std::pow(2.0 * std::numbers::pi, d);
}

TripletConfig make_config(long m, long p, int d) {
    if (m < 2) throw std::invalid_argument("make_config: need m >= 2");
    if (m >= p) throw std::invalid_argument("make_config: need m < p");
    if (d < 1) throw std::invalid_argument("make_config: need d >= 1");

    TripletConfig c;
    c.m = m;
    c.p = p;
    c.d = d;
    c.m1 = (d == 1) ? 1 : 2;
    c.alphas = {m, m + p, 2 * m + p, 3 * m + 2 * p};
    c.sigma = double(m) / double(p);

    const std::int64_t a1 = c.alphas[0], a2 = c.alphas[1], a3 = c.alphas[2], a4 = c.alphas[3];
    const std::int64_t q1 = a1 * a1, q2 = a2 * a2, q3 = a3 * a3, q4 = a4 * a4;
    c.A = {{{q1 + q2 + q3, -(q3 - q2)}, {-(q3 - q2), q2 + q3 + q4}}};
    c.detA = q1 * q4 + (q1 + q4) * (q2 + q3) + 4 * q2 * q3;
    const std::int64_t det_direct = c.A[0][0] * c.A[1][1] - c.A[0][1] * c.A[1][0];
    if (c.detA != det_direct)
        throw std::logic_error("make_config: determinant identity violated");

    c.gamma = double(q2 + q3 + q4) / double(q1 + q2 + q3);
    c.mu1 = double(q3 - q2) / double(q2 + q3 + q4);
    c.mu2 = double(q3 - q2) / double(q1 + q2 + q3);
    c.tilde_mu1 = c.mu1 / c.sigma - 1.0 / 3.0;
    c.tilde_mu2 = c.mu2 / c.sigma - 1.0;
    return c;
}

std::vector<Triplet> triplets_of(const std::array<long, 4>& freqs) {
    std::vector<Triplet> out;
    for (long a : freqs)
        for (long b : freqs) {
            const long lam = a + b;
            if (std::find(freqs.begin(), freqs.end(), lam) != freqs.end())
                out.push_back({a, b, lam});
        }
    return out;
}

std::vector<Triplet> enumerate_triplets(const TripletConfig& cfg) {
    auto got = triplets_of(cfg.alphas);
    if (!is_two_triplet_chain(cfg.alphas))
        throw std::logic_error("enumerate_triplets: support does not carry the two-triplet chain");
    return got;
}

bool is_two_triplet_chain(const std::array<long, 4>& freqs) {
    const auto got = triplets_of(freqs);
    const long a1 = freqs[0], a2 = freqs[1], a3 = freqs[2], a4 = freqs[3];
    const std::vector<Triplet> want = {
        {a1, a2, a3}, {a2, a1, a3}, {a2, a3, a4}, {a3, a2, a4}};
    if (got.size() != want.size()) return false;
    for (const auto& t : want)
        if (std::find(got.begin(), got.end(), t) == got.end()) return false;
    return true;
}

std::string config_to_kv(const TripletConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "m = " << cfg.m << "\n"
       << "p = " << cfg.p << "\n"
       << "d = " << cfg.d << "\n"
       << "m1 = " << cfg.m1 << "\n"
       << "alpha1 = " << cfg.alphas[0] << "\n"
       << "alpha2 = " << cfg.alphas[1] << "\n"
       << "alpha3 = " << cfg.alphas[2] << "\n"
       << "alpha4 = " << cfg.alphas[3] << "\n"
       << "sigma = " << cfg.sigma << "\n"
       << "gamma = " << cfg.gamma << "\n"
       << "mu1 = " << cfg.mu1 << "\n"
       << "mu2 = " << cfg.mu2 << "\n"
       << "tilde_mu1 = " << cfg.tilde_mu1 << "\n"
       << "tilde_mu2 = " << cfg.tilde_mu2 << "\n"
       << "detA = " << cfg.detA << "\n"
       << "delta1 = " << cfg.delta1 << "\n"
       << "measure = " << (cfg.measure == MeasureConvention::Normalized ? "normalized" : "two_pi_weighted")
       << "\n";
    return os.str();
}

TripletConfig config_from_kv(const std::string& text) {
    long m = 0, p = 0;
    int d = 1;
    double delta1 = 1.0;
    std::string measure = "normalized";
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t\r");
            return (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "m") m = std::stol(val);
        else if (key == "p") p = std::stol(val);
        else if (key == "d") d = std::stoi(val);
        else if (key == "delta1") delta1 = std::stod(val);
        else if (key == "measure") measure = val;
    }
    TripletConfig cfg = make_config(m, p, d);
    cfg.delta1 = delta1;
    cfg.measure = (measure == "two_pi_weighted") ? MeasureConvention::TwoPiWeighted
                                                 : MeasureConvention::Normalized;
    return cfg;
}

} // namespace kirchhoff

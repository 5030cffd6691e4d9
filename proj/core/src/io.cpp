#include "kirchhoff/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace kirchhoff {

using nlohmann::json;

namespace {
json cplx_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json config_json(const TripletConfig& cfg) {
    return json{{"m", cfg.m},
                {"p", cfg.p},
                {"d", cfg.d},
                {"m1", cfg.m1},
                {"alphas", cfg.alphas},
                {"sigma", cfg.sigma},
                {"gamma", cfg.gamma},
                {"mu1", cfg.mu1},
                {"mu2", cfg.mu2},
                {"detA", cfg.detA},
                {"delta1", cfg.delta1},
                {"measure", cfg.measure == MeasureConvention::Normalized ? "normalized"
                                                                         : "two_pi_weighted"}};
}

json plan_json(const SynthesisPlan& p) {
    return json{{"eps", p.eps},
                {"q1", p.q1},
                {"q2", p.q2},
                {"a1", p.a1},
                {"a2", p.a2},
                {"b", p.b},
                {"s", {p.s1, p.s2, p.s3, p.s4}},
                {"c1", p.c1},
                {"r1", p.r1},
                {"eps0", p.eps0},
                {"A1", p.consts.A1},
                {"A2", p.consts.A2},
                {"B", p.consts.B},
                {"c123", p.consts.c123},
                {"c234", p.consts.c234},
                {"rho123", p.consts.rho123},
                {"rho234", p.consts.rho234},
                {"E1", p.consts.E1},
                {"E2", p.consts.E2},
                {"flags",
                 {{"A1_le_q2_over_9", p.flag_A1_q2},
                  {"A1_le_a1_q2_32", p.flag_A1_q2_32},
                  {"q2_in_ball", p.flag_q2}}}};
}
} // namespace

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << content;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const EffConstants& k) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os.precision(15);
    os << "t,S1,S2,S3,S4,phi123,phi234,rho123,rho234,N1,calN,energy\n";
    for (std::size_t i = 0; i < traj.size(); i++) {
        const double* r = traj.row(i);
        double N1 = 0;
        for (int n = 0; n < 4; n++) N1 += k.alpha(n) * k.alpha(n) * r[n];
        os << traj.t[i] << ',' << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ','
           << r[4] << ',' << r[5] << ',' << k.rho123 << ',' << k.rho234 << ',' << N1 << ','
           << std::sqrt(2.0 * N1) << ',' << 0.0 << '\n';
    }
}

void write_series_csv(const std::string& path, const ObsSeries& s,
                      const TripletConfig& cfg) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os.precision(15);
    os << "t,S1,S2,S3,S4,phi123,phi234,rho123,rho234,N1,calN,energy\n";
    std::size_t ir = 0;
    for (std::size_t i = 0; i < s.t.size(); i++) {
        while (ir + 1 < s.t_raw.size() && s.t_raw[ir + 1] <= s.t[i]) ir++;
        double N1 = 0;
        for (int n = 0; n < 4; n++) N1 += cfg.alpha(n) * cfg.alpha(n) * s.S_f[i][n];
        os << s.t[i] << ',' << s.S_f[i][0] << ',' << s.S_f[i][1] << ',' << s.S_f[i][2] << ','
           << s.S_f[i][3] << ',' << s.phi123[i] << ',' << s.phi234[i] << ','
           << s.rho123_f[i] << ',' << s.rho234_f[i] << ',' << N1 << ',' << s.calN_f[i] << ','
           << (ir < s.energy_raw.size() ? s.energy_raw[ir] : 0.0) << '\n';
    }
}

void write_chart_csv(const std::string& path, const std::string& chart_name,
                     const Trajectory& traj, const std::string& columns) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os.precision(15);
    os << "# chart=" << chart_name << "\n";
    os << "t," << columns << "\n";
    for (std::size_t i = 0; i < traj.size(); i++) {
        os << traj.t[i];
        const double* r = traj.row(i);
        for (int j = 0; j < traj.dim; j++) os << ',' << r[j];
        os << '\n';
    }
}

std::string itinerary_json(const TargetResult& t) {
    json j{{"sigma", t.sigma},
           {"a0", t.a},
           {"M0", t.M0},
           {"T", t.T},
           {"success", t.success},
           {"achieved_prefix", t.achieved_prefix},
           {"bracket_width", t.bracket_width},
           {"symbols_prescribed", t.itinerary.prescribed},
           {"symbols_realized", t.itinerary.realized},
           {"t_j", t.itinerary.t_section},
           {"theta_j", t.itinerary.theta},
           {"t_up", t.itinerary.t_up},
           {"t_down", t.itinerary.t_down},
           {"eta2_max_I", t.itinerary.eta2_max_I},
           {"eta2_min_E", t.itinerary.eta2_min_E},
           {"min_eta2", t.itinerary.min_eta2},
           {"max_eta2", t.itinerary.max_eta2},
           {"sup_dev_xi1", t.itinerary.sup_dev_xi1},
           {"sup_dev_eta1", t.itinerary.sup_dev_eta1},
           {"start", {{"xi1", t.start.xi1}, {"eta1", t.start.eta1}, {"eta2", t.start.eta2}}},
           {"start_state", t.start_state},
           {"start_state_full_precision", t.start_state_str},
           {"message", t.message}};
    return j.dump(2);
}

std::string certificate_json(const TransversalityCertificate& c) {
    json samples = json::array();
    for (const auto& s : c.samples)
        samples.push_back({{"tau", s.tau}, {"gap", s.gap}, {"sigma_M", s.sigma_M}});
    json j{{"sigma", c.sigma},
           {"a0", c.a},
           {"tau_bracket", {c.tau_lo, c.tau_hi}},
           {"gap_bracket", {c.gap_lo, c.gap_hi}},
           {"sign_change_bracketed", c.sign_change_bracketed},
           {"slope0", c.slope0},
           {"sigma_Mslope", c.sigma_Mslope},
           {"orientation", c.orientation},
           {"ratio", c.ratio},
           {"max_discrepancy", c.max_discrepancy},
           {"samples", samples}};
    return j.dump(2);
}

std::string datum_json(const DatumSpec& spec, const DatumReport& rep) {
    json z1 = json::array(), z2 = json::array();
    for (int n = 0; n < 4; n++) {
        z1.push_back(cplx_json(spec.z1[n]));
        z2.push_back(cplx_json(spec.z2[n]));
    }
    json j{{"S_target", spec.S_target},
           {"phi123_0", spec.phi123_0},
           {"phi234_0", spec.phi234_0},
           {"r_n", spec.rp.r},
           {"psi_n", spec.rp.psi},
           {"z1", z1},
           {"z2", z2},
           {"k_n", spec.k},
           {"report",
            {{"S_residual", rep.S_residual},
             {"phi123_residual", rep.phi123_residual},
             {"phi234_residual", rep.phi234_residual},
             {"c123_residual", rep.c123_residual},
             {"c234_residual", rep.c234_residual},
             {"worst_identity", rep.worst_identity},
             {"identities_ok", rep.identities_ok},
             {"norm1_sq", rep.norm1_sq},
             {"norm_m1_sq", rep.norm_m1_sq},
             {"norm_bound_1", rep.norm_bound_1},
             {"norm_bound_m1", rep.norm_bound_m1},
             {"norms_ok", rep.norms_ok},
             {"in_ball", rep.in_ball}}}};
    return j.dump(2);
}

std::string manifest_json(const Experiment& ex) {
    json osc{{"A_eps", ex.oscillation.A_eps},
             {"B_eps", ex.oscillation.B_eps},
             {"delta_eps", ex.oscillation.delta_eps},
             {"prescribed", ex.oscillation.prescribed_count},
             {"detected", ex.oscillation.detected_count},
             {"I_start", ex.oscillation.I_start},
             {"I_end", ex.oscillation.I_end},
             {"E_start", ex.oscillation.E_start},
             {"E_end", ex.oscillation.E_end},
             {"alternating", ex.oscillation.alternating},
             {"extrema_ok", ex.oscillation.extrema_ok},
             {"band_ok", ex.oscillation.band_ok},
             {"pass", ex.oscillation.pass}};
    json j{{"config", config_json(ex.cfg)},
           {"plan", plan_json(ex.plan)},
           {"itinerary", json::parse(itinerary_json(ex.target))},
           {"t_end", ex.t_end},
           {"B", ex.B},
           {"integrator",
            {{"accepted", ex.stats.n_accepted},
             {"rejected", ex.stats.n_rejected},
             {"rhs_evals", ex.stats.n_rhs},
             {"step_underflow", ex.stats.step_underflow}}},
           {"diagnostics",
            {{"energy_drift", ex.energy_drift},
             {"rho123_excursion", ex.rho123_excursion},
             {"rho234_excursion", ex.rho234_excursion},
             {"polar_ok", ex.polar_ok},
             {"gronwall_sup_psi", ex.gronwall.sup_psi},
             {"gronwall_paper_threshold", ex.gronwall.threshold_paper},
             {"gronwall_filtered_S_gap_max", ex.gronwall.filtered_S_gap_max},
             {"gronwall_detrended_S_gap_max", ex.gronwall.detrended_S_gap_max},
             {"gronwall_S_gap_mean", ex.gronwall.S_gap_mean},
             {"gronwall_gate", ex.gronwall.gate},
             {"gronwall_pass_gate", ex.gronwall.pass_gate},
             {"gronwall_pass_gate_detrended", ex.gronwall.pass_gate_detrended},
             {"datum_identities_ok", ex.datum_report.identities_ok},
             {"datum_worst_identity", ex.datum_report.worst_identity}}},
           {"oscillation", osc},
           {"oscillation_auto_centered",
            {{"A", ex.oscillation_auto.A_eps},
             {"B", ex.oscillation_auto.B_eps},
             {"detected", ex.oscillation_auto.detected_count},
             {"alternating", ex.oscillation_auto.alternating},
             {"pass", ex.oscillation_auto.pass}}},
           {"pass", ex.oscillation.pass && ex.datum_report.identities_ok}};
    return j.dump(2);
}

std::string scaling_json(const ScalingResult& s) {
    json j{{"eps", s.eps},
           {"amp_S4", s.amp_S4},
           {"amp_calN", s.amp_calN},
           {"period", s.period},
           {"exp_S", s.exp_S},
           {"exp_calN", s.exp_calN},
           {"exp_period", s.exp_period},
           {"exp_S_effective", s.exp_S_effective}};
    return j.dump(2);
}

std::string calibration_json(const CalibrationResult& c) {
    json j{{"slope_predicted", c.slope_predicted},
           {"slope_measured_normalized", c.slope_measured_normalized},
           {"slope_measured_two_pi", c.slope_measured_twopi},
           {"gap_normalized", c.gap_normalized},
           {"gap_two_pi", c.gap_twopi},
           {"selected", c.selected == MeasureConvention::Normalized ? "normalized"
                                                                    : "two_pi_weighted"},
           {"decisive", c.decisive}};
    return j.dump(2);
}

void write_plot_script(const std::string& path, const std::string& csv_path,
                       const OscillationReport& rep) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os.precision(15);
    os << "# gnuplot script: norm oscillation with shaded up/down intervals\n";
    os << "set datafile separator ','\n";
    os << "set xlabel 't'\nset ylabel 'calN(t)'\nset key off\n";
    int idx = 1;
    for (std::size_t j = 0; j < rep.I_start.size(); j++)
        os << "set object " << idx++ << " rect from " << rep.I_start[j]
           << ", graph 0 to " << rep.I_end[j]
           << ", graph 1 fc rgb '#ffdddd' behind\n";
    for (std::size_t j = 0; j < rep.E_start.size(); j++)
        os << "set object " << idx++ << " rect from " << rep.E_start[j]
           << ", graph 0 to " << rep.E_end[j]
           << ", graph 1 fc rgb '#ddddff' behind\n";
    os << "A = " << rep.A_eps << "\nB = " << rep.B_eps << "\n";
    os << "plot '" << csv_path << "' using 1:11 with lines lw 1.2, \\\n"
       << "     A with lines dt 2, A+B with lines dt 3, A-B with lines dt 3\n";
    os << "pause -1\n";
}

} // namespace kirchhoff

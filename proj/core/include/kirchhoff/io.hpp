#pragma once
#include <string>

#include "kirchhoff/harness.hpp"
#include "kirchhoff/manifold.hpp"

namespace kirchhoff {

/// Observable series CSV with the canonical header
/// t,S1,S2,S3,S4,phi123,phi234,rho123,rho234,N1,calN,energy.
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const EffConstants& k);

/// Filtered exact-run series in the same column layout (energy from the
/// raw channel is interleaved by nearest time).
void write_series_csv(const std::string& path, const ObsSeries& series,
                      const TripletConfig& cfg);

/// Chart-state CSV with a `# chart=<name>` metadata header line.
void write_chart_csv(const std::string& path, const std::string& chart_name,
                     const Trajectory& traj, const std::string& columns);

std::string itinerary_json(const TargetResult& target);
std::string certificate_json(const TransversalityCertificate& cert);
std::string datum_json(const DatumSpec& spec, const DatumReport& report);
std::string manifest_json(const Experiment& ex);
std::string scaling_json(const ScalingResult& s);
std::string calibration_json(const CalibrationResult& c);

/// Gnuplot command file drawing calN(t) with the detected I_j/E_j shading.
void write_plot_script(const std::string& path, const std::string& csv_path,
                       const OscillationReport& rep);

void write_text_file(const std::string& path, const std::string& content);

} // namespace kirchhoff

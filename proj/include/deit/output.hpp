#pragma once

// File formats. CSV numbers carry 9 significant digits; JSON numbers are
// written by nlohmann::json (shortest round-trip form).
//
//   spectrum.csv      delta_p_MHz,im_chi_au,transmission
//   terms.csv         delta_p_MHz,linear_au,nonlinear_au,srs_au,total_au
//   populations.csv   one row, one column per sublevel (rho_am3 ... rho_cp4)
//   sweep.csv         swept key, [series key,] selected outputs
//   annotations.json  window/gain annotations of a spectrum
//   manifest.json     every resolved number that entered a solver

#include <string>
#include <vector>

#include "deit/simulation.hpp"

namespace deit {

std::string format_csv_number(double value);

std::string spectrum_csv(const Spectrum& spectrum);
std::string terms_csv(const std::vector<TermsRow>& rows);
std::string populations_csv(const PopulationState& state);
std::string sweep_csv(const SweepResult& result);

std::string annotations_json(const Spectrum& spectrum);
std::string conditions_json(const PreparedRun& run);

/// `command` and `outputs` are recorded alongside the resolved parameters.
std::string manifest_json(const PreparedRun& run, const std::string& command,
                          const std::vector<std::string>& outputs);
std::string sweep_manifest_json(const SimulationConfig& config, const std::string& command,
                                const std::vector<std::string>& outputs);

/// Writes `content` to dir/name, creating dir; throws std::runtime_error on I/O failure.
void write_file(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace deit

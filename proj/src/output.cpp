#include "deit/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace deit {

using nlohmann::ordered_json;

std::string format_csv_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

namespace {

std::string row(std::initializer_list<double> values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ',';
    out += format_csv_number(v);
  }
  return out + "\n";
}

ordered_json peak_json(const std::optional<PeakInfo>& p) {
  if (!p) return nullptr;
  return {{"center_MHz", p->center}, {"transmission", p->value}, {"fwhm_MHz", p->fwhm},
          {"prominence", p->prominence}};
}

ordered_json field_json(const FieldInput& f, const Field& resolved) {
  ordered_json j;
  j["rabi_MHz"] = resolved.rabi_mhz;
  j["detuning_MHz"] = resolved.detuning_mhz;
  j["from_power"] = f.from_power;
  if (f.from_power) {
    j["power_mW"] = f.power_mw;
    j["radius_mm"] = f.radius_mm;
    j["alpha"] = f.alpha;
    j["alpha_defaulted"] = f.alpha_defaulted;
  }
  return j;
}

const char* decay_name(DecayMode m) { return m == DecayMode::Literal ? "literal" : "trace_conserving"; }

ordered_json config_json(const SimulationConfig& c) {
  ordered_json j;
  ordered_json doc = ordered_json::object();
  for (const auto& e : c.entries) doc[e.section][e.key] = e.value;
  j["document"] = doc;
  j["fields"] = {{"coupling", field_json(c.coupling, c.fields.coupling)},
                 {"signal", field_json(c.signal, c.fields.signal)},
                 {"probe", field_json(c.probe, c.fields.probe)},
                 {"wavenumber_per_m", c.fields.wavenumber},
                 {"relative_linewidth_MHz", c.fields.relative_linewidth_mhz},
                 {"laser_mode", c.laser_mode == LaserMode::Independent ? "independent" : "phase_locked"}};
  j["cell"] = {{"top_source", c.top_source},
               {"temperature_C", c.cell.temperature_c},
               {"density_cm3", c.cell.density_cm3},
               {"cell_length_m", c.cell.cell_length_m},
               {"optical_depth", c.cell.optical_depth},
               {"optical_depth_auto", c.optical_depth_auto},
               {"doppler_width_MHz", c.doppler_width_mhz}};
  j["relaxation"] = {{"gamma_c_MHz", c.relax.gamma_c_mhz()},
                     {"top_ab_Hz", c.relax.top_ab_hz()},
                     {"top_ba_Hz", c.relax.top_ba_hz()},
                     {"zeeman_aa_Hz", c.relax.zeeman_aa_hz()},
                     {"zeeman_bb_Hz", c.relax.zeeman_bb_hz()},
                     {"gamma_a_Hz", c.relax.gamma_a_hz()},
                     {"gamma_b_Hz", c.relax.gamma_b_hz()},
                     {"ground_coherence_MHz", c.relax.ground_coherence_decay_mhz()},
                     {"optical_coherence_MHz", c.relax.optical_coherence_decay_mhz()},
                     {"gamma_ca_MHz", c.relax.gamma_ca_mhz()}};
  j["model"] = {{"decay_mode", decay_name(c.decay_mode)},
                {"doppler", c.doppler},
                {"quadrature_order", c.quadrature_order},
                {"ablate_srs", c.ablate_srs},
                {"window_search_half_width_MHz", kWindowSearchHalfWidth},
                {"gain_threshold", kGainThreshold},
                {"strong_inequality_factor", kStrongInequalityFactor}};
  j["grid"] = {{"start_MHz", c.grid.start_mhz},
               {"stop_MHz", c.grid.stop_mhz},
               {"count", c.grid.count},
               {"reference", c.grid.reference == GridReference::Signal ? "signal" : "absolute"}};
  if (c.sweep) {
    j["sweep"] = {{"parameter", c.sweep->parameter},
                  {"values", c.sweep->values},
                  {"series_parameter", c.sweep->series_parameter},
                  {"series_values", c.sweep->series_values}};
  }
  j["warnings"] = c.warnings;
  return j;
}

}  // namespace

std::string spectrum_csv(const Spectrum& s) {
  std::string out = "delta_p_MHz,im_chi_au,transmission\n";
  for (std::size_t i = 0; i < s.probe_detunings.size(); ++i)
    out += row({s.probe_detunings[i], s.im_chi[i], s.transmission[i]});
  return out;
}

std::string terms_csv(const std::vector<TermsRow>& rows) {
  std::string out = "delta_p_MHz,linear_au,nonlinear_au,srs_au,total_au\n";
  for (const auto& r : rows) out += row({r.delta_p, r.linear, r.nonlinear, r.srs, r.total});
  return out;
}

std::string populations_csv(const PopulationState& state) {
  const LevelScheme& scheme = LevelScheme::cesium_d1();
  std::string header, values;
  for (int i = 0; i < LevelScheme::kTotalSublevels; ++i) {
    header += (i ? "," : "") + std::string("rho_") + sublevel_label(scheme.sublevel(i));
    values += (i ? "," : "") + format_csv_number(state.rho[static_cast<std::size_t>(i)]);
  }
  return header + "\n" + values + "\n";
}

std::string sweep_csv(const SweepResult& r) {
  const auto& spec = r.spec;
  const bool series = !spec.series_parameter.empty();
  std::string out = spec.parameter;
  if (series) out += "," + spec.series_parameter;
  switch (spec.output) {
    case SweepOutput::Populations: out += ",rho_b0b0,rho_b1b1,rho_a1a1,rho_c1c1\n"; break;
    case SweepOutput::Gain:
      out += ",raman_transmission,max_transmission,gain,gain_center_MHz,gain_fwhm_MHz,rho_b0b0,rho_b1b1,optical_depth,top_rate_Hz\n";
      break;
    case SweepOutput::Spectrum: out += ",delta_p_MHz,im_chi_au,transmission\n"; break;
  }
  for (const auto& row_ : r.rows) {
    std::string prefix = format_csv_number(row_.value);
    if (series) prefix += "," + row_.series;
    const auto& p = row_.populations;
    switch (spec.output) {
      case SweepOutput::Populations:
        out += prefix + "," + row({p.b0(), p.b1(), p.a1(), p.c1()});
        break;
      case SweepOutput::Gain: {
        // no gain: empty cells, so plots show gaps instead of fake zeros
        std::string g = row_.gain ? format_csv_number(row_.gain->gain) + "," +
                                        format_csv_number(row_.gain->center) + "," +
                                        format_csv_number(row_.gain->fwhm)
                                  : ",,";
        out += prefix + "," + format_csv_number(row_.raman_transmission) + "," +
               format_csv_number(row_.max_transmission) + "," + g + "," +
               row({p.b0(), p.b1(), row_.optical_depth, row_.top_rate_hz});
        break;
      }
      case SweepOutput::Spectrum:
        for (std::size_t i = 0; i < row_.spectrum.probe_detunings.size(); ++i)
          out += prefix + "," +
                 row({row_.spectrum.probe_detunings[i], row_.spectrum.im_chi[i], row_.spectrum.transmission[i]});
        break;
    }
  }
  return out;
}

std::string annotations_json(const Spectrum& s) {
  const auto& a = s.annotations;
  ordered_json j;
  j["doppler_averaged"] = s.doppler_averaged;
  j["srs_ablated"] = s.srs_ablated;
  j["optical_depth"] = s.optical_depth;
  j["first_window_nominal_MHz"] = a.first_window_nominal;
  j["second_window_nominal_MHz"] = a.second_window_nominal;
  j["first_window"] = peak_json(a.first_window);
  j["second_window"] = peak_json(a.second_window);
  if (a.gain) {
    j["gain"] = {{"gain", a.gain->gain}, {"center_MHz", a.gain->center}, {"fwhm_MHz", a.gain->fwhm}};
  } else {
    j["gain"] = nullptr;
  }
  j["min_transmission"] = a.min_transmission;
  j["max_transmission"] = a.max_transmission;
  return j.dump(2) + "\n";
}

std::string conditions_json(const PreparedRun& run) {
  const auto& c = run.conditions;
  const auto& t = run.setup.tripod;
  ordered_json j;
  j["factor"] = kStrongInequalityFactor;
  j["eit_ratio"] = c.r4;
  j["eit"] = c.eit;
  j["gain_ratio"] = c.r5;
  j["gain"] = c.gain;
  j["doppler_eit_ratio"] = c.r6;
  j["doppler_eit"] = c.doppler_eit;
  j["doppler_width_MHz"] = run.config.doppler_width_mhz;
  j["tripod"] = {{"omega_c_MHz", t.omega_c}, {"omega_s_MHz", t.omega_s}, {"omega_p_MHz", t.omega_p},
                 {"gamma_gg_MHz", t.gamma_gg}, {"gamma_oc_MHz", t.gamma_oc},
                 {"rho_b0b0", t.populations.b0}, {"rho_b1b1", t.populations.b1}};
  return j.dump(2) + "\n";
}

std::string manifest_json(const PreparedRun& run, const std::string& command,
                          const std::vector<std::string>& outputs) {
  ordered_json j;
  j["command"] = command;
  j["outputs"] = outputs;
  j["config"] = config_json(run.config);
  const auto& t = run.setup.tripod;
  j["tripod"] = {{"omega_c_MHz", t.omega_c},
                 {"omega_s_MHz", t.omega_s},
                 {"omega_p_MHz", t.omega_p},
                 {"delta_c_MHz", t.delta_c},
                 {"delta_s_MHz", t.delta_s},
                 {"gamma_gg_MHz", t.gamma_gg},
                 {"gamma_oc_MHz", t.gamma_oc},
                 {"gamma_ca_MHz", t.gamma_c1a1()},
                 {"gamma_raman_MHz", t.gamma_raman()},
                 {"rho_b0b0", t.populations.b0},
                 {"rho_b1b1", t.populations.b1},
                 {"rho_a1a1", t.populations.a1},
                 {"rho_c1c1", t.populations.c1}};
  std::vector<double> pops(run.populations.rho.begin(), run.populations.rho.end());
  j["populations"] = pops;
  std::vector<std::string> warnings = run.config.warnings;
  warnings.insert(warnings.end(), run.populations.warnings.begin(), run.populations.warnings.end());
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

std::string sweep_manifest_json(const SimulationConfig& config, const std::string& command,
                                const std::vector<std::string>& outputs) {
  ordered_json j;
  j["command"] = command;
  j["outputs"] = outputs;
  j["config"] = config_json(config);
  j["note"] = "per-point values follow from the document with the swept key replaced";
  return j.dump(2) + "\n";
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace deit

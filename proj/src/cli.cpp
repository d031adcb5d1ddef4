#include "deit/cli.hpp"

#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "deit/error.hpp"
#include "deit/output.hpp"

#ifndef DEIT_PRESET_DIR
#define DEIT_PRESET_DIR "presets"
#endif

namespace deit {

std::string default_preset_dir() { return DEIT_PRESET_DIR; }

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string figure_id;
  std::string preset_dir = default_preset_dir();
  bool ablate_srs = false;
  bool literal_decay = false;
  bool stationary = false;
  int quadrature = 0;
  int jobs = 1;
};

SimulationConfig load_with_flags(const std::string& path, const Options& o) {
  SimulationConfig c = load_config(path);
  std::vector<std::pair<std::string, std::string>> ov;
  if (o.ablate_srs) ov.emplace_back("ablate_srs", "true");
  if (o.literal_decay) ov.emplace_back("decay_mode", "literal");
  if (o.stationary) ov.emplace_back("doppler", "false");
  if (o.quadrature > 0) ov.emplace_back("quadrature_order", std::to_string(o.quadrature));
  return ov.empty() ? c : with_overrides(c, ov);
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

void cmd_spectrum(const SimulationConfig& c, const Options& o, const std::string& command, std::ostream& out,
                  std::ostream& err) {
  const SpectrumRun run = run_spectrum(c, o.jobs);
  print_warnings(c.warnings, err);
  print_warnings(run.prepared.populations.warnings, err);
  const auto terms = susceptibility_terms(run.prepared, run.spectrum.probe_detunings, o.jobs);
  write_file(o.out_dir, "spectrum.csv", spectrum_csv(run.spectrum));
  write_file(o.out_dir, "annotations.json", annotations_json(run.spectrum));
  write_file(o.out_dir, "terms.csv", terms_csv(terms));
  write_file(o.out_dir, "manifest.json",
             manifest_json(run.prepared, command, {"spectrum.csv", "annotations.json", "terms.csv"}));
  const auto& a = run.spectrum.annotations;
  out << "points " << run.spectrum.probe_detunings.size() << ", T in [" << format_csv_number(a.min_transmission)
      << ", " << format_csv_number(a.max_transmission) << "]";
  if (a.gain) out << ", gain " << format_csv_number(a.gain->gain) << " at " << format_csv_number(a.gain->center)
                  << " MHz, fwhm " << format_csv_number(a.gain->fwhm) << " MHz";
  else out << ", no gain";
  out << "\nwrote " << o.out_dir << "\n";
}

void cmd_populations(const SimulationConfig& c, const Options& o, const std::string& command,
                     std::ostream& out, std::ostream& err) {
  const PreparedRun run = prepare_run(c);
  print_warnings(c.warnings, err);
  print_warnings(run.populations.warnings, err);
  write_file(o.out_dir, "populations.csv", populations_csv(run.populations));
  write_file(o.out_dir, "manifest.json", manifest_json(run, command, {"populations.csv"}));
  out << "rho_b0b0 " << format_csv_number(run.populations.b0()) << ", rho_b1b1 "
      << format_csv_number(run.populations.b1()) << ", rho_c1c1 " << format_csv_number(run.populations.c1())
      << "\nwrote " << o.out_dir << "\n";
}

void cmd_sweep(const SimulationConfig& c, const Options& o, const std::string& command, std::ostream& out,
               std::ostream& err) {
  if (!c.sweep) throw ConfigError(0, "sweep", "document has no [sweep] section");
  print_warnings(c.warnings, err);
  const SweepResult r = run_sweep(c, o.jobs);
  write_file(o.out_dir, "sweep.csv", sweep_csv(r));
  write_file(o.out_dir, "manifest.json", sweep_manifest_json(c, command, {"sweep.csv"}));
  out << "rows " << r.rows.size() << "\nwrote " << o.out_dir << "\n";
}

void cmd_conditions(const SimulationConfig& c, const Options& o, std::ostream& out) {
  const PreparedRun run = prepare_run(c);
  const std::string json = conditions_json(run);
  if (!o.out_dir.empty()) write_file(o.out_dir, "conditions.json", json);
  out << json;
}

void cmd_figure(const Options& o, std::ostream& out, std::ostream& err) {
  const auto path = std::filesystem::path(o.preset_dir) / ("fig" + o.figure_id + ".ini");
  if (!std::filesystem::exists(path)) throw ConfigError(0, o.figure_id, "unknown figure id (no " + path.string() + ")");
  const SimulationConfig c = load_with_flags(path.string(), o);
  Options oo = o;
  if (oo.out_dir.empty()) oo.out_dir = "figure_" + o.figure_id;
  const std::string command = "figure " + o.figure_id;
  if (c.sweep) cmd_sweep(c, oo, command, out, err);
  else cmd_spectrum(c, oo, command, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DEIT tripod probe-amplification simulator"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool need_config) {
    if (need_config) sub->add_option("--config", o.config_path, "configuration document")->required();
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_flag("--ablate-srs", o.ablate_srs, "drop the stimulated Raman term");
    sub->add_flag("--literal-decay", o.literal_decay, "no spontaneous repopulation of the ground states");
    sub->add_flag("--stationary", o.stationary, "skip the Doppler average");
    sub->add_option("--quadrature", o.quadrature, "velocity nodes per panel")->check(CLI::Range(8, 4096));
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 256));
  };
  auto* spectrum = app.add_subcommand("spectrum", "probe transmission spectrum");
  add_common(spectrum, true);
  auto* populations = app.add_subcommand("populations", "steady-state Zeeman populations");
  add_common(populations, true);
  auto* sweep = app.add_subcommand("sweep", "parameter sweep from the [sweep] section");
  add_common(sweep, true);
  auto* conditions = app.add_subcommand("conditions", "EIT and gain inequalities");
  add_common(conditions, true);
  auto* figure = app.add_subcommand("figure", "reproduce a figure dataset from its preset");
  add_common(figure, false);
  figure->add_option("id", o.figure_id, "1b, 2a, 2b, 2d, 4a, 4b, 5a, 5b")->required();
  figure->add_option("--presets", o.preset_dir, "preset directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (figure->parsed()) {
      cmd_figure(o, out, err);
      return kExitOk;
    }
    if (o.out_dir.empty()) o.out_dir = "out";
    const SimulationConfig c = load_with_flags(o.config_path, o);
    if (spectrum->parsed()) cmd_spectrum(c, o, "spectrum", out, err);
    else if (populations->parsed()) cmd_populations(c, o, "populations", out, err);
    else if (sweep->parsed()) cmd_sweep(c, o, "sweep", out, err);
    else cmd_conditions(c, o, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolverError;
  }
}

}  // namespace deit

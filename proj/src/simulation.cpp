#include "deit/simulation.hpp"

#include <cmath>

#include "deit/error.hpp"
#include "deit/parallel.hpp"
#include "deit/units.hpp"

namespace deit {

TripodParams tripod_params(const SimulationConfig& config, const PopulationState& populations) {
  TripodParams p;
  p.omega_c = config.fields.coupling.rabi_mhz;
  p.omega_s = config.fields.signal.rabi_mhz;
  p.omega_p = config.fields.probe.rabi_mhz;
  p.delta_c = config.fields.coupling.detuning_mhz;
  p.delta_s = config.fields.signal.detuning_mhz;
  p.delta_p = p.delta_s;
  p.gamma_gg = config.relax.ground_coherence_decay_mhz();
  p.gamma_oc = config.relax.optical_coherence_decay_mhz();
  p.gamma_ca = config.relax.gamma_ca_mhz();
  p.relative_linewidth = config.fields.relative_linewidth_mhz;
  p.populations = {populations.b0(), populations.b1(), populations.a1(), populations.c1()};
  return p;
}

PreparedRun prepare_run(const SimulationConfig& config) {
  PreparedRun run;
  run.config = config;
  try {
    run.populations = steady_populations(config.fields, config.relax, config.decay_mode);
  } catch (const SolverError& e) {
    char ctx[256];
    std::snprintf(ctx, sizeof ctx, " [top_rate_Hz=%.9g, coupling=%.9g MHz, signal=%.9g MHz, probe=%.9g MHz]",
                  config.relax.top_ab_hz(), config.fields.coupling.rabi_mhz,
                  config.fields.signal.rabi_mhz, config.fields.probe.rabi_mhz);
    throw SolverError(e.what() + std::string(ctx));
  }
  run.setup.tripod = tripod_params(config, run.populations);
  run.setup.optical_depth = config.cell.optical_depth;
  run.setup.doppler_width_mhz = config.doppler_width_mhz;
  run.setup.quadrature_order = config.quadrature_order;
  run.setup.ablate_srs = config.ablate_srs;
  run.conditions = check_conditions(run.setup.tripod, config.doppler_width_mhz);
  return run;
}

SpectrumRun run_spectrum(const SimulationConfig& config, int jobs) {
  SpectrumRun out{prepare_run(config), {}};
  out.spectrum = transmission_spectrum(out.prepared.setup,
                                       config.grid.probe_grid(config.fields.signal.detuning_mhz), jobs);
  return out;
}

double raman_transmission(const PreparedRun& prepared) {
  const Spectrum s = transmission_spectrum(prepared.setup, {prepared.setup.tripod.delta_s}, 1);
  return s.transmission.front();
}

std::vector<TermsRow> susceptibility_terms(const PreparedRun& prepared, const std::vector<double>& grid,
                                           int jobs) {
  const SpectrumSetup& setup = prepared.setup;
  VelocityQuadrature quad = VelocityQuadrature::stationary();
  if (setup.doppler_width_mhz > 0.0)
    quad = VelocityQuadrature::gaussian(setup.doppler_width_mhz, units::kCesiumD1Wavenumber,
                                        setup.quadrature_order, setup.tripod.gamma_oc);
  const double ref = reference_average(setup.tripod.gamma_oc, quad);
  std::vector<TermsRow> rows(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    TermsRow r;
    r.delta_p = grid[i];
    TripodParams p = setup.tripod;
    p.delta_p = grid[i];
    const AveragedTerms t = doppler_average_terms(p, quad);
    r.linear = t.linear / ref;
    r.nonlinear = t.nonlinear / ref;
    r.srs = t.srs / ref;
    r.total = r.linear + r.nonlinear + (setup.ablate_srs ? 0.0 : r.srs);
    rows[i] = r;
  });
  return rows;
}

SweepResult run_sweep(const SimulationConfig& config, int jobs) {
  if (!config.sweep) throw ConfigError(0, "sweep", "document has no [sweep] section");
  SweepResult out;
  out.spec = *config.sweep;
  const auto& spec = out.spec;
  const std::vector<std::string> series =
      spec.series_values.empty() ? std::vector<std::string>{""} : spec.series_values;

  struct Point {
    std::string series;
    double value;
  };
  std::vector<Point> points;
  for (const auto& s : series)
    for (double v : spec.values) points.push_back({s, v});
  out.rows.resize(points.size());

  // Points run in parallel; each spectrum stays single-threaded so the
  // arithmetic is identical for every worker count.
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    std::vector<std::pair<std::string, std::string>> ov;
    if (!points[i].series.empty()) ov.emplace_back(spec.series_parameter, points[i].series);
    ov.emplace_back(spec.parameter, format_exact(points[i].value));
    const SimulationConfig point = with_overrides(config, ov);
    SweepRow row;
    row.value = points[i].value;
    row.series = points[i].series;
    row.optical_depth = point.cell.optical_depth;
    row.top_rate_hz = point.relax.top_ab_hz();
    if (spec.output == SweepOutput::Populations) {
      row.populations = steady_populations(point.fields, point.relax, point.decay_mode);
    } else {
      const PreparedRun prep = prepare_run(point);
      row.populations = prep.populations;
      row.raman_transmission = raman_transmission(prep);
      Spectrum s = transmission_spectrum(prep.setup, point.grid.probe_grid(point.fields.signal.detuning_mhz), 1);
      row.gain = s.annotations.gain;
      row.max_transmission = s.annotations.max_transmission;
      if (spec.output == SweepOutput::Spectrum) row.spectrum = std::move(s);
    }
    out.rows[i] = std::move(row);
  });
  return out;
}

}  // namespace deit

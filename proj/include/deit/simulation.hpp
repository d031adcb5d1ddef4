#pragma once

// Glue between a resolved SimulationConfig and the numerical modules:
// populations -> tripod parameters -> spectra, plus parameter sweeps.

#include <optional>
#include <string>
#include <vector>

#include "deit/config.hpp"
#include "deit/doppler.hpp"
#include "deit/populations.hpp"
#include "deit/tripod.hpp"

namespace deit {

struct PreparedRun {
  SimulationConfig config;
  PopulationState populations;
  SpectrumSetup setup;  // tripod parameters, OD, Doppler width, order, ablation
  ConditionReport conditions;
};

/// Solves the Zeeman populations and assembles the tripod parameters.
/// Solver errors are rethrown with the config's key parameters attached.
PreparedRun prepare_run(const SimulationConfig& config);

/// Tripod parameters for given populations. The dipole weights of the three
/// tripod transitions are already inside the Rabi frequencies.
TripodParams tripod_params(const SimulationConfig& config, const PopulationState& populations);

struct SpectrumRun {
  PreparedRun prepared;
  Spectrum spectrum;
};

SpectrumRun run_spectrum(const SimulationConfig& config, int jobs = 1);

/// Transmission at the Raman resonance delta_p = delta_s.
double raman_transmission(const PreparedRun& prepared);

/// Per-grid-point pieces of Im chi, averaged like the spectrum.
struct TermsRow {
  double delta_p = 0.0;
  double linear = 0.0;
  double nonlinear = 0.0;
  double srs = 0.0;
  double total = 0.0;
};
std::vector<TermsRow> susceptibility_terms(const PreparedRun& prepared,
                                           const std::vector<double>& grid, int jobs = 1);

struct SweepRow {
  double value = 0.0;
  std::string series;  // empty without a series
  PopulationState populations;
  double optical_depth = 0.0;
  double top_rate_hz = 0.0;
  double raman_transmission = 0.0;
  std::optional<GainInfo> gain;
  double max_transmission = 0.0;
  Spectrum spectrum;  // filled for spectrum output only
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // series-major, grid order inside a series
};

/// Runs config.sweep (must be set). Points are dispatched to `jobs` workers and
/// collected in order.
SweepResult run_sweep(const SimulationConfig& config, int jobs = 1);

}  // namespace deit

#pragma once

// Simulation configuration documents.
//
// Grammar: `[section]` headers, `key = value` lines, `#` or `;` comments.
// Units are part of key names (coupling_power_mW, top_rate_Hz, ...). Bad keys
// and over-specified chains are rejected with the line number and key.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deit/atom_config.hpp"
#include "deit/populations.hpp"

namespace deit {

struct ConfigEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
  /// line numbers are not part of the document's meaning
  bool operator==(const ConfigEntry& o) const {
    return section == o.section && key == o.key && value == o.value;
  }
};

enum class LaserMode { PhaseLocked, Independent };
enum class GridReference { Absolute, Signal };
enum class SweepOutput { Gain, Populations, Spectrum };

inline constexpr double kIndependentLaserLinewidthMHz = 0.5;

struct GridSpec {
  double start_mhz = -30.0;
  double stop_mhz = 40.0;
  int count = 1401;
  GridReference reference = GridReference::Absolute;
  /// Absolute probe detunings; `signal` grids are offsets from delta_s.
  std::vector<double> probe_grid(double delta_s_mhz) const;
  bool operator==(const GridSpec&) const = default;
};

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
  SweepOutput output = SweepOutput::Gain;
  std::string series_parameter;            // empty: single series
  std::vector<std::string> series_values;  // textual, applied like config values
  bool operator==(const SweepSpec&) const = default;
};

struct FieldInput {
  bool from_power = false;
  double power_mw = 0.0;
  double radius_mm = 0.0;
  double alpha = 0.0;
  bool alpha_defaulted = false;
  double rabi_mhz = 0.0;
  double detuning_mhz = 0.0;
  bool operator==(const FieldInput&) const = default;
};

struct SimulationConfig {
  std::vector<ConfigEntry> entries;  // canonical order

  // resolved values
  FieldInput coupling, signal, probe;
  FieldSet fields;
  RelaxationModel relax;
  CellConditions cell;
  std::string top_source;  // temperature_C | density_cm3 | top_rate_Hz
  double doppler_width_mhz = 0.0;
  bool optical_depth_auto = true;
  DecayMode decay_mode = DecayMode::TraceConserving;
  bool doppler = true;
  int quadrature_order = 64;
  bool ablate_srs = false;
  LaserMode laser_mode = LaserMode::PhaseLocked;
  GridSpec grid;
  std::optional<SweepSpec> sweep;
  std::vector<std::string> warnings;

  /// Raw value of a key, if present.
  std::optional<std::string> find(const std::string& key) const;
  bool operator==(const SimulationConfig& o) const;
};

SimulationConfig parse_config(const std::string& text);
SimulationConfig load_config(const std::string& path);

/// Resolve an entry list (used by parse_config and by sweeps).
SimulationConfig resolve_config(std::vector<ConfigEntry> entries);

/// Canonical document; parse_config(emit_config(c)) == c.
std::string emit_config(const SimulationConfig& config);

/// Replace or add `key = value` pairs and re-resolve. Keys are validated.
SimulationConfig with_overrides(const SimulationConfig& config,
                                const std::vector<std::pair<std::string, std::string>>& overrides);

/// Shortest exact decimal form used when writing numbers into documents.
std::string format_exact(double value);

/// Names of all keys accepted in documents.
std::vector<std::string> known_keys();

}  // namespace deit

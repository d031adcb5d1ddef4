#pragma once

// Steady-state Zeeman sublevel populations of the full 25-level system under
// coupling (a<->c, pi) and signal (b<->c, pi) driving. The weak probe does not
// enter the population balance.
//
// Unknown vector layout (57 reals):
//   [0, 25)   populations in LevelScheme::index order
//   [25, 39)  Re/Im pairs of rho_{a_i c_i}, i = -3..3
//   [39, 57)  Re/Im pairs of rho_{b_i c_i}, i = -4..4
// All rates in MHz; time in microseconds.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "deit/atom_config.hpp"

namespace deit {

enum class DecayMode {
  TraceConserving,  // excited decay returns to the ground sublevels by branching
  Literal,          // excited decay is a bare loss; steady state renormalised afterwards
};

struct PopulationState {
  std::array<double, LevelScheme::kTotalSublevels> rho{};
  std::vector<std::string> warnings;

  double at(Manifold manifold, int m) const;
  double trace() const;
  double manifold_total(Manifold manifold) const;

  double b0() const { return at(Manifold::B, 0); }
  double b1() const { return at(Manifold::B, 1); }
  double a1() const { return at(Manifold::A, 1); }
  double c1() const { return at(Manifold::C, 1); }
};

struct RateSystem {
  static constexpr int kPopulations = LevelScheme::kTotalSublevels;
  static constexpr int kUnknowns = kPopulations + 2 * (7 + 9);

  Eigen::MatrixXd matrix;          // d x / dt = matrix * x
  Eigen::RowVectorXd constraint_row;  // sum of populations
  int constraint_index = 0;        // row replaced by the trace constraint (b0 population)
  DecayMode mode = DecayMode::TraceConserving;
  bool degenerate = false;         // no rates and no fields at all
  std::string description;         // parameter summary for error messages

  /// Index of Re rho_{g_m c_m}; the imaginary part follows at +1.
  static int coherence_index(Manifold ground, int m);
};

RateSystem assemble_rate_system(const LevelScheme& scheme, const FieldSet& fields,
                                const RelaxationModel& relax,
                                DecayMode mode = DecayMode::TraceConserving);

/// Null-space solution normalised to unit trace. Degenerate systems return
/// the detailed-balance state; other singular systems throw SolverError.
PopulationState solve_steady_populations(const RateSystem& system);

/// rho_a = 1/14, rho_b = 1/18, rho_c = 0.
PopulationState detailed_balance_state();

/// Convenience: assemble + solve.
PopulationState steady_populations(const FieldSet& fields, const RelaxationModel& relax,
                                   DecayMode mode = DecayMode::TraceConserving);

struct PopulationRow {
  double top_rate_hz = 0.0;
  double rho_b0b0 = 0.0;
  double rho_b1b1 = 0.0;
  double rho_a1a1 = 0.0;
  double rho_c1c1 = 0.0;
};

/// One steady-state solve per ToP rate; other rates taken from `relax`.
std::vector<PopulationRow> population_vs_top_sweep(const std::vector<double>& top_rates_hz,
                                                   const FieldSet& fields,
                                                   const RelaxationModel& relax,
                                                   DecayMode mode = DecayMode::TraceConserving);

}  // namespace deit

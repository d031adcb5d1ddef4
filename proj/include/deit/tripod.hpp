#pragma once

// Probe susceptibility of the reduced tripod b0 - c1 - a1 - b1.
//
// Probe couples b0 <-> c1, signal b1 <-> c1, coupling a1 <-> c1. Rabi
// frequencies here are effective values; Clebsch-Gordan factors are absorbed.
// Sign convention: positive Im chi is absorption and equals Im(rho_b0c1) / Omega_p.

#include <array>
#include <complex>
#include <limits>

namespace deit {

struct TripodPopulations {
  double b0 = 1.0 / 18.0;
  double b1 = 1.0 / 18.0;
  double a1 = 1.0 / 14.0;
  double c1 = 0.0;
};

struct TripodParams {
  double omega_c = 0.0;
  double omega_s = 0.0;
  double omega_p = 0.0;
  double delta_c = 0.0;
  double delta_s = 0.0;
  double delta_p = 0.0;
  double gamma_gg = 0.0;  // ground coherence decay, MHz
  double gamma_oc = 0.0;  // c1-b0 and c1-b1 decay, MHz
  double gamma_ca = -1.0;  // c1-a1 decay, MHz; negative means "same as gamma_oc"
  double relative_linewidth = 0.0;  // added to the b0-b1 coherence decay only
  TripodPopulations populations;

  double delta_pc() const { return delta_p - delta_c; }
  double delta_ps() const { return delta_p - delta_s; }
  double delta_sc() const { return delta_s - delta_c; }
  /// Decay of the b0-b1 (Raman) coherence.
  double gamma_raman() const { return gamma_gg + relative_linewidth; }
  double gamma_c1a1() const { return gamma_ca < 0.0 ? gamma_oc : gamma_ca; }

  /// Throws InvalidParameter when decays are not positive or populations leave [0, 1].
  void validate() const;
};

struct SusceptibilityBreakdown {
  double linear_term = 0.0;
  double nonlinear_term = 0.0;  // |Omega_p|^2 (rho_c1 - rho_b0) piece of the second term
  double srs_term = 0.0;        // |Omega_s|^2 (rho_c1 - rho_b1) piece (Raman gain)
  double total_im_chi = 0.0;
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0, F = 0.0;
  /// Common prefactor of the second and third pieces.
  double raman_prefactor = 0.0;
};

/// Closed-form weak-probe expression, term by term. Units: 1/MHz.
SusceptibilityBreakdown closed_form_im_chi(const TripodParams& params);

/// Same as closed_form_im_chi with the SRS piece removed from the total.
SusceptibilityBreakdown srs_ablation(const TripodParams& params);

/// Two-level absorption of thermal atoms, (1/18) gamma / (gamma^2 + delta^2): the
/// normalisation reference of the arbitrary Im chi unit.
double two_level_reference(double gamma_oc, double delta_p);

enum Coherence { kB0C1 = 0, kB1C1, kA1C1, kB0A1, kB0B1, kB1A1 };

struct TripodCoherences {
  std::array<std::complex<double>, 6> rho{};
  /// Im(rho_b0c1) / Omega_p, comparable to closed_form_im_chi().total_im_chi.
  double im_chi() const;
  double omega_p = 0.0;
};

/// Exact steady state of the six coherence equations with populations held
/// fixed. The equations couple each coherence to the conjugate of others, so
/// they are solved as a 12x12 real system.
///
/// With `a1c1_feedback` false, rho_c1a1 is dropped from the b0-a1 and b1-a1
/// equations. That reduced system is what the closed form solves to leading
/// order in Omega_p; it is kept as a diagnostic of the closed-form gap.
TripodCoherences steady_state_coherences(const TripodParams& params, bool a1c1_feedback = true);

/// Right-hand side of the six coherence equations at `rho` (zero in steady state).
std::array<std::complex<double>, 6> coherence_rates(const TripodParams& params,
                                                    const std::array<std::complex<double>, 6>& rho);

inline constexpr double kStrongInequalityFactor = 10.0;

struct ConditionReport {
  double r4 = 0.0;  // |Os|^2 / (gamma_gg gamma_oc)
  double r5 = 0.0;  // rho_b1 |Os|^2 / (rho_b0 |Op|^2)
  double r6 = 0.0;  // |Os|^2 / (gamma_gg (gamma_oc + W_D))
  bool eit = false;           // r4 >= factor
  bool gain = false;          // r5 > 1
  bool doppler_eit = false;   // r6 >= factor
};

ConditionReport check_conditions(const TripodParams& params, double doppler_width_mhz,
                                 double factor = kStrongInequalityFactor);

}  // namespace deit

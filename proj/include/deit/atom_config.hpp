#pragma once

// Atomic system, field and relaxation data model for the Cs D1 tripod medium.
//
// Manifolds: |a> = 6S1/2 F=3 (7 sublevels), |b> = 6S1/2 F=4 (9 sublevels),
// |c> = 6P1/2 F'=4 (9 sublevels). Magnetic sublevels are degenerate (no
// Zeeman splitting is modelled).

#include <array>
#include <string>
#include <vector>

namespace deit {

enum class Manifold { A, B, C };

struct Sublevel {
  Manifold manifold;
  int m;
  bool operator==(const Sublevel&) const = default;
};

std::string sublevel_label(Sublevel s);

/// Zeeman-resolved level structure with dipole coupling weights.
///
/// Weights are the geometric (Wigner-Eckart) factors of the hyperfine-resolved
/// dipole matrix element relative to the fine-structure reduced element
/// <J||d||J'> in Edmonds' convention:
///
///   w = (-1)^(F-m) (F 1 F'; -m q m') (-1)^(J+I+F'+1) sqrt((2F+1)(2F'+1)) {J F I; F' J' 1}
///
/// so that sum over all ground sublevels of w^2 equals 1/(2J'+1) for every
/// excited sublevel and the spontaneous branching ratio is (2J'+1) w^2.
class LevelScheme {
 public:
  static constexpr int kTotalSublevels = 25;

  static LevelScheme cesium_d1();

  int sublevel_count(Manifold manifold) const;
  int max_m(Manifold manifold) const;
  bool has_sublevel(Manifold manifold, int m) const;

  /// Dense index: a(-3..3) -> 0..6, b(-4..4) -> 7..15, c(-4..4) -> 16..24.
  int index(Manifold manifold, int m) const;
  int index(Sublevel s) const { return index(s.manifold, s.m); }
  Sublevel sublevel(int index) const;

  /// Weight for the ground(m) <-> c(m_excited) transition; zero when |m - m_excited| > 1.
  double coupling_weight(Manifold ground, int m_ground, int m_excited) const;
  double pi_weight(Manifold ground, int m) const { return coupling_weight(ground, m, m); }
  double sigma_weight(Manifold ground, int m_ground, int m_excited) const;

  /// Spontaneous branching fraction c(m_excited) -> ground(m_ground).
  double branching(int m_excited, Manifold ground, int m_ground) const;

  int two_nuclear_spin() const { return two_i_; }

 private:
  LevelScheme(int two_i, int two_j_ground, int two_j_excited, int f_a, int f_b, int f_c);

  double geometric_weight(int f_ground, int m_ground, int m_excited) const;

  int two_i_;
  int two_j_ground_;
  int two_j_excited_;
  int f_a_;
  int f_b_;
  int f_c_;
  // [ground manifold 0=a,1=b][m_ground + 4][m_excited + 4]
  std::array<std::array<std::array<double, 9>, 9>, 2> weights_{};
};

struct Field {
  double rabi_mhz = 0.0;
  double detuning_mhz = 0.0;
  bool operator==(const Field&) const = default;
};

/// Coupling (a<->c, pi), signal (b<->c, pi) and probe (b<->c, sigma) fields.
struct FieldSet {
  Field coupling;
  Field signal;
  Field probe;
  double wavenumber = 0.0;              // rad/m, shared by all three fields
  double relative_linewidth_mhz = 0.0;  // extra signal/probe two-photon dephasing

  /// True when the probe is at least 5x weaker than both strong fields.
  bool weak_probe() const;
  bool operator==(const FieldSet&) const = default;
};

/// Spontaneous, transfer-of-population (ToP) and Zeeman-mixing rates.
///
/// ToP a->b is entered per destination sublevel; the reverse rate follows
/// detailed balance, top_ba = (9/7) top_ab. Derived totals:
///   Gamma_a = 9 top_ab + 6 zeeman_aa,   Gamma_b = 7 top_ba + 8 zeeman_bb.
class RelaxationModel {
 public:
  RelaxationModel() : RelaxationModel(4.6, 0.0, 0.0, 0.0) {}
  RelaxationModel(double gamma_c_mhz, double top_ab_hz, double zeeman_aa_hz, double zeeman_bb_hz);

  double gamma_c_mhz() const { return gamma_c_mhz_; }
  double top_ab_hz() const { return top_ab_hz_; }
  double top_ba_hz() const { return top_ba_hz_; }
  double zeeman_aa_hz() const { return zeeman_aa_hz_; }
  double zeeman_bb_hz() const { return zeeman_bb_hz_; }
  double gamma_a_hz() const { return gamma_a_hz_; }
  double gamma_b_hz() const { return gamma_b_hz_; }

  /// Decay of the ground coherences b1-b0, b1-a1, b0-a1 in MHz (equal to Gamma_b).
  double ground_coherence_decay_mhz() const { return ground_coherence_mhz_; }
  /// Decay of the optical coherences c1-b0, c1-b1 in MHz: (Gamma_c + Gamma_b)/2.
  double optical_coherence_decay_mhz() const { return optical_coherence_mhz_; }
  /// gamma_{c_i a_i} = (Gamma_c + Gamma_a)/2 in MHz.
  double gamma_ca_mhz() const { return gamma_ca_mhz_; }
  /// gamma_{c_i b_i} = (Gamma_c + Gamma_b)/2 in MHz.
  double gamma_cb_mhz() const { return optical_coherence_mhz_; }

  bool operator==(const RelaxationModel&) const = default;

 private:
  double gamma_c_mhz_;
  double top_ab_hz_;
  double top_ba_hz_;
  double zeeman_aa_hz_;
  double zeeman_bb_hz_;
  double gamma_a_hz_;
  double gamma_b_hz_;
  double ground_coherence_mhz_;
  double optical_coherence_mhz_;
  double gamma_ca_mhz_;
};

struct CellConditions {
  double temperature_c = 25.0;
  double density_cm3 = 5e10;
  double cell_length_m = 0.075;
  double optical_depth = 1.5;

  /// Throws InvalidParameter for non-physical values; returns soft warnings.
  std::vector<std::string> validate() const;
  bool operator==(const CellConditions&) const = default;
};

/// Omega = alpha * Gamma_c * sqrt(I / (2 I_sat)), I = P / (pi r^2).
double rabi_from_power(double power_mw, double beam_radius_mm, double cg_alpha,
                       double gamma_c_mhz = 4.6);

/// Inverse of rabi_from_power for alpha.
double cg_alpha_for(double rabi_mhz, double power_mw, double beam_radius_mm,
                    double gamma_c_mhz = 4.6);

/// Default per-field alpha values back-solved from the reference operating point
/// (30 mW / 1 mm -> 23 MHz, 10 mW / 0.5 mm -> 7 MHz, 20 uW / 0.5 mm -> 1 MHz).
double default_coupling_alpha();
double default_signal_alpha();
double default_probe_alpha();

/// gamma'_ab = kappa N in Hz, kappa = 6e-10 cm^3/s.
double top_rate_from_density(double density_cm3);
double density_from_top_rate(double top_rate_hz);

/// Two-parameter Arrhenius-type vapour density N(T) = N0 exp(-b/T), anchored at
/// 5e10 cm^-3 (25 C) and 1e12 cm^-3 (80 C).
double density_from_temperature(double temperature_c);
double temperature_from_density(double density_cm3);

/// Most probable thermal speed sqrt(2 k_B T / M) for Cs, m/s.
double most_probable_speed(double temperature_c);

/// Doppler width k u / 2pi in MHz.
double doppler_width(double temperature_c, double wavenumber);

}  // namespace deit

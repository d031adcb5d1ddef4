#include "deit/atom_config.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "deit/angular_momentum.hpp"
#include "deit/error.hpp"
#include "deit/units.hpp"

namespace deit {

namespace {

constexpr double kRoomTemperatureK = 298.15;  // 25 C
constexpr double kHotTemperatureK = 353.15;   // 80 C
constexpr double kRoomDensity = 5e10;         // cm^-3
constexpr double kHotDensity = 1e12;          // cm^-3

// Activation temperature b of N(T) = N_room exp(b (1/T_room - 1/T)).
double vapour_activation() {
  return std::log(kHotDensity / kRoomDensity) / (1.0 / kRoomTemperatureK - 1.0 / kHotTemperatureK);
}

char manifold_letter(Manifold m) {
  switch (m) {
    case Manifold::A: return 'a';
    case Manifold::B: return 'b';
    case Manifold::C: return 'c';
  }
  return '?';
}

}  // namespace

std::string sublevel_label(Sublevel s) {
  std::string out(1, manifold_letter(s.manifold));
  if (s.m < 0) out += "m";
  out += std::to_string(std::abs(s.m));
  return out;
}

// ---------------------------------------------------------------------------
// LevelScheme

LevelScheme::LevelScheme(int two_i, int two_j_ground, int two_j_excited, int f_a, int f_b,
                         int f_c)
    : two_i_(two_i),
      two_j_ground_(two_j_ground),
      two_j_excited_(two_j_excited),
      f_a_(f_a),
      f_b_(f_b),
      f_c_(f_c) {
  for (int g = 0; g < 2; ++g) {
    const int f = (g == 0) ? f_a_ : f_b_;
    for (int mg = -4; mg <= 4; ++mg) {
      for (int me = -4; me <= 4; ++me) {
        double w = 0.0;
        if (std::abs(mg) <= f && std::abs(me) <= f_c_ && std::abs(mg - me) <= 1) {
          w = geometric_weight(f, mg, me);
        }
        weights_[g][mg + 4][me + 4] = w;
      }
    }
  }
}

LevelScheme LevelScheme::cesium_d1() { return LevelScheme(7, 1, 1, 3, 4, 4); }

double LevelScheme::geometric_weight(int f_ground, int m_ground, int m_excited) const {
  const int q = m_ground - m_excited;
  const int two_f = 2 * f_ground;
  const int two_fe = 2 * f_c_;
  const double three_j =
      angular::wigner_3j(two_f, 2, two_fe, -2 * m_ground, 2 * q, 2 * m_excited);
  const double six_j =
      angular::wigner_6j(two_j_ground_, two_f, two_i_, two_fe, two_j_excited_, 2);
  // (J + I + F' + 1) is an integer for half-integer J and I.
  const int reduced_phase = (two_j_ground_ + two_i_ + two_fe + 2) / 2;
  const double reduced = ((reduced_phase % 2 == 0) ? 1.0 : -1.0) *
                         std::sqrt(static_cast<double>((two_f + 1) * (two_fe + 1))) * six_j;
  const double phase = ((f_ground - m_ground) % 2 == 0) ? 1.0 : -1.0;
  return phase * three_j * reduced;
}

int LevelScheme::max_m(Manifold manifold) const {
  switch (manifold) {
    case Manifold::A: return f_a_;
    case Manifold::B: return f_b_;
    case Manifold::C: return f_c_;
  }
  return 0;
}

int LevelScheme::sublevel_count(Manifold manifold) const { return 2 * max_m(manifold) + 1; }

bool LevelScheme::has_sublevel(Manifold manifold, int m) const {
  return std::abs(m) <= max_m(manifold);
}

int LevelScheme::index(Manifold manifold, int m) const {
  if (!has_sublevel(manifold, m)) {
    throw InvalidParameter("no sublevel m=" + std::to_string(m) + " in manifold " +
                           std::string(1, manifold_letter(manifold)));
  }
  switch (manifold) {
    case Manifold::A: return m + f_a_;
    case Manifold::B: return sublevel_count(Manifold::A) + m + f_b_;
    case Manifold::C:
      return sublevel_count(Manifold::A) + sublevel_count(Manifold::B) + m + f_c_;
  }
  return -1;
}

Sublevel LevelScheme::sublevel(int idx) const {
  const int na = sublevel_count(Manifold::A);
  const int nb = sublevel_count(Manifold::B);
  const int nc = sublevel_count(Manifold::C);
  if (idx < 0 || idx >= na + nb + nc) {
    throw InvalidParameter("sublevel index out of range: " + std::to_string(idx));
  }
  if (idx < na) return {Manifold::A, idx - f_a_};
  if (idx < na + nb) return {Manifold::B, idx - na - f_b_};
  return {Manifold::C, idx - na - nb - f_c_};
}

double LevelScheme::coupling_weight(Manifold ground, int m_ground, int m_excited) const {
  if (ground == Manifold::C) throw InvalidParameter("coupling weight needs a ground manifold");
  if (!has_sublevel(ground, m_ground) || !has_sublevel(Manifold::C, m_excited)) return 0.0;
  const int g = (ground == Manifold::A) ? 0 : 1;
  return weights_[g][m_ground + 4][m_excited + 4];
}

double LevelScheme::sigma_weight(Manifold ground, int m_ground, int m_excited) const {
  if (std::abs(m_ground - m_excited) != 1) {
    throw InvalidParameter("sigma transition needs |m_ground - m_excited| = 1");
  }
  return coupling_weight(ground, m_ground, m_excited);
}

double LevelScheme::branching(int m_excited, Manifold ground, int m_ground) const {
  const double w = coupling_weight(ground, m_ground, m_excited);
  return static_cast<double>(two_j_excited_ + 1) * w * w;
}

// ---------------------------------------------------------------------------
// FieldSet / RelaxationModel / CellConditions

bool FieldSet::weak_probe() const {
  return 5.0 * probe.rabi_mhz <= coupling.rabi_mhz && 5.0 * probe.rabi_mhz <= signal.rabi_mhz;
}

RelaxationModel::RelaxationModel(double gamma_c_mhz, double top_ab_hz, double zeeman_aa_hz,
                                 double zeeman_bb_hz)
    : gamma_c_mhz_(gamma_c_mhz),
      top_ab_hz_(top_ab_hz),
      top_ba_hz_(9.0 / 7.0 * top_ab_hz),
      zeeman_aa_hz_(zeeman_aa_hz),
      zeeman_bb_hz_(zeeman_bb_hz) {
  if (!(gamma_c_mhz >= 0.0) || !(top_ab_hz >= 0.0) || !(zeeman_aa_hz >= 0.0) ||
      !(zeeman_bb_hz >= 0.0)) {
    throw InvalidParameter("relaxation rates must be non-negative and finite");
  }
  gamma_a_hz_ = 9.0 * top_ab_hz_ + 6.0 * zeeman_aa_hz_;
  gamma_b_hz_ = 7.0 * top_ba_hz_ + 8.0 * zeeman_bb_hz_;
  ground_coherence_mhz_ = units::hz_to_mhz(gamma_b_hz_);
  optical_coherence_mhz_ = 0.5 * (gamma_c_mhz_ + ground_coherence_mhz_);
  gamma_ca_mhz_ = 0.5 * (gamma_c_mhz_ + units::hz_to_mhz(gamma_a_hz_));
}

std::vector<std::string> CellConditions::validate() const {
  if (!(density_cm3 > 0.0)) throw InvalidParameter("density must be positive");
  if (!(cell_length_m >= 0.0)) throw InvalidParameter("cell length must be non-negative");
  if (!(optical_depth >= 0.0)) throw InvalidParameter("optical depth must be non-negative");
  std::vector<std::string> warnings;
  if (temperature_c < 15.0 || temperature_c > 90.0) {
    warnings.push_back("temperature " + std::to_string(temperature_c) +
                       " C is outside the 15-90 C validity range of the vapour model");
  }
  return warnings;
}

// ---------------------------------------------------------------------------
// derived parameters

double rabi_from_power(double power_mw, double beam_radius_mm, double cg_alpha,
                       double gamma_c_mhz) {
  if (!(beam_radius_mm > 0.0)) throw InvalidParameter("beam radius must be positive");
  if (!(power_mw >= 0.0)) throw InvalidParameter("power must be non-negative");
  if (!(cg_alpha > 0.0 && cg_alpha <= 1.0)) throw InvalidParameter("cg_alpha must lie in (0, 1]");
  const double radius_cm = 0.1 * beam_radius_mm;
  const double intensity = power_mw / (units::kPi * radius_cm * radius_cm);  // mW/cm^2
  return cg_alpha * gamma_c_mhz * std::sqrt(intensity / (2.0 * units::kSaturationIntensity));
}

double cg_alpha_for(double rabi_mhz, double power_mw, double beam_radius_mm, double gamma_c_mhz) {
  if (!(power_mw > 0.0)) throw InvalidParameter("power must be positive to solve for alpha");
  return rabi_mhz / rabi_from_power(power_mw, beam_radius_mm, 1.0, gamma_c_mhz);
}

double default_coupling_alpha() {
  static const double a = cg_alpha_for(23.0, 30.0, 1.0);
  return a;
}
double default_signal_alpha() {
  static const double a = cg_alpha_for(7.0, 10.0, 0.5);
  return a;
}
double default_probe_alpha() {
  static const double a = cg_alpha_for(1.0, 0.02, 0.5);
  return a;
}

double top_rate_from_density(double density_cm3) {
  if (!(density_cm3 >= 0.0)) throw InvalidParameter("density must be non-negative");
  return units::kSpinExchangeCoefficient * density_cm3;
}

double density_from_top_rate(double top_rate_hz) {
  if (!(top_rate_hz >= 0.0)) throw InvalidParameter("ToP rate must be non-negative");
  return top_rate_hz / units::kSpinExchangeCoefficient;
}

double density_from_temperature(double temperature_c) {
  if (!(temperature_c >= -50.0)) throw InvalidParameter("temperature below -50 C");
  const double t = units::celsius_to_kelvin(temperature_c);
  return kRoomDensity * std::exp(vapour_activation() * (1.0 / kRoomTemperatureK - 1.0 / t));
}

double temperature_from_density(double density_cm3) {
  if (!(density_cm3 > 0.0)) throw InvalidParameter("density must be positive");
  const double inv_t =
      1.0 / kRoomTemperatureK - std::log(density_cm3 / kRoomDensity) / vapour_activation();
  return 1.0 / inv_t - units::kZeroCelsius;
}

double most_probable_speed(double temperature_c) {
  const double t = units::celsius_to_kelvin(temperature_c);
  if (!(t >= 0.0)) throw InvalidParameter("temperature below absolute zero");
  return std::sqrt(2.0 * units::kBoltzmann * t / units::kCesiumMass);
}

double doppler_width(double temperature_c, double wavenumber) {
  // k u / 2 pi in Hz, reported in MHz
  return units::hz_to_mhz(wavenumber * most_probable_speed(temperature_c) / (2.0 * units::kPi));
}

}  // namespace deit

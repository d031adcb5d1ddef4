#pragma once

// Maxwell velocity averaging, transmission law and spectrum annotations.
//
// All three fields share one wavenumber, so a velocity class v shifts every
// one-photon detuning by s = k v / 2pi while two-photon detunings stay fixed.
// Populations are taken as velocity independent.

#include <optional>
#include <string>
#include <vector>

#include "deit/tripod.hpp"

namespace deit {

/// Normalised Maxwell measure discretised for integrands whose poles lie at
/// least `resolution_mhz` from the real shift axis.
///
/// Nodes cover |s| <= 6 W_D with composite Gauss-Legendre panels no wider than
/// 4 * resolution; `order` is the number of nodes per panel. A Gauss-Hermite
/// rule of the same size cannot resolve Lorentzians a hundred times narrower
/// than the Doppler width, hence the panels.
struct VelocityQuadrature {
  std::vector<double> velocities;  // m/s
  std::vector<double> shifts_mhz;  // k v / 2pi
  std::vector<double> weights;     // sum to 1
  double most_probable_u = 0.0;    // m/s
  double doppler_width_mhz = 0.0;

  static VelocityQuadrature maxwell(double temperature_c, double wavenumber, int order,
                                    double resolution_mhz);
  /// Same rule for a given Doppler width W_D (MHz).
  static VelocityQuadrature gaussian(double doppler_width_mhz, double wavenumber, int order,
                                     double resolution_mhz);
  /// W_D = 0: one node at rest.
  static VelocityQuadrature stationary();
  std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Im chi (1/MHz) of params with every one-photon detuning shifted by -s,
/// averaged over the quadrature.
double doppler_average(const TripodParams& params, const VelocityQuadrature& quad,
                       bool ablate_srs = false);

struct AveragedTerms {
  double linear = 0.0;
  double nonlinear = 0.0;
  double srs = 0.0;
};
/// The three closed-form pieces, each averaged like doppler_average.
AveragedTerms doppler_average_terms(const TripodParams& params, const VelocityQuadrature& quad);

/// Convenience form: builds the quadrature from temperature and order.
double doppler_average(const TripodParams& params, double temperature_c, int quadrature_order,
                       bool ablate_srs = false);

/// Same average of the two-level thermal reference at delta_p = 0.
double reference_average(double gamma_oc, const VelocityQuadrature& quad);

/// OD proportional to N L, anchored to OD 1.5 at 5e10 cm^-3 and 75 mm unless a
/// measured reference (od at density, length) is supplied.
struct OdReference {
  double optical_depth;
  double density_cm3;
  double cell_length_m;
};
double calibrate_od(double density_cm3, double cell_length_m,
                    std::optional<OdReference> reference = std::nullopt);

struct PeakInfo {
  double center = 0.0;  // MHz, parabolic apex
  double value = 0.0;   // transmission at the apex
  double fwhm = 0.0;    // MHz at half prominence; 0 if a side never falls to half
  double prominence = 0.0;
};

struct GainInfo {
  double gain = 0.0;
  double center = 0.0;
  double fwhm = 0.0;
};

struct SpectrumAnnotations {
  double first_window_nominal = 0.0;   // delta_c
  double second_window_nominal = 0.0;  // delta_s
  std::optional<PeakInfo> first_window;
  std::optional<PeakInfo> second_window;
  std::optional<GainInfo> gain;
  double min_transmission = 0.0;
  double max_transmission = 0.0;
};

struct Spectrum {
  std::vector<double> probe_detunings;  // MHz, strictly increasing
  std::vector<double> im_chi;           // arbitrary units, 1 = resonant thermal two-level
  std::vector<double> transmission;
  double optical_depth = 0.0;
  bool doppler_averaged = false;
  bool srs_ablated = false;
  SpectrumAnnotations annotations;
};

struct SpectrumSetup {
  TripodParams tripod;  // delta_p is overwritten per grid point
  double optical_depth = 1.5;
  double doppler_width_mhz = 0.0;  // 0 = stationary atoms
  int quadrature_order = 64;
  bool ablate_srs = false;
};

/// Evaluates T = exp(-OD * Im chi / Im chi_ref) on the grid, Im chi_ref being
/// the equally averaged resonant two-level value.
Spectrum transmission_spectrum(const SpectrumSetup& setup, const std::vector<double>& grid,
                               int jobs = 1);

/// Half-window searched around the nominal window centres, MHz.
inline constexpr double kWindowSearchHalfWidth = 1.0;
inline constexpr double kGainThreshold = 1e-3;

/// Local transmission maximum nearest `nominal` within +-half_width.
std::optional<PeakInfo> find_peak(const std::vector<double>& x, const std::vector<double>& y,
                                  double nominal, double half_width);

/// max T if above 1 + eps, apex parabolically refined; FWHM at half prominence.
std::optional<GainInfo> extract_gain(const Spectrum& spectrum, double eps = kGainThreshold);

/// Uniform grid helper, count >= 1.
std::vector<double> linear_grid(double start, double stop, int count);

}  // namespace deit

#include "deit/doppler.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "deit/atom_config.hpp"
#include "deit/error.hpp"
#include "deit/parallel.hpp"
#include "deit/units.hpp"

namespace deit {

namespace {

constexpr double kMaxwellCutoff = 6.0;  // in units of W_D; exp(-36) ~ 2e-16
constexpr double kPanelWidthPerResolution = 4.0;

// Closed-form Im chi as a function of the Doppler shift s only. Two-photon
// pieces are shift invariant and precomputed; B and D are affine in s.
struct ShiftedClosedForm {
  double a, beta, c, delta0;
  double gr, dps, den_ps;
  double linear_pop, nonlinear_scale, srs_scale;

  explicit ShiftedClosedForm(const TripodParams& p) {
    p.validate();
    const double g = p.gamma_gg;
    gr = p.gamma_raman();
    const double dpc = p.delta_pc();
    dps = p.delta_ps();
    const double dsc = p.delta_sc();
    const double oc2 = p.omega_c * p.omega_c;
    const double os2 = p.omega_s * p.omega_s;
    const double op2 = p.omega_p * p.omega_p;
    const double den_pc = g * g + dpc * dpc;
    den_ps = gr * gr + dps * dps;
    const double den_sc = g * g + dsc * dsc;
    a = p.gamma_oc + oc2 * g / den_pc + os2 * gr / den_ps;
    beta = p.delta_p - oc2 * dpc / den_pc - os2 * dps / den_ps;
    c = p.gamma_oc + oc2 * g / den_sc + op2 * gr / den_ps;
    delta0 = -p.delta_s + oc2 * dsc / den_sc - op2 * dps / den_ps;
    const auto& n = p.populations;
    linear_pop = n.b0 - n.c1;
    nonlinear_scale = op2 * (n.b0 - n.c1);
    srs_scale = os2 * (n.c1 - n.b1);
  }

  // linear, nonlinear, srs pieces at shift s
  void pieces(double s, double& lin, double& nonlin, double& srs) const {
    const double b = beta - s;
    const double d = delta0 + s;
    const double e = c * a - d * b;
    const double f = c * b + d * a;
    const double k = (gr * e - dps * f) / ((e * e + f * f) * den_ps);
    lin = a / (a * a + b * b) * linear_pop;
    nonlin = k * nonlinear_scale;
    srs = k * srs_scale;
  }

  // matches closed_form_im_chi on params with delta_{p,s,c} -> delta - s
  double operator()(double s, bool ablate) const {
    const double b = beta - s;
    const double d = delta0 + s;
    const double e = c * a - d * b;
    const double f = c * b + d * a;
    const double k = (gr * e - dps * f) / ((e * e + f * f) * den_ps);
    double v = a / (a * a + b * b) * linear_pop + k * nonlinear_scale;
    if (!ablate) v += k * srs_scale;
    return v;
  }
};

// apex of the parabola through three equally or unequally spaced points
void parabolic_apex(double x0, double y0, double x1, double y1, double x2, double y2, double& xm,
                    double& ym) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curv = (d12 - d01) / (x2 - x0);
  if (!(curv < 0.0)) {
    xm = x1;
    ym = y1;
    return;
  }
  // Newton form y(x) = y0 + d01 (x - x0) + curv (x - x0)(x - x1)
  xm = 0.5 * (x0 + x1) - d01 / (2.0 * curv);
  xm = std::clamp(xm, x0, x2);
  ym = y0 + d01 * (xm - x0) + curv * (xm - x0) * (xm - x1);
}

PeakInfo peak_at_index(const std::vector<double>& x, const std::vector<double>& y, std::size_t i) {
  const std::size_t n = y.size();
  PeakInfo p;
  p.center = x[i];
  p.value = y[i];
  if (i > 0 && i + 1 < n) parabolic_apex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1], p.center, p.value);

  // prominence: lowest point on each side before the curve rises above the peak
  double left_min = y[i];
  for (std::size_t j = i; j-- > 0;) {
    if (y[j] > y[i]) break;
    left_min = std::min(left_min, y[j]);
  }
  double right_min = y[i];
  for (std::size_t j = i + 1; j < n; ++j) {
    if (y[j] > y[i]) break;
    right_min = std::min(right_min, y[j]);
  }
  const double base = std::max(left_min, right_min);
  p.prominence = y[i] - base;
  if (!(p.prominence > 0.0)) return p;
  const double half = y[i] - 0.5 * p.prominence;

  double left = 0.0, right = 0.0;
  bool have_left = false, have_right = false;
  for (std::size_t j = i; j-- > 0;) {
    if (y[j] <= half) {
      left = x[j] + (half - y[j]) * (x[j + 1] - x[j]) / (y[j + 1] - y[j]);
      have_left = true;
      break;
    }
  }
  for (std::size_t j = i + 1; j < n; ++j) {
    if (y[j] <= half) {
      right = x[j - 1] + (y[j - 1] - half) * (x[j] - x[j - 1]) / (y[j - 1] - y[j]);
      have_right = true;
      break;
    }
  }
  if (have_left && have_right) p.fwhm = right - left;
  return p;
}

}  // namespace

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw InvalidParameter("Gauss-Legendre order must be >= 1");
  // Jacobi matrix of the Legendre recurrence
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = b;
    j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  nodes.assign(static_cast<std::size_t>(order), 0.0);
  weights.assign(static_cast<std::size_t>(order), 0.0);
  for (int k = 0; k < order; ++k) {
    nodes[k] = es.eigenvalues()(k);
    const double v = es.eigenvectors()(0, k);
    weights[k] = 2.0 * v * v;
  }
  // exact mirror symmetry
  for (int k = 0; k < order / 2; ++k) {
    const int m = order - 1 - k;
    const double x = 0.5 * (nodes[m] - nodes[k]);
    const double w = 0.5 * (weights[m] + weights[k]);
    nodes[k] = -x;
    nodes[m] = x;
    weights[k] = weights[m] = w;
  }
  if (order % 2 == 1) nodes[order / 2] = 0.0;
}

VelocityQuadrature VelocityQuadrature::stationary() {
  VelocityQuadrature q;
  q.velocities = {0.0};
  q.shifts_mhz = {0.0};
  q.weights = {1.0};
  return q;
}

VelocityQuadrature VelocityQuadrature::maxwell(double temperature_c, double wavenumber, int order,
                                               double resolution_mhz) {
  if (!(wavenumber > 0.0)) throw InvalidParameter("wavenumber must be positive");
  return gaussian(doppler_width(temperature_c, wavenumber), wavenumber, order, resolution_mhz);
}

VelocityQuadrature VelocityQuadrature::gaussian(double w, double wavenumber, int order,
                                                double resolution_mhz) {
  if (order < 8) throw InvalidParameter("quadrature order must be >= 8");
  if (!(resolution_mhz > 0.0)) throw InvalidParameter("quadrature resolution must be positive");
  if (!(wavenumber > 0.0)) throw InvalidParameter("wavenumber must be positive");
  if (!(w >= 0.0)) throw InvalidParameter("Doppler width must be >= 0");
  if (w == 0.0) return stationary();
  const double u = units::mhz_to_hz(w) * 2.0 * units::kPi / wavenumber;

  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  const double span = 2.0 * kMaxwellCutoff * w;
  const int panels =
      std::max(1, static_cast<int>(std::ceil(span / (kPanelWidthPerResolution * resolution_mhz))));
  const double h = span / panels;

  VelocityQuadrature q;
  q.most_probable_u = u;
  q.doppler_width_mhz = w;
  const std::size_t n = static_cast<std::size_t>(panels) * gx.size();
  q.shifts_mhz.resize(n);
  q.weights.resize(n);
  const double norm = 1.0 / (w * std::sqrt(units::kPi));
  std::size_t idx = 0;
  for (int p = 0; p < panels; ++p) {
    const double mid = -kMaxwellCutoff * w + (p + 0.5) * h;
    for (std::size_t k = 0; k < gx.size(); ++k, ++idx) {
      const double s = mid + 0.5 * h * gx[k];
      q.shifts_mhz[idx] = s;
      q.weights[idx] = 0.5 * h * gw[k] * norm * std::exp(-(s / w) * (s / w));
    }
  }
  for (std::size_t k = 0; k < n / 2; ++k) {
    const std::size_t m = n - 1 - k;
    const double s = 0.5 * (q.shifts_mhz[m] - q.shifts_mhz[k]);
    const double wt = 0.5 * (q.weights[m] + q.weights[k]);
    q.shifts_mhz[k] = -s;
    q.shifts_mhz[m] = s;
    q.weights[k] = q.weights[m] = wt;
  }
  if (n % 2 == 1) q.shifts_mhz[n / 2] = 0.0;
  double total = 0.0;
  for (double v : q.weights) total += v;
  for (double& v : q.weights) v /= total;

  // s = k v / 2pi, s in MHz
  q.velocities.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    q.velocities[k] = units::mhz_to_hz(q.shifts_mhz[k]) * 2.0 * units::kPi / wavenumber;
  }
  return q;
}

double doppler_average(const TripodParams& params, const VelocityQuadrature& quad,
                       bool ablate_srs) {
  const ShiftedClosedForm f(params);
  double sum = 0.0;
  for (std::size_t k = 0; k < quad.size(); ++k) sum += quad.weights[k] * f(quad.shifts_mhz[k], ablate_srs);
  return sum;
}

AveragedTerms doppler_average_terms(const TripodParams& params, const VelocityQuadrature& quad) {
  const ShiftedClosedForm f(params);
  AveragedTerms t;
  for (std::size_t k = 0; k < quad.size(); ++k) {
    double lin, nonlin, srs;
    f.pieces(quad.shifts_mhz[k], lin, nonlin, srs);
    t.linear += quad.weights[k] * lin;
    t.nonlinear += quad.weights[k] * nonlin;
    t.srs += quad.weights[k] * srs;
  }
  return t;
}

double doppler_average(const TripodParams& params, double temperature_c, int quadrature_order,
                       bool ablate_srs) {
  const auto quad = VelocityQuadrature::maxwell(temperature_c, units::kCesiumD1Wavenumber,
                                                quadrature_order, params.gamma_oc);
  return doppler_average(params, quad, ablate_srs);
}

double reference_average(double gamma_oc, const VelocityQuadrature& quad) {
  double sum = 0.0;
  for (std::size_t k = 0; k < quad.size(); ++k) {
    sum += quad.weights[k] * two_level_reference(gamma_oc, -quad.shifts_mhz[k]);
  }
  return sum;
}

double calibrate_od(double density_cm3, double cell_length_m, std::optional<OdReference> reference) {
  if (!(density_cm3 > 0.0)) throw InvalidParameter("density must be positive");
  if (!(cell_length_m >= 0.0)) throw InvalidParameter("cell length must be non-negative");
  const OdReference ref = reference.value_or(OdReference{1.5, 5e10, 0.075});
  if (!(ref.density_cm3 > 0.0) || !(ref.cell_length_m > 0.0) || !(ref.optical_depth >= 0.0)) {
    throw InvalidParameter("invalid optical-depth reference");
  }
  return ref.optical_depth * (density_cm3 / ref.density_cm3) * (cell_length_m / ref.cell_length_m);
}

std::optional<PeakInfo> find_peak(const std::vector<double>& x, const std::vector<double>& y,
                                  double nominal, double half_width) {
  const std::size_t n = y.size();
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(x[i] - nominal) > half_width) continue;
    const bool left_ok = (i == 0) || y[i] >= y[i - 1];
    const bool right_ok = (i + 1 == n) || y[i] >= y[i + 1];
    if (!left_ok || !right_ok) continue;
    if (!best || y[i] > y[*best]) best = i;
  }
  if (!best) return std::nullopt;
  return peak_at_index(x, y, *best);
}

std::optional<GainInfo> extract_gain(const Spectrum& spectrum, double eps) {
  const auto& t = spectrum.transmission;
  if (t.empty()) return std::nullopt;
  const auto it = std::max_element(t.begin(), t.end());
  if (!(*it > 1.0 + eps)) return std::nullopt;
  const auto i = static_cast<std::size_t>(it - t.begin());
  const PeakInfo p = peak_at_index(spectrum.probe_detunings, t, i);
  return GainInfo{p.value, p.center, p.fwhm};
}

std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 1) throw InvalidParameter("grid count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> g(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = start + step * i;
  g.back() = stop;
  return g;
}

Spectrum transmission_spectrum(const SpectrumSetup& setup, const std::vector<double>& grid,
                               int jobs) {
  if (grid.empty()) throw InvalidParameter("empty probe-detuning grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidParameter("probe grid must be strictly increasing");
  }
  if (!(setup.optical_depth >= 0.0)) throw InvalidParameter("optical depth must be >= 0");
  setup.tripod.validate();

  const bool doppler = setup.doppler_width_mhz > 0.0;
  VelocityQuadrature quad = VelocityQuadrature::stationary();
  if (doppler) {
    quad = VelocityQuadrature::gaussian(setup.doppler_width_mhz, units::kCesiumD1Wavenumber,
                                        setup.quadrature_order, setup.tripod.gamma_oc);
  }
  const double ref = reference_average(setup.tripod.gamma_oc, quad);

  Spectrum out;
  out.probe_detunings = grid;
  out.im_chi.assign(grid.size(), 0.0);
  out.transmission.assign(grid.size(), 0.0);
  out.optical_depth = setup.optical_depth;
  out.doppler_averaged = doppler;
  out.srs_ablated = setup.ablate_srs;

  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    TripodParams p = setup.tripod;
    p.delta_p = grid[i];
    const double chi = doppler_average(p, quad, setup.ablate_srs) / ref;
    out.im_chi[i] = chi;
    out.transmission[i] = std::exp(-setup.optical_depth * chi);
  });

  auto& a = out.annotations;
  a.first_window_nominal = setup.tripod.delta_c;
  a.second_window_nominal = setup.tripod.delta_s;
  a.first_window = find_peak(grid, out.transmission, a.first_window_nominal, kWindowSearchHalfWidth);
  a.second_window =
      find_peak(grid, out.transmission, a.second_window_nominal, kWindowSearchHalfWidth);
  a.gain = extract_gain(out);
  a.min_transmission = *std::min_element(out.transmission.begin(), out.transmission.end());
  a.max_transmission = *std::max_element(out.transmission.begin(), out.transmission.end());
  return out;
}

}  // namespace deit

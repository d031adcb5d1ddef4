#include "deit/tripod.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "deit/error.hpp"

namespace deit {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// smallest denominator we are willing to divide by
constexpr double kTinyDenominator = 1e-300;

double checked(double denom, const char* name) {
  if (!(std::abs(denom) > kTinyDenominator) || !std::isfinite(denom)) {
    throw SolverError(std::string("singular denominator ") + name + " in closed-form Im chi");
  }
  return denom;
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void TripodParams::validate() const {
  if (!(gamma_gg > 0.0)) throw InvalidParameter("gamma_gg must be positive");
  if (!(gamma_oc > 0.0)) throw InvalidParameter("gamma_oc must be positive");
  if (!(gamma_c1a1() > 0.0)) throw InvalidParameter("gamma_ca must be positive");
  if (!(relative_linewidth >= 0.0)) throw InvalidParameter("relative linewidth must be >= 0");
  if (!(omega_c >= 0.0 && omega_s >= 0.0 && omega_p >= 0.0)) {
    throw InvalidParameter("Rabi frequencies must be non-negative");
  }
  const auto& p = populations;
  if (!in_unit(p.b0) || !in_unit(p.b1) || !in_unit(p.a1) || !in_unit(p.c1)) {
    throw InvalidParameter("tripod populations must lie in [0, 1]");
  }
}

SusceptibilityBreakdown closed_form_im_chi(const TripodParams& params) {
  params.validate();
  const double g = params.gamma_gg;      // b0-a1, b1-a1
  const double gr = params.gamma_raman();  // b1-b0
  const double goc = params.gamma_oc;
  const double dpc = params.delta_pc();
  const double dps = params.delta_ps();
  const double dsc = params.delta_sc();
  const double oc2 = params.omega_c * params.omega_c;
  const double os2 = params.omega_s * params.omega_s;
  const double op2 = params.omega_p * params.omega_p;
  const auto& pop = params.populations;

  const double den_pc = checked(g * g + dpc * dpc, "gamma^2 + delta_pc^2");
  const double den_ps = checked(gr * gr + dps * dps, "gamma^2 + delta_ps^2");
  const double den_sc = checked(g * g + dsc * dsc, "gamma^2 + delta_sc^2");

  SusceptibilityBreakdown out;
  out.A = goc + oc2 * g / den_pc + os2 * gr / den_ps;
  out.B = params.delta_p - oc2 * dpc / den_pc - os2 * dps / den_ps;
  out.C = goc + oc2 * g / den_sc + op2 * gr / den_ps;
  out.D = -params.delta_s + oc2 * dsc / den_sc - op2 * dps / den_ps;
  out.E = out.C * out.A - out.D * out.B;
  out.F = out.C * out.B + out.D * out.A;

  const double ab = checked(out.A * out.A + out.B * out.B, "A^2 + B^2");
  const double ef = checked(out.E * out.E + out.F * out.F, "E^2 + F^2");

  out.linear_term = -out.A / ab * (pop.c1 - pop.b0);
  out.raman_prefactor = (gr * out.E - dps * out.F) / (ef * den_ps);
  out.nonlinear_term = -out.raman_prefactor * op2 * (pop.c1 - pop.b0);
  out.srs_term = out.raman_prefactor * os2 * (pop.c1 - pop.b1);
  out.total_im_chi = out.linear_term + out.nonlinear_term + out.srs_term;
  return out;
}

SusceptibilityBreakdown srs_ablation(const TripodParams& params) {
  SusceptibilityBreakdown out = closed_form_im_chi(params);
  out.total_im_chi = out.linear_term + out.nonlinear_term;
  return out;
}

double two_level_reference(double gamma_oc, double delta_p) {
  if (!(gamma_oc > 0.0)) throw InvalidParameter("gamma_oc must be positive");
  return (1.0 / 18.0) * gamma_oc / (gamma_oc * gamma_oc + delta_p * delta_p);
}

double TripodCoherences::im_chi() const {
  if (omega_p == 0.0) return 0.0;
  return rho[kB0C1].imag() / omega_p;
}

std::array<cd, 6> coherence_rates(const TripodParams& p, const std::array<cd, 6>& x) {
  const auto& n = p.populations;
  std::array<cd, 6> r{};
  r[kB0C1] = kI * (p.omega_p * (n.b0 - n.c1) + p.omega_c * x[kB0A1] + p.omega_s * x[kB0B1]) -
             (kI * p.delta_p + p.gamma_oc) * x[kB0C1];
  r[kB1C1] = kI * (p.omega_s * (n.b1 - n.c1) + p.omega_c * x[kB1A1] +
                   p.omega_p * std::conj(x[kB0B1])) -
             (kI * p.delta_s + p.gamma_oc) * x[kB1C1];
  r[kA1C1] = kI * (p.omega_c * (n.a1 - n.c1) + p.omega_s * std::conj(x[kB1A1]) +
                   p.omega_p * std::conj(x[kB0A1])) -
             (kI * p.delta_c + p.gamma_c1a1()) * x[kA1C1];
  r[kB0A1] = kI * (x[kB0C1] * p.omega_c - p.omega_p * std::conj(x[kA1C1])) -
             (kI * p.delta_pc() + p.gamma_gg) * x[kB0A1];
  r[kB0B1] = kI * (x[kB0C1] * p.omega_s - p.omega_p * std::conj(x[kB1C1])) -
             (kI * p.delta_ps() + p.gamma_raman()) * x[kB0B1];
  r[kB1A1] = kI * (x[kB1C1] * p.omega_c - p.omega_s * std::conj(x[kA1C1])) -
             (kI * p.delta_sc() + p.gamma_gg) * x[kB1A1];
  return r;
}

TripodCoherences steady_state_coherences(const TripodParams& p, bool a1c1_feedback) {
  p.validate();
  const auto& n = p.populations;
  // d x / dt = mx x + mc conj(x) + s
  Eigen::Matrix<cd, 6, 6> mx = Eigen::Matrix<cd, 6, 6>::Zero();
  Eigen::Matrix<cd, 6, 6> mc = Eigen::Matrix<cd, 6, 6>::Zero();
  Eigen::Matrix<cd, 6, 1> s = Eigen::Matrix<cd, 6, 1>::Zero();

  s(kB0C1) = kI * p.omega_p * (n.b0 - n.c1);
  mx(kB0C1, kB0A1) += kI * p.omega_c;
  mx(kB0C1, kB0B1) += kI * p.omega_s;
  mx(kB0C1, kB0C1) -= kI * p.delta_p + p.gamma_oc;

  s(kB1C1) = kI * p.omega_s * (n.b1 - n.c1);
  mx(kB1C1, kB1A1) += kI * p.omega_c;
  mc(kB1C1, kB0B1) += kI * p.omega_p;
  mx(kB1C1, kB1C1) -= kI * p.delta_s + p.gamma_oc;

  s(kA1C1) = kI * p.omega_c * (n.a1 - n.c1);
  mc(kA1C1, kB1A1) += kI * p.omega_s;
  mc(kA1C1, kB0A1) += kI * p.omega_p;
  mx(kA1C1, kA1C1) -= kI * p.delta_c + p.gamma_c1a1();

  mx(kB0A1, kB0C1) += kI * p.omega_c;
  if (a1c1_feedback) mc(kB0A1, kA1C1) -= kI * p.omega_p;
  mx(kB0A1, kB0A1) -= kI * p.delta_pc() + p.gamma_gg;

  mx(kB0B1, kB0C1) += kI * p.omega_s;
  mc(kB0B1, kB1C1) -= kI * p.omega_p;
  mx(kB0B1, kB0B1) -= kI * p.delta_ps() + p.gamma_raman();

  mx(kB1A1, kB1C1) += kI * p.omega_c;
  if (a1c1_feedback) mc(kB1A1, kA1C1) -= kI * p.omega_s;
  mx(kB1A1, kB1A1) -= kI * p.delta_sc() + p.gamma_gg;

  Eigen::Matrix<double, 12, 12> r;
  r.topLeftCorner<6, 6>() = mx.real() + mc.real();
  r.topRightCorner<6, 6>() = -mx.imag() + mc.imag();
  r.bottomLeftCorner<6, 6>() = mx.imag() + mc.imag();
  r.bottomRightCorner<6, 6>() = mx.real() - mc.real();
  Eigen::Matrix<double, 12, 1> rhs;
  rhs.head<6>() = -s.real();
  rhs.tail<6>() = -s.imag();

  Eigen::FullPivLU<Eigen::Matrix<double, 12, 12>> lu(r);
  lu.setThreshold(1e-14);
  if (!lu.isInvertible()) {
    throw SolverError("coherence system is singular (delta_p=" + std::to_string(p.delta_p) +
                      ", delta_s=" + std::to_string(p.delta_s) +
                      ", delta_c=" + std::to_string(p.delta_c) +
                      ", gamma_gg=" + std::to_string(p.gamma_gg) + ")");
  }
  const Eigen::Matrix<double, 12, 1> z = lu.solve(rhs);

  TripodCoherences out;
  out.omega_p = p.omega_p;
  for (int k = 0; k < 6; ++k) out.rho[static_cast<std::size_t>(k)] = cd(z(k), z(k + 6));
  return out;
}

ConditionReport check_conditions(const TripodParams& p, double doppler_width_mhz, double factor) {
  p.validate();
  if (!(doppler_width_mhz >= 0.0)) throw InvalidParameter("Doppler width must be >= 0");
  const double os2 = p.omega_s * p.omega_s;
  const double op2 = p.omega_p * p.omega_p;
  ConditionReport r;
  r.r4 = os2 / (p.gamma_gg * p.gamma_oc);
  r.r6 = os2 / (p.gamma_gg * (p.gamma_oc + doppler_width_mhz));
  const double num = p.populations.b1 * os2;
  const double den = p.populations.b0 * op2;
  r.r5 = (den == 0.0) ? std::numeric_limits<double>::infinity() : num / den;
  r.eit = r.r4 >= factor;
  r.doppler_eit = r.r6 >= factor;
  r.gain = (p.omega_p == 0.0) || r.r5 > 1.0;
  return r;
}

}  // namespace deit

#include <cmath>
#include <random>

#include "doctest.h"
#include "deit/atom_config.hpp"
#include "deit/doppler.hpp"
#include "deit/error.hpp"
#include "deit/populations.hpp"
#include "deit/units.hpp"

using namespace deit;
using doctest::Approx;

namespace {

TripodParams fig2_params(double top_rate_hz) {
  FieldSet f;
  f.coupling = {20.0, 0.0};
  f.signal = {8.0, 10.0};
  const RelaxationModel r(4.6, top_rate_hz, 20.0, 20.0);
  const auto pop = steady_populations(f, r);
  TripodParams p;
  p.omega_c = 20.0;
  p.omega_s = 8.0;
  p.omega_p = 1.0;
  p.delta_s = 10.0;
  p.gamma_gg = r.ground_coherence_decay_mhz();
  p.gamma_oc = r.optical_coherence_decay_mhz();
  p.populations = {pop.b0(), pop.b1(), pop.a1(), pop.c1()};
  return p;
}

TripodParams shifted(TripodParams p, double s) {
  p.delta_p -= s;
  p.delta_s -= s;
  p.delta_c -= s;
  return p;
}

// independent average: trapezoid rule on a fine uniform shift grid (exponentially
// accurate for analytic integrands with poles a distance gamma_oc off the axis)
double trapezoid_average(const TripodParams& p, double w, double h) {
  double sum = 0.0;
  const int n = static_cast<int>(std::ceil(8.0 * w / h));
  for (int k = -n; k <= n; ++k) {
    const double s = k * h;
    const double g = std::exp(-(s / w) * (s / w)) / (w * std::sqrt(units::kPi));
    sum += h * g * closed_form_im_chi(shifted(p, s)).total_im_chi;
  }
  return sum;
}

}  // namespace

TEST_CASE("Gauss-Legendre rule") {
  std::vector<double> x, w;
  gauss_legendre(16, x, w);
  double s0 = 0.0, s10 = 0.0, s31 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    s0 += w[k];
    s10 += w[k] * std::pow(x[k], 10);
    s31 += w[k] * std::pow(x[k], 30);
  }
  CHECK(s0 == Approx(2.0).epsilon(1e-14));
  CHECK(s10 == Approx(2.0 / 11.0).epsilon(1e-13));
  CHECK(s31 == Approx(2.0 / 31.0).epsilon(1e-12));  // exact through degree 31
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(x[k] == -x[x.size() - 1 - k]);
  CHECK_THROWS_AS(gauss_legendre(0, x, w), InvalidParameter);
}

TEST_CASE("Maxwell quadrature invariants") {
  const double k = units::kCesiumD1Wavenumber;
  const auto q = VelocityQuadrature::maxwell(65.0, k, 64, 2.3);
  double total = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    total += q.weights[i];
    m2 += q.weights[i] * q.shifts_mhz[i] * q.shifts_mhz[i];
    CHECK(q.shifts_mhz[i] == -q.shifts_mhz[q.size() - 1 - i]);
    CHECK(q.velocities[i] == -q.velocities[q.size() - 1 - i]);
    CHECK(q.weights[i] == q.weights[q.size() - 1 - i]);
  }
  CHECK(std::abs(total - 1.0) < 1e-12);
  CHECK(m2 == Approx(0.5 * q.doppler_width_mhz * q.doppler_width_mhz).epsilon(1e-12));
  CHECK(q.doppler_width_mhz == Approx(doppler_width(65.0, k)).epsilon(1e-14));
  CHECK(q.most_probable_u == Approx(most_probable_speed(65.0)).epsilon(1e-12));
  // s = k v / 2pi
  CHECK(units::mhz_to_hz(q.shifts_mhz[3]) ==
        Approx(k * q.velocities[3] / (2.0 * units::kPi)).epsilon(1e-12));
  CHECK_THROWS_AS(VelocityQuadrature::maxwell(65.0, k, 4, 2.3), InvalidParameter);
  const auto z = VelocityQuadrature::maxwell(-units::kZeroCelsius, k, 64, 2.3);
  CHECK(z.size() == 1);
}

TEST_CASE("shifted evaluation equals the closed form at shifted detunings") {
  TripodParams p = fig2_params(300.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-400.0, 400.0);
  for (int i = 0; i < 200; ++i) {
    p.delta_p = u(rng) / 20.0;
    const double s = u(rng);
    VelocityQuadrature one;
    one.shifts_mhz = {s};
    one.velocities = {0.0};
    one.weights = {1.0};
    const double a = doppler_average(p, one);
    const double b = closed_form_im_chi(shifted(p, s)).total_im_chi;
    CHECK(a == Approx(b).epsilon(1e-10).scale(1e-12));
    CHECK(doppler_average(p, one, true) ==
          Approx(srs_ablation(shifted(p, s)).total_im_chi).epsilon(1e-10).scale(1e-12));
  }
}

TEST_CASE("Doppler average against a fine trapezoid oracle") {
  TripodParams p = fig2_params(300.0);
  const double w = doppler_width(65.0, units::kCesiumD1Wavenumber);
  for (double dp : {-40.0, 0.0, 5.0, 9.9, 10.0, 10.2, 60.0}) {
    p.delta_p = dp;
    const double got = doppler_average(p, 65.0, 64);
    const double want = trapezoid_average(p, w, 0.1);
    CHECK(got == Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("quadrature self convergence and zero-temperature limit") {
  TripodParams p = fig2_params(300.0);
  for (double dp : {0.0, 3.0, 10.0, 25.0}) {
    p.delta_p = dp;
    const double a = doppler_average(p, 65.0, 64);
    const double b = doppler_average(p, 65.0, 128);
    CHECK(std::abs(a - b) / std::abs(b) < 1e-6);
    const double cold = doppler_average(p, -units::kZeroCelsius + 1e-9, 64);
    const double still = closed_form_im_chi(p).total_im_chi;
    CHECK(std::abs(cold - still) / std::abs(still) < 1e-6);
  }
}

TEST_CASE("optical depth calibration") {
  CHECK(calibrate_od(5e10, 0.075) == Approx(1.5).epsilon(1e-14));
  CHECK(calibrate_od(12.0 * 5e10, 0.075) == Approx(18.0).epsilon(1e-14));
  CHECK(calibrate_od(5e10, 0.0) == 0.0);
  CHECK(calibrate_od(3e11, 0.075, OdReference{18.0, 6e11, 0.075}) == Approx(9.0).epsilon(1e-14));
  CHECK(calibrate_od(1e11, 0.15) == Approx(6.0).epsilon(1e-14));
  CHECK_THROWS_AS(calibrate_od(0.0, 0.075), InvalidParameter);
}

TEST_CASE("transmission law and OD monotonicity") {
  SpectrumSetup s;
  s.tripod = fig2_params(300.0);
  s.doppler_width_mhz = 0.0;
  const auto grid = linear_grid(-20.0, 25.0, 451);
  s.optical_depth = 2.0;
  const auto lo = transmission_spectrum(s, grid);
  s.optical_depth = 8.0;
  const auto hi = transmission_spectrum(s, grid);
  s.optical_depth = 0.0;
  const auto none = transmission_spectrum(s, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(lo.transmission[i] > 0.0);
    CHECK(lo.transmission[i] == Approx(std::exp(-2.0 * lo.im_chi[i])).epsilon(1e-14));
    CHECK(lo.im_chi[i] == hi.im_chi[i]);
    if (lo.im_chi[i] > 0.0) CHECK(hi.transmission[i] < lo.transmission[i]);
    if (lo.im_chi[i] < 0.0) CHECK(hi.transmission[i] > lo.transmission[i]);
    CHECK(none.transmission[i] == 1.0);
  }
  CHECK_THROWS_AS(transmission_spectrum(s, {}), InvalidParameter);
  CHECK_THROWS_AS(transmission_spectrum(s, {1.0, 1.0}), InvalidParameter);
}

TEST_CASE("normalisation: thermal two-level at resonance is one") {
  SpectrumSetup s;
  s.tripod.gamma_gg = 1e-3;
  s.tripod.gamma_oc = 2.3;
  s.tripod.omega_p = 1e-6;
  for (double w : {0.0, 230.0}) {
    s.doppler_width_mhz = w;
    const auto sp = transmission_spectrum(s, {0.0});
    CHECK(sp.im_chi[0] == Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("far-detuned probe sees no atoms") {
  SpectrumSetup s;
  s.tripod = fig2_params(300.0);
  s.optical_depth = 18.0;
  s.doppler_width_mhz = doppler_width(65.0, units::kCesiumD1Wavenumber);
  const auto sp = transmission_spectrum(s, {-3000.0, 3000.0});
  for (double t : sp.transmission) CHECK(std::abs(t - 1.0) < 0.01);
}

TEST_CASE("second window survives Doppler averaging") {
  SpectrumSetup s;
  s.tripod = fig2_params(300.0);
  s.optical_depth = 15.0;
  s.ablate_srs = true;
  const auto grid = linear_grid(7.0, 13.0, 1201);
  const auto still = transmission_spectrum(s, grid);
  s.doppler_width_mhz = doppler_width(65.0, units::kCesiumD1Wavenumber);
  const auto hot = transmission_spectrum(s, grid);
  REQUIRE(still.annotations.second_window);
  REQUIRE(hot.annotations.second_window);
  CHECK(std::abs(still.annotations.second_window->center - hot.annotations.second_window->center) <
        0.2);
}

TEST_CASE("peak and gain extraction") {
  std::vector<double> x = linear_grid(-5.0, 5.0, 1001);
  std::vector<double> y(x.size());
  // Lorentzian gain of height 2 and FWHM 0.8 centred at 0.3 on a unit baseline
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = (x[i] - 0.3) / 0.4;
    y[i] = 1.0 + 2.0 / (1.0 + d * d);
  }
  Spectrum sp;
  sp.probe_detunings = x;
  sp.transmission = y;
  const auto g = extract_gain(sp);
  REQUIRE(g);
  CHECK(g->gain == Approx(3.0).epsilon(1e-4));
  CHECK(g->center == Approx(0.3).epsilon(1e-3));
  // prominence is measured from the finite-grid tail, slightly above 1
  CHECK(g->fwhm == Approx(0.8).epsilon(0.02));

  sp.transmission.assign(x.size(), 1.0);
  CHECK_FALSE(extract_gain(sp));
  sp.transmission.assign(x.size(), 1.0005);
  CHECK_FALSE(extract_gain(sp));

  // exact parabola apex
  std::vector<double> px = {0.0, 1.0, 2.0, 3.0};
  std::vector<double> py;
  for (double v : px) py.push_back(1.0 - (v - 1.3) * (v - 1.3));
  const auto pk = find_peak(px, py, 1.0, 1.0);
  REQUIRE(pk);
  CHECK(pk->center == Approx(1.3).epsilon(1e-12));
  CHECK(pk->value == Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(find_peak(px, py, 10.0, 1.0));
}

TEST_CASE("grid helper") {
  CHECK(linear_grid(2.0, 9.0, 1) == std::vector<double>{2.0});
  const auto g = linear_grid(-1.0, 1.0, 5);
  CHECK(g.size() == 5);
  CHECK(g[2] == 0.0);
  CHECK(g.back() == 1.0);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), InvalidParameter);
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "deit/angular_momentum.hpp"
#include "deit/atom_config.hpp"
#include "deit/error.hpp"
#include "deit/units.hpp"

using namespace deit;
using doctest::Approx;

TEST_CASE("wigner symbols against tabulated values") {
  // (1 1 0; 1 -1 0) = 1/sqrt(3)
  CHECK(angular::wigner_3j(2, 2, 0, 2, -2, 0) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  // (1/2 1/2 1; 1/2 -1/2 0) = 1/sqrt(6)
  CHECK(angular::wigner_3j(1, 1, 2, 1, -1, 0) == Approx(1.0 / std::sqrt(6.0)).epsilon(1e-14));
  CHECK(angular::wigner_3j(2, 2, 2, 0, 0, 0) == 0.0);
  // {1/2 1/2 1; 1/2 1/2 0} = 1/2 ... {a b c; d e f} with c = 1, f = 0
  CHECK(angular::wigner_6j(1, 1, 2, 1, 1, 0) == Approx(0.5).epsilon(1e-14));
  // <1/2 1/2; 1/2 -1/2 | 1 0> = 1/sqrt(2)
  CHECK(angular::clebsch_gordan(1, 1, 1, -1, 2, 0) == Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(angular::clebsch_gordan(1, 1, 1, -1, 0, 0) == Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("level indexing round trips") {
  const auto s = LevelScheme::cesium_d1();
  CHECK(s.sublevel_count(Manifold::A) == 7);
  CHECK(s.sublevel_count(Manifold::B) == 9);
  CHECK(s.sublevel_count(Manifold::C) == 9);
  for (int k = 0; k < LevelScheme::kTotalSublevels; ++k) CHECK(s.index(s.sublevel(k)) == k);
  CHECK(s.index(Manifold::A, -3) == 0);
  CHECK(s.index(Manifold::B, 0) == 11);
  CHECK(s.index(Manifold::C, 1) == 21);
  CHECK_THROWS_AS(s.index(Manifold::A, 4), InvalidParameter);
  CHECK(sublevel_label({Manifold::B, -1}) == "bm1");
}

TEST_CASE("coupling weights match the uncoupled-basis oracle") {
  // frozen from an independent sum over |J mJ>|I mI> components
  const auto s = LevelScheme::cesium_d1();
  CHECK(std::abs(s.pi_weight(Manifold::B, 1)) == Approx(0.10206207261596575).epsilon(1e-12));
  CHECK(std::abs(s.pi_weight(Manifold::B, 2)) == Approx(0.2041241452319315).epsilon(1e-12));
  CHECK(std::abs(s.sigma_weight(Manifold::B, 0, 1)) == Approx(0.3227486121839514).epsilon(1e-12));
  CHECK(std::abs(s.pi_weight(Manifold::A, 1)) == Approx(0.39528470752104744).epsilon(1e-12));
  CHECK(std::abs(s.pi_weight(Manifold::A, 0)) == Approx(0.408248290463863).epsilon(1e-12));
  CHECK(std::abs(s.pi_weight(Manifold::A, 3)) == Approx(0.27003086243366087).epsilon(1e-12));
  CHECK(std::abs(s.sigma_weight(Manifold::A, -2, -1)) == Approx(0.1767766952966369).epsilon(1e-12));
  CHECK(std::abs(s.sigma_weight(Manifold::B, -4, -3)) == Approx(0.2041241452319315).epsilon(1e-12));
  CHECK(std::abs(s.sigma_weight(Manifold::A, 3, 4)) == Approx(0.5400617248673217).epsilon(1e-12));
  CHECK(s.pi_weight(Manifold::B, 0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.coupling_weight(Manifold::B, 0, 2) == 0.0);
  CHECK_THROWS_AS(s.sigma_weight(Manifold::B, 0, 0), InvalidParameter);
}

TEST_CASE("branching fractions sum to one per excited sublevel") {
  const auto s = LevelScheme::cesium_d1();
  for (int me = -4; me <= 4; ++me) {
    double total = 0.0;
    double to_a = 0.0;
    for (int m = -3; m <= 3; ++m) to_a += s.branching(me, Manifold::A, m);
    total += to_a;
    for (int m = -4; m <= 4; ++m) total += s.branching(me, Manifold::B, m);
    CHECK(std::abs(total - 1.0) < 1e-12);
    // F'=4 -> F=3 share is 7/12 for every m'
    CHECK(to_a == Approx(7.0 / 12.0).epsilon(1e-12));
  }
}

TEST_CASE("weights are m-mirror symmetric up to sign and bounded") {
  const auto s = LevelScheme::cesium_d1();
  for (auto g : {Manifold::A, Manifold::B}) {
    const int mg = s.max_m(g);
    for (int m = -mg; m <= mg; ++m) {
      for (int me = m - 1; me <= m + 1; ++me) {
        const double w = s.coupling_weight(g, m, me);
        const double wm = s.coupling_weight(g, -m, -me);
        CHECK(std::abs(std::abs(w) - std::abs(wm)) < 1e-14);
        CHECK(std::abs(w) <= 1.0);
      }
    }
  }
}

TEST_CASE("relaxation model derived rates") {
  const RelaxationModel r(4.6, 300.0, 20.0, 20.0);
  CHECK(r.top_ba_hz() / r.top_ab_hz() == Approx(9.0 / 7.0).epsilon(1e-12));
  CHECK(r.gamma_a_hz() == 9.0 * 300.0 + 6.0 * 20.0);
  CHECK(r.gamma_b_hz() == Approx(7.0 * (9.0 / 7.0) * 300.0 + 8.0 * 20.0).epsilon(1e-15));
  // ground coherence decay equals Gamma_b: 2.86 kHz at 300 Hz, 340 Hz at 20 Hz
  CHECK(units::mhz_to_hz(r.ground_coherence_decay_mhz()) == Approx(2860.0).epsilon(1e-12));
  CHECK(units::mhz_to_hz(RelaxationModel(4.6, 20.0, 20.0, 20.0).ground_coherence_decay_mhz()) ==
        Approx(340.0).epsilon(1e-12));
  CHECK(r.optical_coherence_decay_mhz() == Approx(0.5 * (4.6 + 2.86e-3)).epsilon(1e-14));
  CHECK(r.gamma_ca_mhz() == Approx(0.5 * (4.6 + 2.82e-3)).epsilon(1e-14));
  // bitwise reproducible
  const RelaxationModel r2(4.6, 300.0, 20.0, 20.0);
  CHECK(r == r2);
  CHECK_THROWS_AS(RelaxationModel(4.6, -1.0, 20.0, 20.0), InvalidParameter);
}

TEST_CASE("rabi from power") {
  // hand evaluation: 0.1 * 4.6 * sqrt((10 / (pi 0.05^2)) / 5)
  CHECK(rabi_from_power(10.0, 0.5, 0.1) == Approx(7.34053795938636).epsilon(1e-13));
  CHECK(rabi_from_power(0.0, 0.7, 0.3) == 0.0);
  CHECK(rabi_from_power(30.0, 1.0, default_coupling_alpha()) == Approx(23.0).epsilon(1e-13));
  CHECK(rabi_from_power(10.0, 0.5, default_signal_alpha()) == Approx(7.0).epsilon(1e-13));
  CHECK(rabi_from_power(0.02, 0.5, default_probe_alpha()) == Approx(1.0).epsilon(1e-13));
  CHECK(default_coupling_alpha() == Approx(0.361800627279134).epsilon(1e-12));
  CHECK(default_signal_alpha() == Approx(0.0953608582740055).epsilon(1e-12));
  CHECK(default_probe_alpha() == Approx(0.304619087847714).epsilon(1e-12));
  CHECK_THROWS_AS(rabi_from_power(1.0, 0.0, 0.5), InvalidParameter);
  CHECK_THROWS_AS(rabi_from_power(1.0, -1.0, 0.5), InvalidParameter);
  CHECK_THROWS_AS(rabi_from_power(1.0, 1.0, 1.5), InvalidParameter);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> p(1e-3, 100.0);
  for (int i = 0; i < 200; ++i) {
    const double pw = p(rng);
    const double r1 = rabi_from_power(pw, 0.8, 0.4);
    const double r4 = rabi_from_power(4.0 * pw, 0.8, 0.4);
    CHECK(std::abs(r4 / (2.0 * r1) - 1.0) < 1e-12);
  }
}

TEST_CASE("ToP rate and density") {
  CHECK(top_rate_from_density(5e11) == Approx(300.0).epsilon(1e-12));
  CHECK(top_rate_from_density(1e12) == Approx(600.0).epsilon(1e-12));
  CHECK(top_rate_from_density(0.0) == 0.0);
  CHECK(top_rate_from_density(2.0 * 3.3e11) == 2.0 * top_rate_from_density(3.3e11));
  CHECK(density_from_top_rate(top_rate_from_density(7e11)) == Approx(7e11).epsilon(1e-14));

  CHECK(density_from_temperature(25.0) == Approx(5e10).epsilon(1e-12));
  CHECK(density_from_temperature(80.0) == Approx(1e12).epsilon(1e-12));
  CHECK(density_from_temperature(65.0) == Approx(486571084070.419).epsilon(1e-10));
  double prev = 0.0;
  for (double t = 15.0; t <= 90.0; t += 0.25) {
    const double n = density_from_temperature(t);
    CHECK(n > prev);
    prev = n;
    CHECK(temperature_from_density(n) == Approx(t).epsilon(1e-10));
  }
  CHECK_THROWS_AS(density_from_temperature(-60.0), InvalidParameter);
}

TEST_CASE("doppler width") {
  const double k = units::kCesiumD1Wavenumber;
  CHECK(doppler_width(65.0, k) == Approx(229.926967754772).epsilon(1e-10));
  CHECK(doppler_width(25.0, k) == Approx(215.899990338847).epsilon(1e-10));
  CHECK(doppler_width(-units::kZeroCelsius, k) == 0.0);
  CHECK(doppler_width(80.0, k) > doppler_width(25.0, k));
}

TEST_CASE("cell conditions validation") {
  CellConditions c;
  CHECK(c.validate().empty());
  c.temperature_c = 95.0;
  CHECK(c.validate().size() == 1);
  c.density_cm3 = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
}

TEST_CASE("weak probe flag") {
  FieldSet f;
  f.coupling.rabi_mhz = 20.0;
  f.signal.rabi_mhz = 8.0;
  f.probe.rabi_mhz = 1.0;
  CHECK(f.weak_probe());
  f.probe.rabi_mhz = 3.0;
  CHECK_FALSE(f.weak_probe());
}

#include "deit/populations.hpp"

#include <cmath>
#include <cstdio>

#include "deit/error.hpp"
#include "deit/units.hpp"

namespace deit {

namespace {

constexpr int kFirstACoherence = RateSystem::kPopulations;
constexpr int kFirstBCoherence = RateSystem::kPopulations + 2 * 7;

const LevelScheme& scheme_cs() {
  static const LevelScheme s = LevelScheme::cesium_d1();
  return s;
}

std::string describe(const FieldSet& f, const RelaxationModel& r, DecayMode mode) {
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "Omega_c=%g MHz, Omega_s=%g MHz, delta_c=%g MHz, delta_s=%g MHz, Gamma_c=%g MHz, "
                "top_ab=%g Hz, zeeman_aa=%g Hz, zeeman_bb=%g Hz, %s decay",
                f.coupling.rabi_mhz, f.signal.rabi_mhz, f.coupling.detuning_mhz,
                f.signal.detuning_mhz, r.gamma_c_mhz(), r.top_ab_hz(), r.zeeman_aa_hz(),
                r.zeeman_bb_hz(), mode == DecayMode::Literal ? "literal" : "trace-conserving");
  return buf;
}

}  // namespace

double PopulationState::at(Manifold manifold, int m) const {
  return rho[static_cast<std::size_t>(scheme_cs().index(manifold, m))];
}

double PopulationState::trace() const {
  double s = 0.0;
  for (double v : rho) s += v;
  return s;
}

double PopulationState::manifold_total(Manifold manifold) const {
  const int mm = scheme_cs().max_m(manifold);
  double s = 0.0;
  for (int m = -mm; m <= mm; ++m) s += at(manifold, m);
  return s;
}

int RateSystem::coherence_index(Manifold ground, int m) {
  if (ground == Manifold::A && std::abs(m) <= 3) return kFirstACoherence + 2 * (m + 3);
  if (ground == Manifold::B && std::abs(m) <= 4) return kFirstBCoherence + 2 * (m + 4);
  throw InvalidParameter("no optical coherence for that sublevel");
}

RateSystem assemble_rate_system(const LevelScheme& scheme, const FieldSet& fields,
                                const RelaxationModel& relax, DecayMode mode) {
  RateSystem sys;
  sys.mode = mode;
  sys.description = describe(fields, relax, mode);
  const int n = RateSystem::kUnknowns;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);

  const double gab = units::hz_to_mhz(relax.top_ab_hz());
  const double gba = units::hz_to_mhz(relax.top_ba_hz());
  const double gaa = units::hz_to_mhz(relax.zeeman_aa_hz());
  const double gbb = units::hz_to_mhz(relax.zeeman_bb_hz());
  const double ga = units::hz_to_mhz(relax.gamma_a_hz());
  const double gb = units::hz_to_mhz(relax.gamma_b_hz());
  const double gc = relax.gamma_c_mhz();

  // ground manifolds: ToP in/out and Zeeman mixing
  for (int i = -3; i <= 3; ++i) {
    const int a = scheme.index(Manifold::A, i);
    m(a, a) -= ga;
    for (int j = -4; j <= 4; ++j) m(a, scheme.index(Manifold::B, j)) += gba;
    for (int j = -3; j <= 3; ++j) {
      if (j != i) m(a, scheme.index(Manifold::A, j)) += gaa;
    }
  }
  for (int i = -4; i <= 4; ++i) {
    const int b = scheme.index(Manifold::B, i);
    m(b, b) -= gb;
    for (int j = -3; j <= 3; ++j) m(b, scheme.index(Manifold::A, j)) += gab;
    for (int j = -4; j <= 4; ++j) {
      if (j != i) m(b, scheme.index(Manifold::B, j)) += gbb;
    }
  }

  // excited decay
  for (int i = -4; i <= 4; ++i) {
    const int c = scheme.index(Manifold::C, i);
    m(c, c) -= gc;
    if (mode == DecayMode::TraceConserving) {
      for (auto g : {Manifold::A, Manifold::B}) {
        const int mg = scheme.max_m(g);
        for (int j = -mg; j <= mg; ++j) m(scheme.index(g, j), c) += gc * scheme.branching(i, g, j);
      }
    }
  }

  // pi driving: rho_gc' = i O (rho_gg - rho_cc) - (i delta + gamma) rho_gc, rho_gc = x + i y
  for (auto g : {Manifold::A, Manifold::B}) {
    const bool is_a = (g == Manifold::A);
    const Field& field = is_a ? fields.coupling : fields.signal;
    const double gamma = is_a ? relax.gamma_ca_mhz() : relax.gamma_cb_mhz();
    const double delta = field.detuning_mhz;
    const int mg = scheme.max_m(g);
    for (int i = -mg; i <= mg; ++i) {
      const double o = field.rabi_mhz * scheme.pi_weight(g, i);
      const int pg = scheme.index(g, i);
      const int pc = scheme.index(Manifold::C, i);
      const int x = RateSystem::coherence_index(g, i);
      const int y = x + 1;
      m(x, x) -= gamma;
      m(x, y) += delta;
      m(y, pg) += o;
      m(y, pc) -= o;
      m(y, x) -= delta;
      m(y, y) -= gamma;
      m(pc, y) += 2.0 * o;
      m(pg, y) -= 2.0 * o;
    }
  }

  sys.matrix = std::move(m);
  sys.constraint_row = Eigen::RowVectorXd::Zero(n);
  sys.constraint_row.head(RateSystem::kPopulations).setOnes();
  sys.constraint_index = scheme.index(Manifold::B, 0);
  sys.degenerate = gab == 0.0 && gaa == 0.0 && gbb == 0.0 && fields.coupling.rabi_mhz == 0.0 &&
                   fields.signal.rabi_mhz == 0.0;
  return sys;
}

PopulationState detailed_balance_state() {
  PopulationState s;
  const auto& scheme = scheme_cs();
  for (int i = -3; i <= 3; ++i) s.rho[scheme.index(Manifold::A, i)] = 1.0 / 14.0;
  for (int i = -4; i <= 4; ++i) s.rho[scheme.index(Manifold::B, i)] = 1.0 / 18.0;
  return s;
}

PopulationState solve_steady_populations(const RateSystem& system) {
  if (system.degenerate) {
    PopulationState s = detailed_balance_state();
    s.warnings.push_back("no rates and no fields: returning the detailed-balance state");
    return s;
  }

  Eigen::VectorXd x;
  if (system.mode == DecayMode::TraceConserving) {
    Eigen::MatrixXd a = system.matrix;
    a.row(system.constraint_index) = system.constraint_row;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(a.rows());
    rhs(system.constraint_index) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) {
      throw SolverError("population system is singular (" + system.description + ")");
    }
    x = lu.solve(rhs);
  } else {
    // Without repopulation the generator leaks population; take the slowest mode.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(system.matrix, Eigen::ComputeFullV);
    // Nearly degenerate slow modes are not rejected: the smallest singular
    // vector is taken and non-negativity is asserted below.
    const int last = static_cast<int>(svd.singularValues().size()) - 1;
    x = svd.matrixV().col(last);
    const double tr = system.constraint_row.dot(x);
    if (tr == 0.0) throw SolverError("literal-mode mode has zero trace (" + system.description + ")");
    x /= tr;
  }

  PopulationState s;
  for (int k = 0; k < RateSystem::kPopulations; ++k) {
    double v = x(k);
    if (v < 0.0) {
      if (v < -1e-12) {
        throw SolverError("negative population " + std::to_string(v) + " (" +
                          system.description + ")");
      }
      s.warnings.push_back("clamped population " + std::to_string(v) + " at index " +
                           std::to_string(k));
      v = 0.0;
    }
    s.rho[static_cast<std::size_t>(k)] = v;
  }
  return s;
}

PopulationState steady_populations(const FieldSet& fields, const RelaxationModel& relax,
                                   DecayMode mode) {
  return solve_steady_populations(assemble_rate_system(scheme_cs(), fields, relax, mode));
}

std::vector<PopulationRow> population_vs_top_sweep(const std::vector<double>& top_rates_hz,
                                                   const FieldSet& fields,
                                                   const RelaxationModel& relax,
                                                   DecayMode mode) {
  std::vector<PopulationRow> out;
  out.reserve(top_rates_hz.size());
  for (double rate : top_rates_hz) {
    if (!(rate >= 0.0 && rate <= 1000.0)) {
      throw InvalidParameter("ToP sweep values must lie in [0, 1000] Hz");
    }
    const RelaxationModel r(relax.gamma_c_mhz(), rate, relax.zeeman_aa_hz(), relax.zeeman_bb_hz());
    const PopulationState s = steady_populations(fields, r, mode);
    out.push_back({rate, s.b0(), s.b1(), s.a1(), s.c1()});
  }
  return out;
}

}  // namespace deit

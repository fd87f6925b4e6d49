// test_analysis.cpp — critical coupling search, time-reversal asymmetry, absorption
// map, amplification scans.
#include <doctest.h>

#include <cmath>

#include "taasim/analysis.hpp"
#include "taasim/errors.hpp"
#include "taasim/grid.hpp"
#include "taasim/spectral.hpp"

using namespace taasim;

TEST_SUITE("analysis") {

TEST_CASE("reflection zero sits just above the edge decay rate") {
  SystemParams p;  // (2.2, 0.2pi)
  GammaR0Result r = find_gamma_r0(p, Direction::Left);
  // frozen regression values (minimizer tolerance 1e-6 * Gamma)
  CHECK(r.gamma_f == doctest::Approx(0.01302608).epsilon(2e-6));
  CHECK(r.ratio == doctest::Approx(1.003511).epsilon(1e-4));
  CHECK(r.R0 < 1e-9);
  // within a factor 2 of Gamma_edge but resolvably different
  CHECK(r.gamma_f / r.gamma_edge < 2.0);
  CHECK(r.gamma_f / r.gamma_edge > 0.5);
  CHECK(std::abs(r.gamma_f - r.gamma_edge) > 1e-5);
}

TEST_CASE("the loci coincide at the time-reversed dimerization") {
  SystemParams p;
  p.phi = PiPhase::parse("0.241pi").value();
  GammaR0Result r = find_gamma_r0(p, Direction::Left);
  CHECK(std::abs(r.gamma_f - r.gamma_edge) < 1e-2 * r.gamma_edge);
}

TEST_CASE("monotone single-atom reflection has no interior minimum") {
  SystemParams p;
  p.N = 1;  // R = Gamma^2 / (Gamma + Gamma_f)^2, strictly decreasing
  try {
    find_gamma_r0(p, Direction::Left);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.code()) == "no-interior-minimum");
  }
}

TEST_CASE("the incidence side must face the edge mode") {
  SystemParams p;  // phi = 0.2pi < pi/2: edge state on the right, reachable from the left
  CHECK_THROWS_AS(find_gamma_r0(p, Direction::Right), ConfigError);
  SystemParams m = p;
  m.phi = kPi - p.phi;  // mirrored chain: right incidence required
  CHECK_NOTHROW(find_gamma_r0(m, Direction::Right));
  CHECK_THROWS_AS(find_gamma_r0(m, Direction::Left), ConfigError);
}

TEST_CASE("chi and delta_chi behave at the lossless point") {
  SystemParams p;
  CHECK(std::abs(chi(p, 0.0)) < 1e-10);   // R = 1 at the lossless point -> chi = 0
  CHECK(delta_chi(p, 0.0) < 1e-10);
}

TEST_CASE("delta_chi is symmetric in the sign of its argument") {
  SystemParams p;
  const double g = 0.5 * edge_decay_rate(p);
  CHECK(delta_chi(p, g) == delta_chi(p, -g));  // bitwise: same expression
  CHECK(delta_chi(p, g) >= 0.0);
}

TEST_CASE("time-reversal asymmetry is tiny at 0.241pi and finite at 0.2pi") {
  SystemParams a;
  a.phi = PiPhase::parse("0.241pi").value();
  const double gea = edge_decay_rate(a);
  CHECK(delta_chi(a, 0.5 * gea) < 0.05);  // headline threshold
  CHECK(delta_chi(a, 0.5 * gea) < 1e-5);  // measured: ~4.5e-7

  SystemParams b;  // 0.2pi
  const double geb = edge_decay_rate(b);
  CHECK(delta_chi(b, 0.5 * geb) == doctest::Approx(0.00465255617).epsilon(1e-3));
  CHECK(delta_chi(b, 0.5 * geb) > 1e3 * delta_chi(a, 0.5 * gea));
  // the strong asymmetry lives at the reflection zero, just above Gamma_edge
  CHECK(delta_chi(b, 1.0035 * geb) > 0.1);
}

TEST_CASE("time-reversal report spans the grid and records the loci") {
  SystemParams p;
  const double ge = edge_decay_rate(p);
  TimeReversalReport rep = time_reversal_report(p, linspace(0.0, 0.9 * ge, 10));
  REQUIRE(rep.rows.size() == 10);
  CHECK(rep.gamma_edge == doctest::Approx(ge));
  CHECK(rep.gamma_r0 == doctest::Approx(0.01302608).epsilon(1e-4));
  for (const auto& row : rep.rows) {
    CHECK(row.note.empty());
    CHECK(std::isfinite(row.dchi));
    CHECK(row.dchi >= 0.0);
  }
  CHECK(rep.max_dchi == doctest::Approx(0.05870792119).epsilon(1e-6));
  CHECK(rep.max_dchi < 0.1);
}

TEST_CASE("absorption map peaks on the critical-coupling contour") {
  SystemParams p;
  // 0.2pi sits exactly on this phi grid (index 4), 2.2 exactly on the J0 grid (index 12);
  // phi stops at 0.4pi: closer to pi/2 the edge rate oscillates in J0 and the contour
  // crosses it too steeply for a meaningful pointwise check
  AbsorptionMap map = absorption_map(p, linspace(1.0, 3.0, 21), linspace(0.1 * kPi, 0.4 * kPi, 13),
                                     0.013, Direction::Left, 4);
  REQUIRE(map.eta.size() == 21);
  REQUIRE(map.eta[0].size() == 13);

  // cell closest to (2.2, 0.2pi) absorbs nearly completely
  int iJ = 12;  // J0 = 2.2 exactly on this grid
  CHECK(map.J0_grid[iJ] == doctest::Approx(2.2));
  int ip = 0;
  for (size_t k = 1; k < map.phi_grid.size(); ++k)
    if (std::abs(map.phi_grid[k] - 0.2 * kPi) < std::abs(map.phi_grid[ip] - 0.2 * kPi))
      ip = static_cast<int>(k);
  CHECK(map.eta[iJ][ip] >= 0.95);

  // along the contour Gamma_edge equals Gamma_f to bisection accuracy
  REQUIRE(!map.contour.empty());
  for (const auto& [J0c, phic] : map.contour) {
    SystemParams q = p;
    q.J0 = J0c;
    q.phi = phic;
    CHECK(std::abs(edge_decay_rate(q) - map.Gamma_f) < 1e-3 * map.Gamma_f);
  }
}

TEST_CASE("left incidence absorbs better when the edge state faces it") {
  SystemParams p;
  p.Gamma_f = 0.013;
  ScatterResult right_loc = scatter_markovian(p, 0.0, Direction::Left);  // phi < pi/2
  SystemParams m = p;
  m.phi = kPi - p.phi;  // left-localized edge state
  ScatterResult left_loc = scatter_markovian(m, 0.0, Direction::Left);
  CHECK(right_loc.eta > left_loc.eta);
}

TEST_CASE("gain near threshold amplifies both channels") {
  SystemParams p;
  const double ge = edge_decay_rate(p);
  SystemParams q = p;
  q.Gamma_f = -0.999 * ge;
  ScatterResult s = scatter_markovian(q, 0.0, Direction::Left);
  CHECK(s.R > 1e2);
  CHECK(s.T > 1e2);
}

TEST_CASE("directional amplification at the time-reversed dimerization") {
  SystemParams p;
  p.phi = PiPhase::parse("0.241pi").value();
  p.Gamma_f = -0.999 * edge_decay_rate(p);
  ScatterResult l = scatter_markovian(p, 0.0, Direction::Left);
  ScatterResult r = scatter_markovian(p, 0.0, Direction::Right);
  CHECK(l.R / r.R > 1e2);
  CHECK(std::abs(l.t - r.t) < 1e-10);
}

TEST_CASE("amplification scan finds the damping transition at -Gamma_r0") {
  SystemParams p;
  const double ge = edge_decay_rate(p);
  std::vector<double> grid;
  for (double g : linspace(-1.3 * ge, -0.7 * ge, 241))
    if (std::abs(g + ge) >= 1e-3 * ge) grid.push_back(g);
  AmpScan scan = amplification_scan(p, grid, Direction::Right);
  REQUIRE(scan.transition_found);
  const double gr0 = find_gamma_r0(p, Direction::Left).gamma_f;
  CHECK(std::abs(-scan.transition_gamma_f - gr0) < 0.05 * gr0);
  SystemParams q = p;
  q.Gamma_f = scan.transition_gamma_f;
  CHECK(scatter_markovian(q, 0.0, Direction::Right).R < 1e-2);
}

TEST_CASE("reflection vanishes by destructive edge-bulk interference at the transition") {
  SystemParams p;
  const double ge = edge_decay_rate(p);
  std::vector<double> grid;
  for (double g : linspace(-1.1 * ge, -0.95 * ge, 121))
    if (std::abs(g + ge) >= 1e-3 * ge) grid.push_back(g);
  AmpScan scan = amplification_scan(p, grid, Direction::Right);
  REQUIRE(scan.transition_found);
  SystemParams q = p;
  q.Gamma_f = scan.transition_gamma_f;
  ChannelDecomposition ch = scatter_channels(q, 0.0, Direction::Right);
  Complex sum = 0.0;
  for (int j = 0; j < ch.xi_r.size(); ++j) sum += ch.xi_r(j);
  CHECK(std::abs(sum) < 1e-3);
}

TEST_CASE("grid points in the threshold guard band are rejected up front") {
  SystemParams p;
  const double ge = edge_decay_rate(p);
  std::vector<double> grid{-ge * (1.0 + 1e-5), -0.5 * ge};
  CHECK_THROWS_AS(amplification_scan(p, grid, Direction::Left, false), SingularityError);
  // the override admits them; the singular point itself still fails per-row
  AmpScan scan = amplification_scan(p, grid, Direction::Left, true);
  REQUIRE(scan.rows.size() == 2);
  CHECK(std::isfinite(scan.rows[1].R));
}

TEST_CASE("ln(T+R) reaches its loss-side minimum at the edge decay rate") {
  SystemParams p;
  const double ge = edge_decay_rate(p);
  std::vector<double> grid = logspace(0.1 * ge, 10.0 * ge, 301);
  AmpScan scan = amplification_scan(p, grid, Direction::Left);
  size_t imin = 0;
  double best = 1e300;
  for (size_t k = 0; k < scan.rows.size(); ++k) {
    const double v = scan.rows[k].T + scan.rows[k].R;
    if (v < best) { best = v; imin = k; }
  }
  // within grid resolution (log step ~1.55% here)
  CHECK(std::abs(std::log(scan.rows[imin].gamma_f / ge)) < 0.02);
}

}  // TEST_SUITE

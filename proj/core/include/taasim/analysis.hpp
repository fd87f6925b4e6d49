// analysis.hpp — critical coupling, loss/gain asymmetry, absorption and amplification maps.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "taasim/scattering.hpp"

namespace taasim {

// chi = ln R(delta = 0) evaluated with the free-space rate set to gamma_f.
// -inf when the reflectance vanishes identically.
double chi(const SystemParams& p, double gamma_f, Direction dir = Direction::Left);

// Loss/gain log-reflectance asymmetry |chi(+g) + chi(-g)| for g = |gamma_f|; zero iff
// the gain medium time-reverses the absorber, R(+g) * R(-g) = 1.
double delta_chi(const SystemParams& p, double gamma_f, Direction dir = Direction::Left);

struct GammaR0Result {
  double gamma_f = 0.0;     // loss rate of the reflectance zero
  double R0 = 0.0;          // residual reflectance there
  double gamma_edge = 0.0;  // edge-mode radiative rate, for comparison
  double ratio = 0.0;       // gamma_f / gamma_edge
  int evaluations = 0;
};

// Minimizes R(delta = 0) over Gamma_f in [0.1, 10] * Gamma_edge (golden section,
// absolute tolerance 1e-6 * Gamma), expanding the bracket when the minimum sits on
// its edge. No interior minimum after expansion (e.g. N = 1, monotone reflectance)
// raises NumericalError("no-interior-minimum"). The incidence side must face the
// edge mode: left needs phi < pi/2, right needs phi > pi/2.
GammaR0Result find_gamma_r0(const SystemParams& p, Direction dir = Direction::Left);

struct TimeReversalRow {
  double gamma_f = 0.0;  // magnitude g
  double chi_loss = 0.0, chi_gain = 0.0, dchi = 0.0;
  std::string note;  // per-row failure annotation, empty when clean
};

struct TimeReversalReport {
  std::vector<TimeReversalRow> rows;
  double gamma_edge = 0.0;
  double gamma_r0 = 0.0;  // NaN when the reflectance-zero search fails
  double max_dchi = 0.0;  // over clean rows
};

// Evaluates the asymmetry on a grid of loss/gain magnitudes (typically [0, 0.9] * Gamma_edge).
TimeReversalReport time_reversal_report(const SystemParams& p, const std::vector<double>& g_grid,
                                        Direction dir = Direction::Left);

struct AbsorptionMap {
  std::vector<double> J0_grid, phi_grid;
  std::vector<std::vector<double>> eta;          // [iJ][iphi]; NaN on per-cell failure
  std::vector<std::vector<std::string>> note;    // per-cell annotation, empty when clean
  std::vector<std::pair<double, double>> contour;  // (J0*, phi) roots of Gamma_edge = Gamma_f
  double Gamma_f = 0.0;
};

// eta(delta = 0) over a (J0, phi) grid at fixed Gamma_f, plus the critical-coupling
// contour located by bisection in J0 at each phi.
AbsorptionMap absorption_map(const SystemParams& base, const std::vector<double>& J0_grid,
                             const std::vector<double>& phi_grid, double Gamma_f,
                             Direction dir = Direction::Left, unsigned workers = 0);

struct AmpScanRow {
  double gamma_f = 0.0;
  double T = 0.0, R = 0.0, eta = 0.0, lnR = 0.0;
  double cond = 0.0;  // linear-solve condition estimate (diverges toward threshold)
  std::string note;
};

struct AmpScan {
  std::vector<AmpScanRow> rows;
  double gamma_edge = 0.0;
  bool transition_found = false;     // amplification-damping transition in the gain regime
  double transition_gamma_f = 0.0;   // refined argmin of ln R over Gamma_f < 0
};

// T, R, eta versus Gamma_f (loss and gain). Grid points within 1e-3 * Gamma_edge of the
// lasing threshold -Gamma_edge are rejected up front unless allow_near_singular is set.
AmpScan amplification_scan(const SystemParams& base, const std::vector<double>& gf_grid,
                           Direction dir = Direction::Left, bool allow_near_singular = false);

}  // namespace taasim

// analysis.cpp — derived observables over the scattering and spectral layers.
#include "taasim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "taasim/errors.hpp"
#include "taasim/minimize.hpp"
#include "taasim/parallel.hpp"
#include "taasim/spectral.hpp"

namespace taasim {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double reflectance_at_zero(const SystemParams& p, double gamma_f, Direction dir) {
  SystemParams q = p;
  q.Gamma_f = gamma_f;
  return scatter_markovian(q, 0.0, dir).R;
}
}  // namespace

double chi(const SystemParams& p, double gamma_f, Direction dir) {
  const double R = reflectance_at_zero(p, gamma_f, dir);
  return R > 0.0 ? std::log(R) : -std::numeric_limits<double>::infinity();
}

double delta_chi(const SystemParams& p, double gamma_f, Direction dir) {
  const double g = std::abs(gamma_f);
  return std::abs(chi(p, g, dir) + chi(p, -g, dir));
}

// ---- reflectance zero ----

GammaR0Result find_gamma_r0(const SystemParams& p, Direction dir) {
  p.validate();
  const double half_pi = 0.5 * kPi;
  const bool ok_side = (dir == Direction::Left && p.phi < half_pi) ||
                       (dir == Direction::Right && p.phi > half_pi);
  if (!ok_side)
    throw ConfigError({"critical coupling needs the incidence side facing the edge mode: "
                       "left incidence requires phi < pi/2 and right incidence phi > pi/2 "
                       "(got phi = " +
                       std::to_string(p.phi) + ", " + direction_name(dir) + " incidence)"});

  GammaR0Result res;
  res.gamma_edge = edge_decay_rate(p);

  int evals = 0;
  auto R0_log = [&](double x) {  // log-bracketed: minimize over x = ln Gamma_f
    ++evals;
    return reflectance_at_zero(p, std::exp(x), dir);
  };

  double lo = 0.1 * res.gamma_edge;
  double hi = 10.0 * res.gamma_edge;
  constexpr int kMaxExpand = 8;
  for (int round = 0;; ++round) {
    // Terminating at xtol_log guarantees the absolute width exp(b)-exp(a) < 1e-6*Gamma.
    const double xtol_log = 1e-6 * p.Gamma / hi;
    MinimizeResult m = golden_min(R0_log, std::log(lo), std::log(hi), xtol_log);
    if (!m.on_boundary) {
      res.gamma_f = std::exp(m.x);
      res.R0 = m.fx;
      res.ratio = res.gamma_f / res.gamma_edge;
      res.evaluations = evals;
      return res;
    }
    if (round == kMaxExpand)
      throw NumericalError("no-interior-minimum",
                           "R(0) has no interior minimum over Gamma_f in [" +
                               std::to_string(lo) + ", " + std::to_string(hi) +
                               "] after bracket expansion; the reflectance is monotonic in "
                               "the loss rate (expected for N = 1)");
    const double mid = std::sqrt(lo * hi);
    if (std::exp(m.x) < mid)
      lo *= 0.1;
    else
      hi *= 10.0;
  }
}

// ---- loss/gain asymmetry report ----

TimeReversalReport time_reversal_report(const SystemParams& p, const std::vector<double>& g_grid,
                                        Direction dir) {
  p.validate();
  TimeReversalReport rep;
  rep.gamma_edge = edge_decay_rate(p);
  try {
    rep.gamma_r0 = find_gamma_r0(p, dir).gamma_f;
  } catch (const Error&) {
    rep.gamma_r0 = kNaN;
  }
  rep.max_dchi = 0.0;
  for (double g : g_grid) {
    TimeReversalRow row;
    row.gamma_f = std::abs(g);
    try {
      row.chi_loss = chi(p, row.gamma_f, dir);
      row.chi_gain = chi(p, -row.gamma_f, dir);
      row.dchi = std::abs(row.chi_loss + row.chi_gain);
      rep.max_dchi = std::max(rep.max_dchi, row.dchi);
    } catch (const Error& e) {
      row.chi_loss = row.chi_gain = row.dchi = kNaN;
      row.note = e.code();
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---- absorption map ----

AbsorptionMap absorption_map(const SystemParams& base, const std::vector<double>& J0_grid,
                             const std::vector<double>& phi_grid, double Gamma_f, Direction dir,
                             unsigned workers) {
  base.validate();
  if (J0_grid.empty() || phi_grid.empty())
    throw ConfigError({"absorption map needs non-empty J0 and phi grids"});

  AbsorptionMap map;
  map.J0_grid = J0_grid;
  map.phi_grid = phi_grid;
  map.Gamma_f = Gamma_f;
  const size_t nJ = J0_grid.size(), nphi = phi_grid.size();
  map.eta.assign(nJ, std::vector<double>(nphi, kNaN));
  map.note.assign(nJ, std::vector<std::string>(nphi));

  parallel_for(nJ * nphi, workers, [&](size_t cell) {
    const size_t iJ = cell / nphi, ip = cell % nphi;
    SystemParams q = base;
    q.J0 = J0_grid[iJ];
    q.phi = phi_grid[ip];
    q.Gamma_f = Gamma_f;
    try {
      map.eta[iJ][ip] = scatter_markovian(q, 0.0, dir).eta;
    } catch (const Error& e) {
      map.note[iJ][ip] = e.code();
    }
  });

  // Critical-coupling contour: roots of Gamma_edge(J0; phi) = Gamma_f along J0.
  if (Gamma_f > 0.0) {
    auto edge_at = [&](double J0, double phi) -> double {
      SystemParams q = base;
      q.J0 = J0;
      q.phi = phi;
      try {
        return edge_decay_rate(q);
      } catch (const Error&) {
        return kNaN;
      }
    };
    for (double phi : phi_grid) {
      for (size_t iJ = 0; iJ + 1 < nJ; ++iJ) {
        double a = J0_grid[iJ], b = J0_grid[iJ + 1];
        double fa = edge_at(a, phi) - Gamma_f;
        double fb = edge_at(b, phi) - Gamma_f;
        if (!std::isfinite(fa) || !std::isfinite(fb) || fa * fb > 0.0) continue;
        for (int it = 0; it < 60 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
          const double m = 0.5 * (a + b);
          const double fm = edge_at(m, phi) - Gamma_f;
          if (!std::isfinite(fm)) break;
          if (fa * fm <= 0.0) {
            b = m;
            fb = fm;
          } else {
            a = m;
            fa = fm;
          }
        }
        map.contour.emplace_back(0.5 * (a + b), phi);
      }
    }
  }
  return map;
}

// ---- amplification scan ----

AmpScan amplification_scan(const SystemParams& base, const std::vector<double>& gf_grid,
                           Direction dir, bool allow_near_singular) {
  base.validate();
  AmpScan scan;
  scan.gamma_edge = edge_decay_rate(base);
  const double guard = 1e-3 * scan.gamma_edge;

  if (!allow_near_singular) {
    for (double g : gf_grid) {
      if (g < 0.0 && std::abs(g + scan.gamma_edge) < guard) {
        throw SingularityError(
            "Gamma_f = " + std::to_string(g) + " lies within 1e-3*Gamma_edge of the lasing "
            "threshold -Gamma_edge = " + std::to_string(-scan.gamma_edge) +
            "; rerun with the near-singular override to evaluate it",
            Complex{0.0, g + scan.gamma_edge}, base.Gamma / std::abs(g + scan.gamma_edge));
      }
    }
  }

  for (double g : gf_grid) {
    AmpScanRow row;
    row.gamma_f = g;
    SystemParams q = base;
    q.Gamma_f = g;
    try {
      ScatterResult s = scatter_markovian(q, 0.0, dir);
      row.T = s.T;
      row.R = s.R;
      row.eta = s.eta;
      row.cond = s.cond;
      row.lnR = s.R > 0.0 ? std::log(s.R) : -std::numeric_limits<double>::infinity();
    } catch (const Error& e) {
      row.T = row.R = row.eta = row.lnR = row.cond = kNaN;
      row.note = e.code() + std::string(": ") + e.what();
    }
    scan.rows.push_back(std::move(row));
  }

  // Transition: interior minimum of ln R over the gain points (d lnR/dGamma_f sign flip).
  std::vector<std::pair<double, double>> gain;  // (gamma_f, lnR), ascending
  for (const auto& row : scan.rows)
    if (row.gamma_f < 0.0 && std::isfinite(row.lnR)) gain.emplace_back(row.gamma_f, row.lnR);
  std::sort(gain.begin(), gain.end());
  for (size_t m = 1; m + 1 < gain.size(); ++m) {
    if (gain[m].second < gain[m - 1].second && gain[m].second < gain[m + 1].second) {
      scan.transition_found = true;
      auto lnR_at = [&](double g) {
        SystemParams q = base;
        q.Gamma_f = g;
        try {
          const double R = scatter_markovian(q, 0.0, dir).R;
          return R > 0.0 ? std::log(R) : -std::numeric_limits<double>::infinity();
        } catch (const Error&) {
          return std::numeric_limits<double>::infinity();
        }
      };
      scan.transition_gamma_f =
          golden_min(lnR_at, gain[m - 1].first, gain[m + 1].first, 1e-9 * base.Gamma).x;
      break;
    }
  }
  return scan;
}

}  // namespace taasim

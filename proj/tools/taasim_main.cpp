// taasim_main.cpp — subcommand dispatch: spectrum, scatter, dynamics, sweep,
// critical, figures, selftest.
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>

#include "common.hpp"
#include "figures.hpp"
#include "taasim/analysis.hpp"
#include "taasim/csv.hpp"
#include "taasim/dynamics.hpp"
#include "taasim/grid.hpp"
#include "taasim/spectral.hpp"
#include "taasim/sweep.hpp"

namespace taasim::cli {
namespace {

// ---- option plumbing ----

// Flags shared by every subcommand. A strict key=value config file (--config, keys
// under a [subcommand] section) may supply any of them; unknown keys are rejected and
// command-line flags take precedence.
void add_common(CLI::App* sub, CommonOpts& o) {
  sub->fallthrough();  // lets --config (owned by the main app) follow the subcommand
  sub->add_option("--N", o.N, "number of atoms (odd)")->capture_default_str();
  sub->add_option("--J0", o.J0, "coupling scale, units of Gamma")->capture_default_str();
  sub->add_option("--phi", o.phi, "dimerization angle; pi literals exact, e.g. 0.2pi")
      ->capture_default_str();
  sub->add_option("--gamma", o.Gamma, "waveguide decay rate (the unit)")->capture_default_str();
  sub->add_option("--gamma-f", o.Gamma_f, "free-space loss (>0) / gain (<0), units of Gamma")
      ->capture_default_str();
  sub->add_option("--theta", o.theta, "propagation phase k0*d, e.g. 3/2pi")
      ->capture_default_str();
  sub->add_option("--omega0", o.omega0, "atomic frequency (exact solver)")
      ->capture_default_str();
  sub->add_option("--epsilon", o.epsilon, "drive amplitude")->capture_default_str();
  sub->add_option("--direction", o.direction, "incidence side")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();
  sub->add_option("--out", o.outdir, "output directory (default: $TAASIM_OUTDIR or .)");
  sub->add_option("--workers", o.workers, "worker threads (0 = hardware)")
      ->capture_default_str();
  sub->add_flag("--allow-near-singular", o.allow_near_singular,
                "evaluate within the lasing-threshold guard band");
  sub->add_option("--seed", o.seed, "random seed (reserved; solvers are deterministic)")
      ->capture_default_str();
}

json common_json(const CommonOpts& o) {
  json j = params_json(o.params(), o);
  j["workers"] = o.workers;
  j["allow_near_singular"] = o.allow_near_singular;
  j["seed"] = o.seed;
  return j;
}

std::string shell_join(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    std::string a = argv[i];
    s += a.find_first_of(" \t\"'") == std::string::npos ? a : "'" + a + "'";
  }
  return s;
}

// ---- spectrum ----

struct SpectrumOpts {
  CommonOpts c;
};

int run_spectrum(const SpectrumOpts& o, const std::string& command) {
  Stopwatch sw;
  SystemParams p = o.c.params();
  p.validate();
  ModeSet ms = eigendecompose(p);

  std::string header = "j,Delta,Gamma_j,edge_flag";
  for (int i = 1; i <= p.N; ++i) header += ",occ_" + std::to_string(i);
  std::vector<std::string> rows;
  for (int j = 0; j < ms.size(); ++j) {
    std::vector<std::string> cells{csv::fmt(j + 1), csv::fmt(ms.Delta(j)),
                                   csv::fmt(ms.GammaJ(j)),
                                   j == ms.edge_index ? "1" : "0"};
    for (int i = 0; i < p.N; ++i) cells.push_back(csv::fmt(std::norm(ms.psiR(i, j))));
    rows.push_back(csv::row(cells));
  }
  const fs::path dir = o.c.resolved_outdir();
  write_csv((dir / "spectrum.csv").string(), header, rows);

  json cfg = common_json(o.c);
  write_manifest(dir, command, cfg, {"spectrum.csv"}, sw.seconds(), ms.warnings);
  std::printf("spectrum: %d modes, Gamma_edge = %.6g, gap = %.6g -> %s\n", ms.size(),
              ms.GammaJ(ms.edge_index), ms.gap, (dir / "spectrum.csv").c_str());
  return 0;
}

// ---- scatter ----

struct ScatterOpts {
  CommonOpts c;
  double delta = 0.0;
  double delta_min = 0.0, delta_max = 0.0;
  int delta_count = 0;  // >0 selects range mode
  std::string solver = "markovian";
};

int run_scatter(const ScatterOpts& o, const std::string& command) {
  Stopwatch sw;
  SystemParams p = o.c.params();
  p.validate(o.solver == "exact");
  if (o.delta_count < 0 || (o.delta_count > 0 && !(o.delta_min < o.delta_max)))
    throw ConfigError({"delta range requires delta-min < delta-max and delta-count >= 1"});

  std::vector<double> deltas = o.delta_count > 0
                                   ? linspace(o.delta_min, o.delta_max, o.delta_count)
                                   : std::vector<double>{o.delta};
  std::vector<std::string> rows;
  for (double d : deltas) {
    ScatterResult s = o.solver == "exact" ? scatter_exact(p, d, o.c.dir()).first
                                          : scatter_markovian(p, d, o.c.dir());
    rows.push_back(csv::row({csv::fmt(d), csv::fmt(s.t.real()), csv::fmt(s.t.imag()),
                             csv::fmt(s.T), csv::fmt(s.R), csv::fmt(s.eta),
                             csv::fmt(s.cond)}));
  }
  const fs::path dir = o.c.resolved_outdir();
  write_csv((dir / "scatter.csv").string(), "delta,ReT,ImT,T,R,eta,cond", rows);

  json cfg = common_json(o.c);
  cfg["solver"] = o.solver;
  if (o.delta_count > 0)
    cfg["delta"] = {{"min", o.delta_min}, {"max", o.delta_max}, {"count", o.delta_count}};
  else
    cfg["delta"] = o.delta;
  write_manifest(dir, command, cfg, {"scatter.csv"}, sw.seconds());
  std::printf("scatter: %zu point(s), %s incidence, %s solver -> %s\n", deltas.size(),
              o.c.direction.c_str(), o.solver.c_str(), (dir / "scatter.csv").c_str());
  return 0;
}

// ---- dynamics ----

struct DynamicsOpts {
  CommonOpts c;
  double t_center = 12.0, sigma_t = 2.0, delta_c = 0.0;
  double t_max = 60.0, dt_sample = 0.1;
  double x_min = -4.0, x_max = 0.0;  // x_max <= x_min means "N + 5"
  int x_count = 241;
  double fit_lo = 0.0, fit_hi = 0.0;  // fit_hi > fit_lo enables the decay fit
};

int run_dynamics(const DynamicsOpts& o, const std::string& command) {
  Stopwatch sw;
  SystemParams p = o.c.params();
  p.validate();

  PulseSpec pulse;
  pulse.t_center = o.t_center;
  pulse.sigma_t = o.sigma_t;
  pulse.delta_c = o.delta_c;
  pulse.direction = o.c.dir();

  Trajectory traj = evolve(p, pulse, o.t_max, o.dt_sample);
  const double x_hi = o.x_max > o.x_min ? o.x_max : p.N + 5.0;
  attach_field(traj, linspace(o.x_min, x_hi, o.x_count));

  std::vector<std::string> frows;  // long format: one row per (t, x)
  frows.reserve(traj.times.size() * traj.x_grid.size());
  for (size_t k = 0; k < traj.times.size(); ++k)
    for (size_t m = 0; m < traj.x_grid.size(); ++m)
      frows.push_back(csv::row({csv::fmt(traj.times[k]), csv::fmt(traj.x_grid[m]),
                                csv::fmt(traj.field[k][m])}));
  std::vector<std::string> arows;  // one row per (t, atom)
  arows.reserve(traj.times.size() * static_cast<size_t>(p.N));
  for (size_t k = 0; k < traj.times.size(); ++k)
    for (int i = 0; i < p.N; ++i)
      arows.push_back(csv::row({csv::fmt(traj.times[k]), csv::fmt(i + 1),
                                csv::fmt(std::norm(traj.lambda[k](i)))}));

  const fs::path dir = o.c.resolved_outdir();
  write_csv((dir / "dynamics_field.csv").string(), "t,x,intensity", frows);
  write_csv((dir / "dynamics_atoms.csv").string(), "t,i,lambda2", arows);

  json cfg = common_json(o.c);
  cfg["pulse"] = {{"t_center", pulse.t_center},
                  {"sigma_t", pulse.sigma_t},
                  {"delta_c", pulse.delta_c}};
  cfg["t_max"] = o.t_max;
  cfg["dt_sample"] = o.dt_sample;
  cfg["x_grid"] = {{"min", o.x_min}, {"max", x_hi}, {"count", o.x_count}};

  json extra{{"flux_in", traj.flux_in}, {"flux_out", traj.flux_out}};
  std::vector<std::string> warnings = traj.warnings;
  if (o.fit_hi > o.fit_lo) {
    const double rate = fit_decay_rate(traj, o.fit_lo, o.fit_hi);
    extra["decay_rate"] = rate;
    extra["fit_window"] = {o.fit_lo, o.fit_hi};
    std::printf("dynamics: fitted energy decay rate %.8g over t in [%g, %g]\n", rate,
                o.fit_lo, o.fit_hi);
  }
  cfg["results"] = extra;
  write_manifest(dir, command, cfg, {"dynamics_field.csv", "dynamics_atoms.csv"},
                 sw.seconds(), warnings);
  std::printf("dynamics: %zu samples, flux_in = %.8g, flux_out = %.8g -> %s\n",
              traj.times.size(), traj.flux_in, traj.flux_out, dir.c_str());
  return 0;
}

// ---- sweep ----

struct SweepOpts {
  CommonOpts c;
  std::string axis1_param, axis2_param;
  double axis1_lo = 0.0, axis1_hi = 0.0, axis2_lo = 0.0, axis2_hi = 0.0;
  int axis1_count = 0, axis2_count = 0;
  std::string axis1_spacing = "linear", axis2_spacing = "linear";
  std::vector<std::string> observables;
};

int run_sweep_cmd(const SweepOpts& o, const std::string& command) {
  Stopwatch sw;
  SweepSpec spec;
  spec.base = o.c.params();
  spec.axis1 = {o.axis1_param, o.axis1_lo, o.axis1_hi, o.axis1_count, o.axis1_spacing};
  if (!o.axis2_param.empty())
    spec.axis2 = SweepAxis{o.axis2_param, o.axis2_lo, o.axis2_hi, o.axis2_count,
                           o.axis2_spacing};
  spec.observables = o.observables;
  spec.direction = o.c.dir();
  spec.workers = o.c.workers;
  spec.allow_near_singular = o.c.allow_near_singular;

  SweepResult res = run_sweep(spec);
  std::string header;
  for (size_t i = 0; i < res.columns.size(); ++i) {
    if (i) header += ',';
    header += csv::escape(res.columns[i]);
  }
  std::vector<std::string> rows;
  rows.reserve(res.rows.size());
  for (const auto& r : res.rows) rows.push_back(csv::row(r));
  const fs::path dir = o.c.resolved_outdir();
  write_csv((dir / "sweep.csv").string(), header, rows);

  json cfg = common_json(o.c);
  auto axis_json = [](const SweepAxis& a) {
    return json{{"param", a.param}, {"lo", a.lo},           {"hi", a.hi},
                {"count", a.count}, {"spacing", a.spacing}};
  };
  cfg["axis1"] = axis_json(spec.axis1);
  if (spec.axis2) cfg["axis2"] = axis_json(*spec.axis2);
  cfg["observables"] = spec.observables;
  write_manifest(dir, command, cfg, {"sweep.csv"}, sw.seconds());
  std::printf("sweep: %zu row(s), %zu column(s) -> %s\n", res.rows.size(),
              res.columns.size(), (dir / "sweep.csv").c_str());
  return 0;
}

// ---- critical ----

struct CriticalOpts {
  CommonOpts c;
  int g_count = 10;      // time-reversal grid size over [0, 0.9] * Gamma_edge
  double g_span = 0.9;   // grid upper end in units of Gamma_edge
};

int run_critical(const CriticalOpts& o, const std::string& command) {
  Stopwatch sw;
  SystemParams p = o.c.params();
  p.validate();
  if (o.g_count < 2 || o.g_span <= 0.0)
    throw ConfigError({"critical: g-count >= 2 and g-span > 0 required"});

  GammaR0Result r0 = find_gamma_r0(p, o.c.dir());
  TimeReversalReport tr =
      time_reversal_report(p, linspace(0.0, o.g_span * r0.gamma_edge, o.g_count), o.c.dir());

  std::vector<std::string> rows;
  for (const auto& row : tr.rows)
    rows.push_back(csv::row({csv::fmt(row.gamma_f), csv::fmt(row.chi_loss),
                             csv::fmt(row.chi_gain), csv::fmt(row.dchi), row.note}));
  const fs::path dir = o.c.resolved_outdir();
  write_csv((dir / "time_reversal.csv").string(), "gamma_f,chi_loss,chi_gain,dchi,note",
            rows);

  json summary{{"gamma_edge", r0.gamma_edge},
               {"gamma_r0", r0.gamma_f},
               {"ratio", r0.ratio},
               {"R0", r0.R0},
               {"evaluations", r0.evaluations},
               {"max_dchi", tr.max_dchi}};
  write_json_file(dir / "critical.json", summary);

  json cfg = common_json(o.c);
  cfg["g_count"] = o.g_count;
  cfg["g_span"] = o.g_span;
  write_manifest(dir, command, cfg, {"time_reversal.csv", "critical.json"}, sw.seconds());
  std::printf("critical: Gamma_edge = %.8g, Gamma_r0 = %.8g (ratio %.6g), max dchi = %.3g\n",
              r0.gamma_edge, r0.gamma_f, r0.ratio, tr.max_dchi);
  return 0;
}

// ---- figures ----

struct FiguresOpts {
  CommonOpts c;
  std::vector<std::string> keys;
};

int run_figures(const FiguresOpts& o, const std::string& command) {
  Stopwatch sw;
  std::vector<std::string> keys = o.keys;
  if (keys.empty() || (keys.size() == 1 && keys[0] == "all")) keys = figure_keys();
  {
    std::vector<std::string> bad;
    const auto& known = figure_keys();
    for (const auto& k : keys)
      if (std::find(known.begin(), known.end(), k) == known.end())
        bad.push_back("unknown figure key '" + k + "'");
    if (!bad.empty()) throw ConfigError(bad);
  }

  const fs::path dir = o.c.resolved_outdir();
  std::vector<std::string> outputs;
  for (const auto& k : keys) {
    for (auto& f : generate_figure(k, o.c, dir)) outputs.push_back(f);
    std::printf("figures: %s done\n", k.c_str());
  }
  json cfg = common_json(o.c);
  cfg["keys"] = keys;
  write_manifest(dir, command, cfg, outputs, sw.seconds());
  std::printf("figures: %zu file(s) -> %s\n", outputs.size(), dir.c_str());
  return 0;
}

// ---- selftest ----

struct SelftestOpts {
  CommonOpts c;
};

int run_selftest(const SelftestOpts& o, const std::string& command) {
  Stopwatch sw;
  int passed = 0, failed = 0;
  auto check = [&](const std::string& name, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (ok) {
      ++passed;
      std::printf("ok   - %s\n", name.c_str());
    } else {
      ++failed;
      std::printf("FAIL - %s%s%s\n", name.c_str(), detail.empty() ? "" : ": ",
                  detail.c_str());
    }
  };

  SystemParams p;  // reference configuration: N=7, J0=2.2, phi=0.2pi, theta=3pi/2
  p.Gamma_f = 0.0;

  check("couplings-dimerized-strong-first", [&](std::string& d) {
    auto J = build_couplings(p.J0, p.phi, p.N);
    const double J1 = p.J0 * (1.0 + std::cos(p.phi));
    if (J[0] != J1 || !(J[0] > J[1])) {
      d = "J1 = " + std::to_string(J[0]);
      return false;
    }
    return true;
  });

  check("uniform-shift-under-gamma-f", [&](std::string& d) {
    ModeSet a = eigendecompose(p);
    SystemParams q = p;
    q.Gamma_f = 0.3;
    ModeSet b = eigendecompose(q);
    double worst = 0.0;
    for (int j = 0; j < a.size(); ++j)
      worst = std::max({worst, std::abs(a.Delta(j) - b.Delta(j)),
                        std::abs(a.GammaJ(j) - b.GammaJ(j))});
    d = "max shift " + std::to_string(worst);
    return worst < 1e-10;
  });

  check("spectral-mirror-pairing", [&](std::string& d) {
    ModeSet a = eigendecompose(p);
    for (int j = 0; j < a.size(); ++j) {
      bool found = false;
      for (int k = 0; k < a.size(); ++k)
        if (std::abs(a.Delta(k) + a.Delta(j)) < 1e-9 &&
            std::abs(a.GammaJ(k) - a.GammaJ(j)) < 1e-9)
          found = true;
      if (!found) {
        d = "unpaired Delta = " + std::to_string(a.Delta(j));
        return false;
      }
    }
    return true;
  });

  check("biorthogonal-completeness", [&](std::string& d) {
    ModeSet a = eigendecompose(p);
    d = "residual " + std::to_string(a.completeness_residual);
    return a.completeness_residual < 1e-8;
  });

  check("single-atom-closed-form", [&](std::string& d) {
    SystemParams q = p;
    q.N = 1;
    q.Gamma_f = 0.25;
    const double delta = 0.37;
    ScatterResult s = scatter_markovian(q, delta, Direction::Left);
    const Complex den(delta, q.Gamma + q.Gamma_f);
    const Complex t_ref = Complex(delta, q.Gamma_f) / den;
    const double err = std::abs(s.t - t_ref) + std::abs(std::abs(s.r) - q.Gamma / std::abs(den));
    d = "err " + std::to_string(err);
    return err < 1e-14;
  });

  check("unitarity-lossless", [&](std::string& d) {
    double worst = 0.0;
    for (double delta : {0.0, 0.31, 1.7, -2.9}) {
      ScatterResult s = scatter_markovian(p, delta, Direction::Left);
      worst = std::max(worst, std::abs(s.T + s.R - 1.0));
    }
    d = "max |T+R-1| = " + std::to_string(worst);
    return worst < 1e-10;
  });

  check("transmission-reciprocity", [&](std::string& d) {
    SystemParams q = p;
    q.Gamma_f = 0.08;
    double worst = 0.0;
    for (double delta : {0.0, 0.5, -1.3}) {
      ScatterResult l = scatter_markovian(q, delta, Direction::Left);
      ScatterResult r = scatter_markovian(q, delta, Direction::Right);
      worst = std::max(worst, std::abs(l.t - r.t));
    }
    d = "max |t_L - t_R| = " + std::to_string(worst);
    return worst < 1e-10;
  });

  check("mirror-symmetry-law", [&](std::string& d) {
    SystemParams q = p;
    q.Gamma_f = 0.05;
    SystemParams m = q;
    m.phi = kPi - q.phi;
    double worst = 0.0;
    for (double delta : {0.0, 0.8}) {
      ScatterResult a = scatter_markovian(m, delta, Direction::Left);
      ScatterResult b = scatter_markovian(q, delta, Direction::Right);
      // e^{-2 i theta (N+1)} = 1 exactly for odd N at theta = 3pi/2
      const Complex factor = q.theta.unit_power(-2 * (q.N + 1));
      worst = std::max({worst, std::abs(a.t - b.t), std::abs(a.r - factor * b.r)});
    }
    d = "max deviation " + std::to_string(worst);
    return worst < 1e-10;
  });

  check("exact-vs-markovian-resonance", [&](std::string& d) {
    SystemParams q = p;
    q.Gamma_f = 0.013;
    ScatterResult mk = scatter_markovian(q, 0.0, Direction::Left);
    ScatterResult ex = scatter_exact(q, 0.0, Direction::Left).first;
    const double err = std::abs(mk.t - ex.t) + std::abs(mk.r - ex.r);
    d = "|dt|+|dr| = " + std::to_string(err);
    return err < 1e-6;
  });

  check("channel-resummation", [&](std::string& d) {
    SystemParams q = p;
    q.Gamma_f = 0.013;
    ScatterResult s = scatter_markovian(q, 0.2, Direction::Left);
    ChannelDecomposition ch = scatter_channels(q, 0.2, Direction::Left);
    const double err = std::abs(ch.r_sum - s.r) + std::abs(ch.t_sum - s.t);
    d = "resummation err " + std::to_string(err);
    return err < 1e-10;
  });

  check("flux-conservation-with-residual", [&](std::string& d) {
    // Gamma_f = 0: input flux minus output flux equals the residual excitation.
    Trajectory tr = evolve(p, PulseSpec{}, 60.0, 0.1);
    double res = 0.0;
    for (int i = 0; i < p.N; ++i) res += std::norm(tr.lambda.back()(i));
    const double deficit = std::abs(tr.flux_in - tr.flux_out - res);
    d = "|flux_in - flux_out - residual| / flux_in = " + std::to_string(deficit / tr.flux_in);
    return deficit < 1e-3 * tr.flux_in;
  });

  check("drive-linearity-exact", [&](std::string& d) {
    Trajectory t1 = evolve(p, PulseSpec{}, 30.0, 0.5);
    SystemParams q = p;
    q.epsilon = 2.0 * p.epsilon;
    Trajectory t2 = evolve(q, PulseSpec{}, 30.0, 0.5);
    double worst = 0.0;
    for (size_t k = 0; k < t1.times.size(); ++k)
      for (int i = 0; i < p.N; ++i)
        worst = std::max(worst, std::abs(t2.lambda[k](i) - 2.0 * t1.lambda[k](i)));
    d = "max |lambda(2eps) - 2 lambda(eps)| = " + std::to_string(worst);
    return worst == 0.0;
  });

  check("sweep-determinism", [&](std::string& d) {
    SweepSpec spec;
    spec.base = p;
    spec.axis1 = {"Gamma_f", 0.001, 0.05, 9, "linear"};
    spec.observables = {"T", "R", "eta"};
    spec.workers = 4;
    SweepResult a = run_sweep(spec);
    SweepResult b = run_sweep(spec);
    if (a.rows != b.rows) {
      d = "reruns differ";
      return false;
    }
    return true;
  });

  std::printf("selftest: %d/%d passed\n", passed, passed + failed);

  const fs::path dir = o.c.resolved_outdir();
  json cfg = common_json(o.c);
  cfg["passed"] = passed;
  cfg["failed"] = failed;
  write_manifest(dir, command, cfg, {}, sw.seconds());
  if (failed) throw NumericalError("selftest", std::to_string(failed) + " selftest check(s) failed");
  return 0;
}

}  // namespace
}  // namespace taasim::cli

int main(int argc, char** argv) {
  using namespace taasim;
  using namespace taasim::cli;

  CLI::App app{"taasim — single-photon transport through a dimerized atom array "
               "coupled to a waveguide"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key = value config file; subcommand options live under a [subcommand] "
                 "section; flags override file values; unknown keys rejected");
  app.allow_config_extras(CLI::config_extras_mode::error);
  const std::string command = shell_join(argc, argv);

  SpectrumOpts spectrum_opts;
  auto* spectrum = app.add_subcommand("spectrum", "collective-mode spectrum and occupations");
  add_common(spectrum, spectrum_opts.c);

  ScatterOpts scatter_opts;
  auto* scatter = app.add_subcommand("scatter", "steady-state transmission and reflection");
  add_common(scatter, scatter_opts.c);
  scatter->add_option("--delta", scatter_opts.delta, "detuning (single point)")
      ->capture_default_str();
  scatter->add_option("--delta-min", scatter_opts.delta_min, "range start");
  scatter->add_option("--delta-max", scatter_opts.delta_max, "range end");
  scatter->add_option("--delta-count", scatter_opts.delta_count, "range points (0 = single)");
  scatter->add_option("--solver", scatter_opts.solver, "linear-response solver")
      ->check(CLI::IsMember({"markovian", "exact"}))
      ->capture_default_str();

  DynamicsOpts dynamics_opts;
  auto* dynamics = app.add_subcommand("dynamics", "pulsed wavepacket evolution");
  add_common(dynamics, dynamics_opts.c);
  dynamics->add_option("--t-center", dynamics_opts.t_center, "pulse center")
      ->capture_default_str();
  dynamics->add_option("--sigma-t", dynamics_opts.sigma_t, "pulse duration")
      ->capture_default_str();
  dynamics->add_option("--delta-c", dynamics_opts.delta_c, "carrier detuning")
      ->capture_default_str();
  dynamics->add_option("--t-max", dynamics_opts.t_max, "evolution horizon")
      ->capture_default_str();
  dynamics->add_option("--dt-sample", dynamics_opts.dt_sample, "sampling interval")
      ->capture_default_str();
  dynamics->add_option("--x-min", dynamics_opts.x_min, "field grid start")
      ->capture_default_str();
  dynamics->add_option("--x-max", dynamics_opts.x_max, "field grid end (default N+5)");
  dynamics->add_option("--x-count", dynamics_opts.x_count, "field grid points")
      ->capture_default_str();
  dynamics->add_option("--fit-lo", dynamics_opts.fit_lo, "decay-fit window start");
  dynamics->add_option("--fit-hi", dynamics_opts.fit_hi, "decay-fit window end");

  SweepOpts sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "1-D/2-D parameter sweep");
  add_common(sweep, sweep_opts.c);
  sweep->add_option("--axis1-param", sweep_opts.axis1_param, "Gamma_f | phi | J0 | delta")
      ->required();
  sweep->add_option("--axis1-lo", sweep_opts.axis1_lo, "axis 1 start")->required();
  sweep->add_option("--axis1-hi", sweep_opts.axis1_hi, "axis 1 end")->required();
  sweep->add_option("--axis1-count", sweep_opts.axis1_count, "axis 1 points")->required();
  sweep->add_option("--axis1-spacing", sweep_opts.axis1_spacing, "linear | log | signed-log")
      ->capture_default_str();
  sweep->add_option("--axis2-param", sweep_opts.axis2_param, "optional inner axis");
  sweep->add_option("--axis2-lo", sweep_opts.axis2_lo, "axis 2 start");
  sweep->add_option("--axis2-hi", sweep_opts.axis2_hi, "axis 2 end");
  sweep->add_option("--axis2-count", sweep_opts.axis2_count, "axis 2 points");
  sweep->add_option("--axis2-spacing", sweep_opts.axis2_spacing, "linear | log | signed-log")
      ->capture_default_str();
  sweep->add_option("--observables", sweep_opts.observables,
                    "comma-separated observable list (may be empty)")
      ->delimiter(',');

  CriticalOpts critical_opts;
  auto* critical = app.add_subcommand("critical",
                                      "critical coupling and time-reversal asymmetry");
  add_common(critical, critical_opts.c);
  critical->add_option("--g-count", critical_opts.g_count, "time-reversal grid points")
      ->capture_default_str();
  critical->add_option("--g-span", critical_opts.g_span,
                       "grid upper end, units of Gamma_edge")
      ->capture_default_str();

  FiguresOpts figures_opts;
  auto* figures = app.add_subcommand("figures", "canonical datasets (fig1b ... fig4d)");
  add_common(figures, figures_opts.c);
  figures->add_option("keys", figures_opts.keys, "figure keys, or 'all'");

  SelftestOpts selftest_opts;
  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
  add_common(selftest, selftest_opts.c);

  try {
    app.parse(argc, argv);
    if (*spectrum) return run_spectrum(spectrum_opts, command);
    if (*scatter) return run_scatter(scatter_opts, command);
    if (*dynamics) return run_dynamics(dynamics_opts, command);
    if (*sweep) return run_sweep_cmd(sweep_opts, command);
    if (*critical) return run_critical(critical_opts, command);
    if (*figures) return run_figures(figures_opts, command);
    if (*selftest) return run_selftest(selftest_opts, command);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    nlohmann::json j{{"error", "config"}, {"message", e.what()}};
    std::cerr << j.dump(2) << std::endl;
    return 2;
  } catch (const Error& e) {
    return emit_error(e);
  } catch (const std::exception& e) {
    nlohmann::json j{{"error", "internal"}, {"message", e.what()}};
    std::cerr << j.dump(2) << std::endl;
    return 3;
  }
  return 0;
}

// figures.cpp — one dataset per canonical figure key, with sidecar metadata.
#include "figures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "taasim/analysis.hpp"
#include "taasim/csv.hpp"
#include "taasim/grid.hpp"
#include "taasim/spectral.hpp"

namespace taasim::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double safe_log(double x) {
  return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

json meta_base(const std::string& key, const std::string& description, const SystemParams& p,
               const CommonOpts& opts) {
  return json{{"figure", key},
              {"description", description},
              {"params", params_json(p, opts)},
              {"units", {{"rates", "Gamma"}, {"lengths", "d"}, {"times", "1/Gamma"}}},
              {"provenance",
               {{"generated_by", std::string("taasim figures ") + key},
                {"engine", kEngineName},
                {"version", kVersion}}}};
}

struct Emitter {
  fs::path dir;
  std::vector<std::string> files;

  void csv(const std::string& name, const std::string& header,
           const std::vector<std::string>& rows) {
    write_csv((dir / name).string(), header, rows);
    files.push_back(name);
  }
  void meta(const std::string& key, json m) {
    m["files"] = files;
    write_json_file(dir / (key + ".meta.json"), m);
    files.push_back(key + ".meta.json");
  }
};

// Drop grid points inside the lasing-threshold guard band.
std::vector<double> filter_guard(std::vector<double> g, double gamma_edge, bool allow) {
  if (allow) return g;
  const double guard = 1e-3 * gamma_edge;
  g.erase(std::remove_if(g.begin(), g.end(),
                         [&](double x) { return x < 0.0 && std::abs(x + gamma_edge) < guard; }),
          g.end());
  return g;
}

// ---- individual figures ----

void fig1b(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  Eigen::MatrixXd Hb = build_bare_hamiltonian(p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hb);
  const Eigen::VectorXd E = es.eigenvalues();
  int edge = 0;
  for (int j = 1; j < p.N; ++j)
    if (std::abs(E(j)) < std::abs(E(edge))) edge = j;
  std::vector<std::string> rows;
  for (int j = 0; j < p.N; ++j)
    rows.push_back(csv::row({csv::fmt(j + 1), csv::fmt(E(j)), j == edge ? "1" : "0"}));
  em.csv("fig1b.csv", "j,E,edge_flag", rows);

  std::vector<std::string> erows;
  for (int i = 0; i < p.N; ++i) {
    const double a = es.eigenvectors()(i, edge);
    erows.push_back(csv::row({csv::fmt(i + 1), csv::fmt(a), csv::fmt(a * a)}));
  }
  em.csv("fig1b_edge_state.csv", "i,psi,psi2", erows);
  em.meta("fig1b", meta_base("fig1b", "bare-chain energy spectrum and zero-mode profile", p, o));
}

void fig1d(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  SystemParams q = p;
  q.Gamma_f = 0.0;
  auto [sc, pw] = scatter_exact(q, 0.0, Direction::Left);
  const double eps2 = q.epsilon * q.epsilon;

  std::vector<double> xg = linspace(-4.0, q.N + 5.0, 20 * (q.N + 9) + 1);
  std::vector<double> prof = field_profile(pw, q, xg);
  std::vector<std::string> rows;
  for (size_t k = 0; k < xg.size(); ++k)
    rows.push_back(csv::row({csv::fmt(xg[k]), csv::fmt(eps2 * prof[k])}));
  em.csv("fig1d.csv", "x,intensity", rows);

  std::vector<std::string> arows;  // |lambda_i|^2 = Gamma eps^2 |Lambda_i|^2
  for (int i = 0; i < q.N; ++i)
    arows.push_back(csv::row(
        {csv::fmt(i + 1), csv::fmt(q.Gamma * eps2 * std::norm(sc.Lambda(i)))}));
  em.csv("fig1d_atoms.csv", "i,lambda2", arows);

  json m = meta_base("fig1d", "steady-state photon localization: field intensity and "
                              "atomic excitation at resonance, lossless array", p, o);
  m["notes"] = "intensity and lambda2 include the drive amplitude (scaled by epsilon^2)";
  em.meta("fig1d", m);
}

void fig2c(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  ModeSet ms = eigendecompose(p);
  std::vector<std::string> rows;
  for (int j = 0; j < ms.size(); ++j)
    rows.push_back(csv::row({csv::fmt(j + 1), csv::fmt(ms.Delta(j)), csv::fmt(ms.GammaJ(j)),
                             j == ms.edge_index ? "1" : "0"}));
  em.csv("fig2c.csv", "j,Delta,Gamma_j,edge_flag", rows);
  json m = meta_base("fig2c", "collective-mode frequencies and decay rates", p, o);
  m["gamma_edge"] = ms.GammaJ(ms.edge_index);
  if (!ms.warnings.empty()) m["warnings"] = ms.warnings;
  em.meta("fig2c", m);
}

void fig2d(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  const double gf = p.Gamma_f > 0.0 ? p.Gamma_f : 0.013 * p.Gamma;
  const std::vector<double> J0g = linspace(0.2, 3.0, 101);
  const std::vector<double> phig = linspace(0.02 * kPi, 0.98 * kPi, 101);
  AbsorptionMap map = absorption_map(p, J0g, phig, gf, Direction::Left, o.workers);

  std::vector<std::string> rows;
  for (size_t iJ = 0; iJ < J0g.size(); ++iJ)
    for (size_t ip = 0; ip < phig.size(); ++ip)
      rows.push_back(csv::row({csv::fmt(J0g[iJ]), csv::fmt(phig[ip]),
                               csv::fmt(map.eta[iJ][ip]), map.note[iJ][ip]}));
  em.csv("fig2d.csv", "J0,phi,eta,note", rows);

  std::vector<std::string> crow;
  for (const auto& [J0c, phic] : map.contour)
    crow.push_back(csv::row({csv::fmt(J0c), csv::fmt(phic)}));
  em.csv("fig2d_contour.csv", "J0,phi", crow);

  json m = meta_base("fig2d", "resonant absorption over coupling parameters with the "
                              "critical-coupling contour Gamma_edge = Gamma_f", p, o);
  m["Gamma_f"] = gf;
  em.meta("fig2d", m);
}

void fig3a(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  const double ge = edge_decay_rate(p);
  std::vector<double> grid = filter_guard(
      signed_logspace(-1.5 * ge, 3.0 * ge, 241, 1e-4 * ge), ge, o.allow_near_singular);
  AmpScan scan = amplification_scan(p, grid, Direction::Left, o.allow_near_singular);

  std::vector<std::string> rows;
  for (const auto& r : scan.rows)
    rows.push_back(csv::row({csv::fmt(r.gamma_f), csv::fmt(r.T), csv::fmt(r.R),
                             csv::fmt(safe_log(r.T)), csv::fmt(r.lnR), csv::fmt(r.T + r.R),
                             csv::fmt(r.cond), r.note}));
  em.csv("fig3a.csv", "gamma_f,T,R,lnT,lnR,TplusR,cond,note", rows);

  SystemParams q = p;
  q.Gamma_f = ge;  // critical coupling for the lineshape inset
  std::vector<std::string> irows;
  for (double d : linspace(-6.0, 6.0, 601)) {
    ScatterResult s = scatter_markovian(q, d, Direction::Left);
    irows.push_back(csv::row({csv::fmt(d), csv::fmt(s.T), csv::fmt(s.R), csv::fmt(s.eta)}));
  }
  em.csv("fig3a_inset.csv", "delta,T,R,eta", irows);

  json m = meta_base("fig3a", "log transmission and reflection across loss and gain, with "
                              "the resonant absorption lineshape at critical coupling", p, o);
  m["gamma_edge"] = ge;
  em.meta("fig3a", m);
}

void fig3b(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  const double ge = edge_decay_rate(p);
  std::vector<std::string> rows;
  for (double g : logspace(0.1 * ge, 10.0 * ge, 301)) {
    SystemParams q = p;
    q.Gamma_f = g;
    ScatterResult s = scatter_markovian(q, 0.0, Direction::Left);
    rows.push_back(
        csv::row({csv::fmt(g), csv::fmt(safe_log(s.R)), csv::fmt(safe_log(s.T + s.R))}));
  }
  em.csv("fig3b.csv", "gamma_f,lnR,lnTplusR", rows);

  json m = meta_base("fig3b", "loss-side minima: ln R at Gamma_r0, ln(T+R) at Gamma_edge",
                     p, o);
  m["gamma_edge"] = ge;
  try {
    m["gamma_r0"] = find_gamma_r0(p, Direction::Left).gamma_f;
  } catch (const Error& e) {
    m["gamma_r0_error"] = e.code();
  }
  em.meta("fig3b", m);
}

void fig3c(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  const double ge = edge_decay_rate(p);
  std::vector<std::string> rows;
  for (double g : linspace(0.0, 3.0 * ge, 301)) {
    SystemParams q = p;
    q.Gamma_f = g;
    ChannelDecomposition ch = scatter_channels(q, 0.0, Direction::Left);
    rows.push_back(csv::row({csv::fmt(g), csv::fmt(ch.xi_edge_r.imag()),
                             csv::fmt(ch.xi_bulk_r.imag()), csv::fmt(ch.xi_edge_t.imag()),
                             csv::fmt(ch.xi_bulk_t.imag())}));
  }
  em.csv("fig3c.csv", "gamma_f,Im_xi_edge_r,Im_xi_bulk_r,Im_xi_edge_t,Im_xi_bulk_t", rows);

  json m = meta_base("fig3c", "edge/bulk channel interference versus loss rate "
                              "(reflection and transmission channels)", p, o);
  m["gamma_edge"] = ge;
  em.meta("fig3c", m);
}

void fig3d(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  const double ge = edge_decay_rate(p);
  SystemParams q = p;
  q.Gamma_f = -0.999 * ge;  // time-reversed critical coupling

  auto lineshape = [&](const std::vector<double>& dg) {
    std::vector<std::string> rows;
    for (double d : dg) {
      ScatterResult s = scatter_markovian(q, d, Direction::Left);
      rows.push_back(csv::row({csv::fmt(d), csv::fmt(s.T), csv::fmt(s.R),
                               csv::fmt(safe_log(s.T)), csv::fmt(safe_log(s.R))}));
    }
    return rows;
  };
  em.csv("fig3d.csv", "delta,T,R,lnT,lnR", lineshape(linspace(-3e-4, 3e-4, 601)));
  em.csv("fig3d_inset.csv", "delta,T,R,lnT,lnR", lineshape(linspace(-6.0, 6.0, 601)));

  json m = meta_base("fig3d", "ultranarrow resonant amplification near the gain threshold, "
                              "with the wide-detuning bulk response", p, o);
  m["gamma_edge"] = ge;
  m["Gamma_f"] = q.Gamma_f;
  em.meta("fig3d", m);
}

void fig4a(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  const std::vector<double> phig = linspace(0.15 * kPi, 0.32 * kPi, 49);
  const std::vector<double> gfg = logspace(5e-4 * p.Gamma, 5e-2 * p.Gamma, 49);

  std::vector<std::string> rows;
  for (double phi : phig) {
    SystemParams q = p;
    q.phi = phi;
    for (double g : gfg) {
      double v = kNaN;
      std::string note;
      try {
        v = delta_chi(q, g, Direction::Left);
      } catch (const Error& e) {
        note = e.code();
      }
      rows.push_back(csv::row({csv::fmt(phi), csv::fmt(g), csv::fmt(v), note}));
    }
  }
  em.csv("fig4a.csv", "phi,gamma_f,dchi,note", rows);

  std::vector<std::string> crows;
  for (double phi : phig) {
    SystemParams q = p;
    q.phi = phi;
    double ge = kNaN, gr0 = kNaN;
    std::string note;
    try {
      ge = edge_decay_rate(q);
      gr0 = find_gamma_r0(q, Direction::Left).gamma_f;
    } catch (const Error& e) {
      note = e.code();
    }
    crows.push_back(csv::row({csv::fmt(phi), csv::fmt(ge), csv::fmt(gr0), note}));
  }
  em.csv("fig4a_curves.csv", "phi,gamma_edge,gamma_r0,note", crows);

  em.meta("fig4a", meta_base("fig4a", "time-reversal asymmetry of resonant reflection over "
                                      "(phi, Gamma_f), with the critical-coupling and "
                                      "reflection-zero curves", p, o));
}

void fig4b(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  SystemParams q = p;
  q.phi = PiPhase::rational(241, 1000).value();  // time-reversed reflection point
  const double ge = edge_decay_rate(q);
  std::vector<double> grid = filter_guard(
      signed_logspace(-1.5 * ge, 1.5 * ge, 241, 1e-4 * ge), ge, o.allow_near_singular);

  std::vector<std::string> rows;
  for (double g : grid) {
    SystemParams qq = q;
    qq.Gamma_f = g;
    double TL = kNaN, RL = kNaN, TR = kNaN, RR = kNaN;
    std::string note;
    try {
      ScatterResult l = scatter_markovian(qq, 0.0, Direction::Left);
      ScatterResult r = scatter_markovian(qq, 0.0, Direction::Right);
      TL = l.T;
      RL = l.R;
      TR = r.T;
      RR = r.R;
    } catch (const Error& e) {
      note = e.code();
    }
    rows.push_back(csv::row({csv::fmt(g), csv::fmt(TL), csv::fmt(RL), csv::fmt(TR),
                             csv::fmt(RR), note}));
  }
  em.csv("fig4b.csv", "gamma_f,T_left,R_left,T_right,R_right,note", rows);

  json m = meta_base("fig4b", "nonreciprocal reflection with reciprocal transmission at the "
                              "time-reversed-reflection dimerization", q, o);
  m["params"]["phi"] = "0.241pi";
  m["params"]["phi_radians"] = q.phi;
  m["gamma_edge"] = ge;
  em.meta("fig4b", m);
}

void fig4c(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  const double ge = edge_decay_rate(p);
  std::vector<double> grid = filter_guard(linspace(-1.3 * ge, -0.7 * ge, 601), ge,
                                          o.allow_near_singular);
  AmpScan scan = amplification_scan(p, grid, Direction::Right, o.allow_near_singular);

  std::vector<std::string> rows;
  for (const auto& r : scan.rows)
    rows.push_back(csv::row({csv::fmt(r.gamma_f), csv::fmt(r.T), csv::fmt(r.R),
                             csv::fmt(safe_log(r.T)), csv::fmt(r.lnR), csv::fmt(r.cond),
                             r.note}));
  em.csv("fig4c.csv", "gamma_f,T,R,lnT,lnR,cond,note", rows);

  json m = meta_base("fig4c", "right-incidence gain scan: amplification-damping transition "
                              "of reflection", p, o);
  m["gamma_edge"] = ge;
  m["transition_found"] = scan.transition_found;
  if (scan.transition_found) m["transition_gamma_f"] = scan.transition_gamma_f;
  em.meta("fig4c", m);
}

void fig4d(const SystemParams& p, const CommonOpts& o, Emitter& em) {
  const double ge = edge_decay_rate(p);
  std::vector<double> grid = filter_guard(linspace(-1.5 * ge, 0.5 * ge, 401), ge,
                                          o.allow_near_singular);

  std::vector<std::string> rows;
  for (double g : grid) {
    SystemParams q = p;
    q.Gamma_f = g;
    double ie = kNaN, ib = kNaN;
    std::string note;
    try {
      ChannelDecomposition ch = scatter_channels(q, 0.0, Direction::Right);
      ie = ch.xi_edge_r.imag();
      ib = ch.xi_bulk_r.imag();
    } catch (const Error& e) {
      note = e.code();
    }
    rows.push_back(csv::row({csv::fmt(g), csv::fmt(ie), csv::fmt(ib), note}));
  }
  em.csv("fig4d.csv", "gamma_f,Im_xi_edge_r,Im_xi_bulk_r,note", rows);

  json m = meta_base("fig4d", "right-incidence reflection channels across the gain "
                              "threshold (edge-channel sign flip)", p, o);
  m["gamma_edge"] = ge;
  em.meta("fig4d", m);
}

}  // namespace

const std::vector<std::string>& figure_keys() {
  static const std::vector<std::string> keys{"fig1b", "fig1d", "fig2c", "fig2d",
                                             "fig3a", "fig3b", "fig3c", "fig3d",
                                             "fig4a", "fig4b", "fig4c", "fig4d"};
  return keys;
}

std::vector<std::string> generate_figure(const std::string& key, const CommonOpts& opts,
                                         const fs::path& dir) {
  SystemParams p = opts.params();
  p.validate();
  Emitter em{dir, {}};
  if (key == "fig1b")
    fig1b(p, opts, em);
  else if (key == "fig1d")
    fig1d(p, opts, em);
  else if (key == "fig2c")
    fig2c(p, opts, em);
  else if (key == "fig2d")
    fig2d(p, opts, em);
  else if (key == "fig3a")
    fig3a(p, opts, em);
  else if (key == "fig3b")
    fig3b(p, opts, em);
  else if (key == "fig3c")
    fig3c(p, opts, em);
  else if (key == "fig3d")
    fig3d(p, opts, em);
  else if (key == "fig4a")
    fig4a(p, opts, em);
  else if (key == "fig4b")
    fig4b(p, opts, em);
  else if (key == "fig4c")
    fig4c(p, opts, em);
  else if (key == "fig4d")
    fig4d(p, opts, em);
  else
    throw ConfigError({"unknown figure key '" + key + "'"});
  return em.files;
}

}  // namespace taasim::cli

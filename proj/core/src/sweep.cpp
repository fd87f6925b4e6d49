// sweep.cpp — sweep validation, grid expansion, parallel cell evaluation.
#include "taasim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <set>

#include "taasim/analysis.hpp"
#include "taasim/csv.hpp"
#include "taasim/errors.hpp"
#include "taasim/grid.hpp"
#include "taasim/parallel.hpp"
#include "taasim/spectral.hpp"

namespace taasim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string>& axis_params() {
  static const std::set<std::string> s{"Gamma_f", "phi", "J0", "delta"};
  return s;
}

const std::set<std::string>& observable_names() {
  static const std::set<std::string> s{"T",           "R",           "eta",
                                       "chi",         "delta_chi",   "Im_xi_edge_r",
                                       "Im_xi_bulk_r", "Im_xi_edge_t", "Im_xi_bulk_t",
                                       "Gamma_edge"};
  return s;
}

void check_axis(const SweepAxis& a, const char* which, std::vector<std::string>& bad) {
  if (!axis_params().count(a.param))
    bad.push_back(std::string(which) + ": unknown parameter '" + a.param +
                  "' (expected Gamma_f, phi, J0, or delta)");
  if (a.spacing != "linear" && a.spacing != "log" && a.spacing != "signed-log")
    bad.push_back(std::string(which) + ": unknown spacing '" + a.spacing +
                  "' (expected linear, log, or signed-log)");
  if (a.count < 2)
    bad.push_back(std::string(which) + ": count must be >= 2, got " + std::to_string(a.count));
}

void apply_axis(SystemParams& q, double& delta, const std::string& param, double v) {
  if (param == "Gamma_f")
    q.Gamma_f = v;
  else if (param == "phi")
    q.phi = v;
  else if (param == "J0")
    q.J0 = v;
  else
    delta = v;  // "delta"
}

// Gamma_edge memoized per (J0, phi); theta and N are fixed within one sweep.
class EdgeCache {
public:
  double get(const SystemParams& q) {
    const std::pair<double, double> key{q.J0, q.phi};
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    double v;
    try {
      v = edge_decay_rate(q);
    } catch (const Error&) {
      v = kNaN;
    }
    std::lock_guard<std::mutex> lock(mu_);
    return map_.emplace(key, v).first->second;
  }

private:
  std::mutex mu_;
  std::map<std::pair<double, double>, double> map_;
};

}  // namespace

std::vector<double> build_axis_grid(const SweepAxis& axis) {
  if (axis.spacing == "log") return logspace(axis.lo, axis.hi, axis.count);
  if (axis.spacing == "signed-log") return signed_logspace(axis.lo, axis.hi, axis.count);
  return linspace(axis.lo, axis.hi, axis.count);
}

SweepResult run_sweep(const SweepSpec& spec) {
  std::vector<std::string> bad;
  try {
    spec.base.validate();
  } catch (const ConfigError& e) {
    bad = e.violations();
  }
  check_axis(spec.axis1, "axis1", bad);
  if (spec.axis2) {
    check_axis(*spec.axis2, "axis2", bad);
    if (spec.axis2->param == spec.axis1.param)
      bad.push_back("axis2 repeats axis1 parameter '" + spec.axis1.param + "'");
  }
  for (const auto& o : spec.observables)
    if (!observable_names().count(o)) bad.push_back("unknown observable '" + o + "'");
  if (!bad.empty()) throw ConfigError(bad);

  const std::vector<double> g1 = build_axis_grid(spec.axis1);
  const std::vector<double> g2 = spec.axis2 ? build_axis_grid(*spec.axis2)
                                            : std::vector<double>{0.0};
  const size_t n1 = g1.size(), n2 = g2.size();

  SweepResult out;
  out.columns.push_back(spec.axis1.param);
  if (spec.axis2) out.columns.push_back(spec.axis2->param);
  for (const auto& o : spec.observables) out.columns.push_back(o);
  out.columns.push_back("note");
  if (spec.observables.empty()) return out;  // header-only table
  out.rows.assign(n1 * n2, {});

  EdgeCache cache;
  const bool wants_scatter = std::any_of(
      spec.observables.begin(), spec.observables.end(), [](const std::string& o) {
        return o == "T" || o == "R" || o == "eta" || o == "chi" || o == "delta_chi";
      });

  parallel_for(n1 * n2, spec.workers, [&](size_t cell) {
    const size_t i1 = cell / n2, i2 = cell % n2;
    SystemParams q = spec.base;
    double delta = 0.0;
    apply_axis(q, delta, spec.axis1.param, g1[i1]);
    if (spec.axis2) apply_axis(q, delta, spec.axis2->param, g2[i2]);

    std::vector<std::string> cells;
    cells.push_back(csv::fmt(g1[i1]));
    if (spec.axis2) cells.push_back(csv::fmt(g2[i2]));
    std::vector<std::string> notes;

    // Lasing-threshold guard: skip scatter-backed observables for cells whose
    // Gamma_f (or its gain-side mirror, for delta_chi) is within 1e-3 * Gamma_edge
    // of -Gamma_edge.
    bool excl_direct = false, excl_pair = false;
    if (!spec.allow_near_singular && wants_scatter) {
      const double ge = cache.get(q);
      if (std::isfinite(ge) && ge > 0.0) {
        const double guard = 1e-3 * ge;
        excl_direct = q.Gamma_f < 0.0 && std::abs(q.Gamma_f + ge) < guard;
        excl_pair = std::abs(std::abs(q.Gamma_f) - ge) < guard;
      }
    }
    const char* excl_note =
        "within 1e-3*Gamma_edge of the lasing threshold (enable allow-near-singular)";

    std::optional<ScatterResult> sc;
    std::string sc_err;
    auto scatter_cell = [&]() -> const ScatterResult* {
      if (!sc && sc_err.empty()) {
        try {
          sc = scatter_markovian(q, delta, spec.direction);
        } catch (const Error& e) {
          sc_err = e.code();
        }
      }
      return sc ? &*sc : nullptr;
    };
    std::optional<ChannelDecomposition> ch;
    std::string ch_err;
    auto channels_cell = [&]() -> const ChannelDecomposition* {
      if (!ch && ch_err.empty()) {
        try {
          ch = scatter_channels(q, delta, spec.direction);
        } catch (const Error& e) {
          ch_err = e.code();
        }
      }
      return ch ? &*ch : nullptr;
    };

    for (const auto& o : spec.observables) {
      double v = kNaN;
      if (o == "T" || o == "R" || o == "eta" || o == "chi") {
        if (excl_direct) {
          notes.push_back(o + ": " + excl_note);
        } else if (o == "chi") {
          try {
            v = chi(q, q.Gamma_f, spec.direction);
          } catch (const Error& e) {
            notes.push_back(o + ": " + e.code());
          }
        } else if (const ScatterResult* s = scatter_cell()) {
          v = (o == "T") ? s->T : (o == "R") ? s->R : s->eta;
        } else {
          notes.push_back(o + ": " + sc_err);
        }
      } else if (o == "delta_chi") {
        if (excl_pair) {
          notes.push_back(o + ": " + excl_note);
        } else {
          try {
            v = delta_chi(q, q.Gamma_f, spec.direction);
          } catch (const Error& e) {
            notes.push_back(o + ": " + e.code());
          }
        }
      } else if (o == "Gamma_edge") {
        v = cache.get(q);
        if (!std::isfinite(v)) notes.push_back("Gamma_edge: mode analysis failed");
      } else {  // channel observables
        if (const ChannelDecomposition* c = channels_cell()) {
          if (o == "Im_xi_edge_r")
            v = c->xi_edge_r.imag();
          else if (o == "Im_xi_bulk_r")
            v = c->xi_bulk_r.imag();
          else if (o == "Im_xi_edge_t")
            v = c->xi_edge_t.imag();
          else
            v = c->xi_bulk_t.imag();
        } else {
          notes.push_back(o + ": " + ch_err);
        }
      }
      cells.push_back(csv::fmt(v));
    }

    std::string note;
    for (size_t k = 0; k < notes.size(); ++k) {
      if (k) note += "; ";
      note += notes[k];
    }
    cells.push_back(note);
    out.rows[cell] = std::move(cells);
  });

  return out;
}

}  // namespace taasim

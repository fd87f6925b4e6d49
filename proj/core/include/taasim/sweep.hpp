// sweep.hpp — generic 1-D/2-D parameter sweeps with per-cell error annotations.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "taasim/scattering.hpp"

namespace taasim {

struct SweepAxis {
  std::string param;               // Gamma_f | phi | J0 | delta
  double lo = 0.0, hi = 0.0;
  int count = 0;
  std::string spacing = "linear";  // linear | log | signed-log
};

struct SweepSpec {
  SystemParams base;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;  // inner (fastest-varying) axis
  std::vector<std::string> observables;
  Direction direction = Direction::Left;
  unsigned workers = 0;            // 0 = hardware concurrency
  bool allow_near_singular = false;
};

struct SweepResult {
  std::vector<std::string> columns;               // axis names, observables, "note"
  std::vector<std::vector<std::string>> rows;     // pre-formatted cells, fixed order
};

// Grid for one axis according to its spacing tag.
std::vector<double> build_axis_grid(const SweepAxis& axis);

// Observables: T, R, eta (at the cell's delta), chi, delta_chi (always at delta = 0),
// Im_xi_edge_r, Im_xi_bulk_r, Im_xi_edge_t, Im_xi_bulk_t, Gamma_edge. Per-cell failures
// never abort the sweep: the cell reads nan and the note column names the error. Cells
// whose Gamma_f sits within 1e-3 * Gamma_edge of the lasing threshold are skipped
// (annotated) unless allow_near_singular is set. Row order and formatting are
// deterministic and independent of the worker count.
SweepResult run_sweep(const SweepSpec& spec);

}  // namespace taasim

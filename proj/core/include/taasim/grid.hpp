// grid.hpp — 1-D parameter grids: linear, logarithmic, sign-split logarithmic.
#pragma once

#include <vector>

namespace taasim {

// count >= 1; count == 1 yields {lo}. Endpoints exact.
std::vector<double> linspace(double lo, double hi, int count);

// Geometric spacing; requires 0 < lo <= hi (or hi <= lo < 0 for a descending grid).
std::vector<double> logspace(double lo, double hi, int count);

// Log-spaced magnitudes on both sides of zero for ranges straddling it: requires
// lo < 0 < hi. `floor_mag` sets the smallest magnitude (default: 1e-6 * max(|lo|, hi)).
// Returns ascending values; zero itself is excluded.
std::vector<double> signed_logspace(double lo, double hi, int count, double floor_mag = 0.0);

}  // namespace taasim

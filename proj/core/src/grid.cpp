// grid.cpp — parameter grid construction.
#include "taasim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "taasim/errors.hpp"

namespace taasim {

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw ConfigError({"grid count must be >= 1, got " + std::to_string(count)});
  if (count == 1) return {lo};
  std::vector<double> g(count);
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = lo + step * i;
  g.back() = hi;
  return g;
}

std::vector<double> logspace(double lo, double hi, int count) {
  std::vector<std::string> bad;
  if (count < 1) bad.push_back("grid count must be >= 1, got " + std::to_string(count));
  const bool pos = lo > 0.0 && hi > 0.0;
  const bool neg = lo < 0.0 && hi < 0.0;
  if (!pos && !neg)
    bad.push_back("log spacing requires endpoints of one sign excluding zero, got [" +
                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
  if (!bad.empty()) throw ConfigError(bad);
  if (count == 1) return {lo};
  const double sign = pos ? 1.0 : -1.0;
  std::vector<double> g = linspace(std::log(std::abs(lo)), std::log(std::abs(hi)), count);
  for (double& x : g) x = sign * std::exp(x);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> signed_logspace(double lo, double hi, int count, double floor_mag) {
  std::vector<std::string> bad;
  if (!(lo < 0.0 && hi > 0.0))
    bad.push_back("signed-log spacing requires lo < 0 < hi, got [" + std::to_string(lo) + ", " +
                  std::to_string(hi) + "]");
  if (count < 4) bad.push_back("signed-log spacing needs count >= 4, got " + std::to_string(count));
  if (!bad.empty()) throw ConfigError(bad);
  if (floor_mag <= 0.0) floor_mag = 1e-6 * std::max(std::abs(lo), hi);

  const int n_neg = count / 2;
  const int n_pos = count - n_neg;
  std::vector<double> neg = logspace(std::abs(lo), floor_mag, n_neg);  // descending magnitudes
  std::vector<double> pos = logspace(floor_mag, hi, n_pos);
  std::vector<double> g;
  g.reserve(count);
  for (double m : neg) g.push_back(-m);
  for (double m : pos) g.push_back(m);
  return g;
}

}  // namespace taasim

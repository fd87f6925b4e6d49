// support.hpp — deterministic random parameter generators and the five invariant
// suites shared by the property tests and the acceptance gate.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "taasim/scattering.hpp"
#include "taasim/spectral.hpp"

namespace taasim::testing {

// Hand-rolled generator with a fixed seed: every run draws the same parameters.
class ParamGen {
public:
  explicit ParamGen(std::uint64_t seed = 20260814ull) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int odd_count(int lo, int hi) {  // odd N in [lo, hi]
    int n = std::uniform_int_distribution<int>(lo / 2, (hi - 1) / 2)(gen_);
    return 2 * n + 1;
  }

  // Random chain at theta = 3pi/2, away from the phi = pi/2 gap closure and the
  // lasing threshold (redraws Gamma_f inside the guard band).
  SystemParams draw(bool with_gain = true) {
    SystemParams p;
    p.N = odd_count(1, 11);
    p.J0 = uniform(0.5, 3.0);
    p.phi = uniform(0.08, 0.92) * kPi;
    while (std::abs(p.phi - 0.5 * kPi) < 0.04 * kPi) p.phi = uniform(0.08, 0.92) * kPi;
    for (;;) {
      p.Gamma_f = with_gain ? uniform(-0.5, 1.0) : uniform(0.0, 1.0);
      if (p.Gamma_f >= 0.0) break;
      ModeSet ms = eigendecompose(p);  // keep clear of every mode's threshold
      double closest = 1e300;
      for (int j = 0; j < ms.size(); ++j)
        closest = std::min(closest, std::abs(p.Gamma_f + ms.GammaJ(j)));
      if (closest > 2e-3) break;
    }
    return p;
  }

  double draw_delta() { return uniform(-5.0, 5.0); }

private:
  std::mt19937_64 gen_;
};

// Each suite returns the worst deviation seen over `draws` random cases and reports
// the first offending configuration through `detail`.

inline std::string describe(const SystemParams& p, double delta) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "N=%d J0=%.6g phi=%.6gpi Gamma_f=%.6g delta=%.6g", p.N,
                p.J0, p.phi / kPi, p.Gamma_f, delta);
  return buf;
}

struct SuiteResult {
  double worst = 0.0;
  std::string detail;  // configuration of the worst case

  void update(double dev, const SystemParams& p, double delta = 0.0) {
    if (dev > worst) {
      worst = dev;
      detail = describe(p, delta);
    }
  }
};

// |T + R - 1| at Gamma_f = 0 (lossless unitarity).
inline SuiteResult suite_unitarity(ParamGen& gen, int draws) {
  SuiteResult res;
  for (int k = 0; k < draws; ++k) {
    SystemParams p = gen.draw(false);
    p.Gamma_f = 0.0;
    const double delta = gen.draw_delta();
    ScatterResult s = scatter_markovian(p, delta, Direction::Left);
    res.update(std::abs(s.T + s.R - 1.0), p, delta);
  }
  return res;
}

// |t(left) - t(right)| (transmission reciprocity).
inline SuiteResult suite_reciprocity(ParamGen& gen, int draws) {
  SuiteResult res;
  for (int k = 0; k < draws; ++k) {
    SystemParams p = gen.draw();
    const double delta = gen.draw_delta();
    ScatterResult l = scatter_markovian(p, delta, Direction::Left);
    ScatterResult r = scatter_markovian(p, delta, Direction::Right);
    res.update(std::abs(l.t - r.t), p, delta);
  }
  return res;
}

// phi -> pi - phi mirrors the chain: t invariant, r picks up e^{-2 i theta (N+1)}.
inline SuiteResult suite_mirror_law(ParamGen& gen, int draws) {
  SuiteResult res;
  for (int k = 0; k < draws; ++k) {
    SystemParams p = gen.draw();
    const double delta = gen.draw_delta();
    SystemParams m = p;
    m.phi = kPi - p.phi;
    ScatterResult a = scatter_markovian(m, delta, Direction::Left);
    ScatterResult b = scatter_markovian(p, delta, Direction::Right);
    const Complex factor = p.theta.unit_power(-2 * (p.N + 1));
    res.update(std::max(std::abs(a.t - b.t), std::abs(a.r - factor * b.r)), p, delta);
  }
  return res;
}

// Every Delta_j has a partner at -Delta_j with the same Gamma_j.
inline SuiteResult suite_spectrum_pairing(ParamGen& gen, int draws) {
  SuiteResult res;
  for (int k = 0; k < draws; ++k) {
    SystemParams p = gen.draw();
    ModeSet ms = eigendecompose(p);
    double worst = 0.0;
    for (int j = 0; j < ms.size(); ++j) {
      double best = 1e300;
      for (int i = 0; i < ms.size(); ++i)
        best = std::min(best, std::max(std::abs(ms.Delta(i) + ms.Delta(j)),
                                       std::abs(ms.GammaJ(i) - ms.GammaJ(j))));
      worst = std::max(worst, best);
    }
    res.update(worst, p);
  }
  return res;
}

// psi^T psi = I pairwise and sum_j psi_j psi_j^T = I (biorthogonality/completeness).
inline SuiteResult suite_biorthogonality(ParamGen& gen, int draws) {
  SuiteResult res;
  for (int k = 0; k < draws; ++k) {
    SystemParams p = gen.draw();
    ModeSet ms = eigendecompose(p);
    double worst = ms.completeness_residual;
    for (int j = 0; j < ms.size(); ++j)
      for (int i = 0; i < ms.size(); ++i) {
        const Complex g = ms.psiL.col(i).transpose() * ms.psiR.col(j);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    res.update(worst, p);
  }
  return res;
}

}  // namespace taasim::testing

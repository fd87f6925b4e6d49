// dynamics.cpp — wavepacket integration (Boost.odeint) and diagnostics.
#include "taasim/dynamics.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

#include "taasim/errors.hpp"

namespace taasim {

namespace {

constexpr Complex kI{0.0, 1.0};
using State = std::vector<Complex>;  // [lambda_1..lambda_N, flux_in, flux_out]

struct Rhs {
  const CMatrix& H;
  const CVector& u;          // drive phases e^{i s theta i}
  const CVector& phase;      // e^{+i theta i}, for the output sums
  const SystemParams& p;
  const PulseSpec& pulse;
  double sqrtG;

  void outputs(const State& y, double t, Complex& f, Complex& out_r, Complex& out_l) const {
    f = drive_amplitude(p, pulse, t);
    Complex sum_m{0.0, 0.0}, sum_p{0.0, 0.0};  // sum lambda_i e^{-i theta i}, e^{+i theta i}
    for (int i = 0; i < p.N; ++i) {
      sum_m += y[i] * std::conj(phase(i));
      sum_p += y[i] * phase(i);
    }
    out_r = (pulse.direction == Direction::Left ? f : Complex{0.0, 0.0}) - kI * sqrtG * sum_m;
    out_l = (pulse.direction == Direction::Right ? f : Complex{0.0, 0.0}) - kI * sqrtG * sum_p;
  }

  void operator()(const State& y, State& dydt, double t) const {
    const int N = p.N;
    Eigen::Map<const CVector> lam(y.data(), N);
    Eigen::Map<CVector> dlam(dydt.data(), N);
    Complex f, out_r, out_l;
    outputs(y, t, f, out_r, out_l);
    dlam = -kI * (H * lam) - (kI * sqrtG * f) * u;
    dydt[N] = std::norm(f);
    dydt[N + 1] = std::norm(out_r) + std::norm(out_l);
  }
};

}  // namespace

Complex drive_amplitude(const SystemParams& p, const PulseSpec& pulse, double t) {
  const double arg = (t - pulse.t_center) / pulse.sigma_t;
  return p.epsilon * std::exp(-0.5 * arg * arg) *
         std::polar(1.0, -pulse.delta_c * t);
}

Trajectory evolve(const SystemParams& p, const PulseSpec& pulse, double t_max,
                  double dt_sample) {
  p.validate();
  std::vector<std::string> bad;
  if (!(pulse.sigma_t > 0.0)) bad.push_back("pulse sigma_t must be > 0");
  if (!std::isfinite(pulse.t_center)) bad.push_back("pulse t_center must be finite");
  if (!std::isfinite(pulse.delta_c)) bad.push_back("pulse delta_c must be finite");
  if (!(t_max > 0.0)) bad.push_back("t_max must be > 0");
  if (!(dt_sample > 0.0) || dt_sample > t_max)
    bad.push_back("dt_sample must be in (0, t_max]");
  if (!bad.empty()) throw ConfigError(bad);

  const int N = p.N;
  const CMatrix H = build_effective_hamiltonian(p);
  CVector u(N), phase(N);
  const int s = direction_sign(pulse.direction);
  for (int i = 1; i <= N; ++i) {
    u(i - 1) = site_phase(p, i, s);
    phase(i - 1) = p.theta.unit_power(i);
  }

  Trajectory traj;
  traj.params = p;
  traj.pulse = pulse;

  if (p.Gamma_f < 0.0) {
    try {
      ModeSet ms = eigendecompose(p);
      double growth = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < ms.size(); ++j) growth = std::max(growth, ms.E(j).imag());
      if (growth > 0.0) {
        char buf[240];
        std::snprintf(buf, sizeof(buf),
                      "gain exceeds the slowest decay channel: fastest mode grows as "
                      "exp(+%.6g t), so |lambda|^2 gains a factor exp(%.6g) by t_max; "
                      "fluxes are stimulated output, not a normalized photon budget",
                      growth, 2.0 * growth * t_max);
        traj.warnings.emplace_back(buf);
      }
    } catch (const Error&) {
      traj.warnings.push_back("gain regime requested but mode analysis failed; growth "
                              "rate not certified");
    }
  }

  const int n_samples = static_cast<int>(std::floor(t_max / dt_sample + 0.5)) + 1;
  std::vector<double> times(n_samples);
  for (int k = 0; k < n_samples; ++k) times[k] = std::min(k * dt_sample, t_max);

  Rhs rhs{H, u, phase, p, pulse, std::sqrt(p.Gamma)};
  State y(static_cast<size_t>(N) + 2, Complex{0.0, 0.0});

  namespace ode = boost::numeric::odeint;
  // Pure relative control: step selection is then invariant under scaling the drive
  // amplitude, which makes pulse linearity exact (bit-for-bit for power-of-two factors).
  auto stepper = ode::make_dense_output(0.0, 1.0e-10, ode::runge_kutta_dopri5<State>());
  ode::integrate_times(stepper, rhs, y, times.begin(), times.end(), 1e-3,
                       [&](const State& yk, double tk) {
                         traj.times.push_back(tk);
                         traj.lambda.emplace_back(Eigen::Map<const CVector>(yk.data(), N));
                         Complex f, o_r, o_l;
                         rhs.outputs(yk, tk, f, o_r, o_l);
                         traj.drive.push_back(f);
                         traj.out_r.push_back(o_r);
                         traj.out_l.push_back(o_l);
                         traj.flux_in = yk[N].real();
                         traj.flux_out = yk[N + 1].real();
                       });
  return traj;
}

std::vector<std::vector<double>> reconstruct_field(const Trajectory& traj,
                                                   const std::vector<double>& x_grid) {
  const SystemParams& p = traj.params;
  const double th = p.theta.value();
  const double delay_per_d = th / p.omega0;  // d / v_g in units of 1/Gamma
  const double sqrtG = std::sqrt(p.Gamma);
  const bool from_left = traj.pulse.direction == Direction::Left;

  std::vector<std::vector<double>> intensity(traj.times.size(),
                                             std::vector<double>(x_grid.size(), 0.0));
  for (size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    const CVector& lam = traj.lambda[k];
    for (size_t m = 0; m < x_grid.size(); ++m) {
      const double x = x_grid[m];
      Complex phi_r = from_left
                          ? drive_amplitude(p, traj.pulse, t - x * delay_per_d)
                          : Complex{0.0, 0.0};
      Complex phi_l = from_left
                          ? Complex{0.0, 0.0}
                          : drive_amplitude(p, traj.pulse, t + x * delay_per_d);
      for (int i = 1; i <= p.N; ++i) {
        if (i <= x) phi_r -= kI * sqrtG * lam(i - 1) * std::polar(1.0, th * (x - i));
        if (i >= x) phi_l -= kI * sqrtG * lam(i - 1) * std::polar(1.0, th * (i - x));
      }
      intensity[k][m] = std::norm(phi_r) + std::norm(phi_l);
    }
  }
  return intensity;
}

double fit_decay_rate(const Trajectory& traj, double t_lo, double t_hi) {
  std::vector<double> ts, ys;
  for (size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    if (t < t_lo || t > t_hi) continue;
    const double n = traj.lambda[k].squaredNorm();
    if (n <= 0.0) continue;  // underflowed tail
    ts.push_back(t);
    ys.push_back(std::log(n));
  }
  if (ts.size() < 8)
    throw NumericalError("decay-fit-window",
                         "decay-rate fit needs >= 8 samples with nonzero norm in [" +
                             std::to_string(t_lo) + ", " + std::to_string(t_hi) +
                             "]; widen the window or sample more densely");
  for (size_t k = 0; k + 1 < ys.size(); ++k) {
    if (ys[k + 1] > ys[k] + 1e-8) {
      throw NumericalError(
          "decay-fit-window",
          "excitation norm is not monotonically decreasing in the fit window (rise at t = " +
              std::to_string(ts[k + 1]) +
              "); the window includes the drive transient or mode beating -- widen or "
              "shift it to later times");
    }
  }
  // least-squares slope of ln(norm) vs t
  const double n = static_cast<double>(ts.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (size_t k = 0; k < ts.size(); ++k) {
    st += ts[k];
    sy += ys[k];
    stt += ts[k] * ts[k];
    sty += ts[k] * ys[k];
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  return -slope;
}

}  // namespace taasim

// dynamics.hpp — pulsed single-photon wavepacket dynamics and field reconstruction.
#pragma once

#include <string>
#include <vector>

#include "taasim/scattering.hpp"

namespace taasim {

// Gaussian input pulse f(t) = eps * exp(-(t-t_center)^2 / (2 sigma_t^2)) * e^{-i delta_c t}.
// Times in 1/Gamma; defaults give a pulse spectrally well inside the edge resonance.
struct PulseSpec {
  double t_center = 12.0;  // 6 * sigma_t: negligible turn-on transient
  double sigma_t = 2.0;
  double delta_c = 0.0;    // carrier detuning from the rotating frame
  Direction direction = Direction::Left;
};

Complex drive_amplitude(const SystemParams& p, const PulseSpec& pulse, double t);

struct Trajectory {
  std::vector<double> times;
  std::vector<CVector> lambda;        // atomic amplitudes per sample
  std::vector<Complex> out_r, out_l;  // output field samples (input-output relation)
  std::vector<Complex> drive;         // f(t) samples
  double flux_in = 0.0;               // integral |f|^2 dt (co-integrated, not quadrature)
  double flux_out = 0.0;              // integral (|out_r|^2 + |out_l|^2) dt
  SystemParams params;
  PulseSpec pulse;
  std::vector<std::string> warnings;
  // optional reconstructed intensity |phi(x,t)|^2 (filled by attach_field)
  std::vector<double> x_grid;
  std::vector<std::vector<double>> field;  // [time_index][x_index]
};

// Integrates dlambda/dt = -i H lambda - i sqrt(Gamma) f(t) u (adaptive Dormand-Prince,
// rel 1e-10), sampling every dt_sample up to t_max. Flux integrals ride along as extra
// state components. Gamma_f < -Gamma_edge produces an unbounded-growth warning with the
// fastest mode's rate.
Trajectory evolve(const SystemParams& p, const PulseSpec& pulse, double t_max,
                  double dt_sample);

// |phi_r|^2 + |phi_l|^2 on x_grid (units of d) for every sample: scattered waves carry
// the carrier phase e^{i theta |x - x_i|} from each atom (Markovian, instantaneous in the
// envelope); the incident envelope is group-delayed by theta/omega0 per lattice spacing.
// Returns intensity[time_index][x_index].
std::vector<std::vector<double>> reconstruct_field(const Trajectory& traj,
                                                   const std::vector<double>& x_grid);

// Stores reconstruct_field(traj, x_grid) into traj.field / traj.x_grid.
inline void attach_field(Trajectory& traj, const std::vector<double>& x_grid) {
  traj.field = reconstruct_field(traj, x_grid);
  traj.x_grid = x_grid;
}

// -d ln(sum_i |lambda_i|^2)/dt via least squares over samples in [t_lo, t_hi]. Throws
// NumericalError("decay-fit-window") when the window is too short or the norm is not
// monotone there (drive transient or beating), with a widen-the-window hint.
double fit_decay_rate(const Trajectory& traj, double t_lo, double t_hi);

}  // namespace taasim

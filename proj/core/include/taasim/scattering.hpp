// scattering.hpp — steady-state transport: Markovian input-output solver, exact
// Bethe-ansatz solver, piecewise field reconstruction, eigenmode channel decomposition.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "taasim/model.hpp"
#include "taasim/spectral.hpp"

namespace taasim {

enum class Direction { Left, Right };  // incidence side: s = +1 / -1
inline int direction_sign(Direction d) { return d == Direction::Left ? +1 : -1; }
inline const char* direction_name(Direction d) { return d == Direction::Left ? "left" : "right"; }

struct ScatterResult {
  double delta = 0.0;
  Complex t{0.0, 0.0}, r{0.0, 0.0};
  double T = 0.0, R = 0.0, eta = 0.0;  // |t|^2, |r|^2, 1-T-R
  CVector Lambda;                      // atomic amplitudes per unit drive
  Direction direction = Direction::Left;
  std::string solver;                  // "markovian" | "exact"
  double cond = 0.0;                   // LU condition estimate (1/rcond)
};

// Plane-wave amplitudes per inter-atom segment. Segment i spans (x_i, x_{i+1}) in
// units of d (atoms at x_i = i, x_0 = -inf, x_{N+1} = +inf). In segment i the field
// is t_seg(i) e^{ikx} + r_seg(i) e^{-ikx}, with r_seg(i) holding the r_{i+1} of the
// difference equations. Left incidence: t_seg(0) = 1 (unit drive), r_seg(N) = 0.
struct PiecewiseField {
  CVector t_seg, r_seg;  // each N+1 entries
  double k_d = 0.0;      // wavenumber * d
  int N = 0;
  Direction direction = Direction::Left;
};

// Markovian solve (static k0 phases): (delta*I - H) Lambda = V, V_i = e^{i s theta i};
// t = 1 - i Gamma sum_i e^{-i s theta i} Lambda_i, r = -i Gamma sum_i e^{+i s theta i} Lambda_i.
// Throws SingularityError (with the offending eps_j) when cond > 1e12.
ScatterResult scatter_markovian(const SystemParams& p, double delta, Direction dir = Direction::Left);

// Exact solver: 3N x 3N linear system in {scaled Lambda_i, t_i, r_i} with dispersive
// k d = theta (1 + delta/omega0); the field at an atom is the mean of its two adjacent
// segment values. Lambda is rescaled to the Markovian per-unit-drive convention.
std::pair<ScatterResult, PiecewiseField> scatter_exact(const SystemParams& p, double delta,
                                                       Direction dir = Direction::Left);

// |phi(x)|^2 on x_grid (units of d), normalized to the incident intensity; at an atom
// position the right-hand segment amplitudes are used.
std::vector<double> field_profile(const PiecewiseField& pw, const SystemParams& p,
                                  const std::vector<double>& x_grid);

struct ChannelDecomposition {
  CVector xi_r, xi_t;  // per-mode xi_j^{r,t} = Xi_j / eps_j, Xitilde_j / eps_j
  CVector eps;         // eps_j = delta - Delta_j + i(Gamma_j + Gamma_f)
  CVector Xi, XiT;     // Xi_j = Gamma (V^T psi_j)(psi_j^T V); XiT with V^dagger in front
  int edge_index = -1;
  Complex xi_edge_r, xi_edge_t, xi_bulk_r, xi_bulk_t;  // bulk = sum over bulk modes
  Complex r_sum, t_sum;  // resummed: r = -i sum xi_r, t = 1 - i sum xi_t
};

// Multichannel decomposition through the biorthogonal modes. Refuses exceptional points.
ChannelDecomposition scatter_channels(const SystemParams& p, double delta,
                                      Direction dir = Direction::Left);

}  // namespace taasim

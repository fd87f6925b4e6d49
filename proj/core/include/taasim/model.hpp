// model.hpp — SSH couplings and the effective non-Hermitian Hamiltonian (rotating frame).
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "taasim/params.hpp"

namespace taasim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Atom i sits at x_i = i*d (i = 1..N); scattering phases are referenced to x = 0,
// one lattice spacing left of the first atom. This phase origin reproduces the
// channel-amplitude signs of the reference data (r = +1 at complete reflection).
inline Complex site_phase(const SystemParams& p, int i, int s /* +1 right-mover, -1 left-mover */) {
  return p.theta.unit_power(s * static_cast<std::int64_t>(i));
}

// J_i = J0 * (1 - (-1)^i cos phi), i = 1..N-1. Strong bond first: J_1 = J0(1+cos phi).
std::vector<double> build_couplings(double J0, double phi, int N);

// H[i][j] = J tridiagonal - i*Gamma*e^{i*theta*|i-j|} - i*Gamma_f*delta_ij.
// Diagonal is exactly -i(Gamma+Gamma_f); kernel phases evaluated exactly for
// pi-rational theta. Complex-symmetric by construction.
CMatrix build_effective_hamiltonian(const SystemParams& p);

// Coherent SSH part only (real symmetric tridiagonal); the bare-chain reference.
Eigen::MatrixXd build_bare_hamiltonian(const SystemParams& p);

}  // namespace taasim

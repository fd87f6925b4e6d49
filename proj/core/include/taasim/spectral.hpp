// spectral.hpp — biorthogonal eigendecomposition and edge/bulk classification.
#pragma once

#include <string>
#include <vector>

#include "taasim/model.hpp"

namespace taasim {

struct ModeSet {
  // Modes sorted by (Delta, GammaJ) ascending; columns of psiR/psiL correspond.
  CVector E;                 // eigenvalues E_j = Delta_j - i(Gamma_j + Gamma_f)
  Eigen::VectorXd Delta;     // Re(E_j)
  Eigen::VectorXd GammaJ;    // -Im(E_j) - Gamma_f (waveguide-induced decay)
  CMatrix psiR;              // right eigenvectors, psi^T psi = 1, sign-fixed
  CMatrix psiL;              // left rows as columns; equals psiR (complex-symmetric H)
  double Gamma_f = 0.0;
  double Gamma = 1.0;        // energy unit, for scale-aware warnings

  int edge_index = -1;
  std::vector<int> bulk_indices;
  double boundary_weight_right = 0.0;  // |psi_edge(N)|^2 / sum_i |psi_edge(i)|^2
  double boundary_weight_left = 0.0;   // |psi_edge(1)|^2 / ...
  double gap = 0.0;                    // min over bulk modes of |Delta_j|
  double completeness_residual = 0.0;  // ||sum psiR psiL^T - I||
  std::vector<std::string> warnings;

  int size() const { return static_cast<int>(E.size()); }
};

// Full biorthogonal system for a complex-symmetric H. Gamma_f is subtracted from
// the imaginary parts to report waveguide-induced decay rates. Raises
// ExceptionalPointError when the completeness residual exceeds 1e-6.
ModeSet eigendecompose(const CMatrix& H, double Gamma_f);
ModeSet eigendecompose(const SystemParams& p);

// Fills edge_index/bulk_indices/boundary weights/gap/warnings on an existing set:
// edge mode = argmin |Delta_j|, tie-broken by smallest Gamma_j. Warns when
// |Delta_edge| > 1e-6 (frame misalignment / theta away from 3pi/2) and when the
// bulk gap is <= Gamma (no meaningful bandgap, e.g. phi = pi/2).
void classify_modes(ModeSet& modes);

// build -> eigendecompose -> classify -> Gamma_edge (Gamma_f-independent).
double edge_decay_rate(const SystemParams& p);

}  // namespace taasim

#include "taasim/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "taasim/errors.hpp"

namespace taasim {

namespace {

// psi^T psi = 1 (principal sqrt), then +-1 so the largest-|.| entry has Re > 0
// (Im > 0 on the Re = 0 tie) — the only deterministic freedom left.
void normalize_symmetric(CVector& v) {
  const Complex q = (v.transpose() * v).value();
  v /= std::sqrt(q);
  int imax = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best + 1e-15) { best = a; imax = i; }
  }
  const Complex z = v(imax);
  if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0)) v = -v;
}

}  // namespace

ModeSet eigendecompose(const CMatrix& H, double Gamma_f) {
  const int N = static_cast<int>(H.rows());
  Eigen::ComplexEigenSolver<CMatrix> solver(H, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver", "complex eigensolver failed to converge");

  std::vector<int> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
    return -ev(a).imag() < -ev(b).imag();
  });

  ModeSet m;
  m.Gamma_f = Gamma_f;
  m.E.resize(N);
  m.Delta.resize(N);
  m.GammaJ.resize(N);
  m.psiR.resize(N, N);
  for (int k = 0; k < N; ++k) {
    m.E(k) = ev(order[static_cast<std::size_t>(k)]);
    m.Delta(k) = m.E(k).real();
    m.GammaJ(k) = -m.E(k).imag() - Gamma_f;
    CVector v = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    normalize_symmetric(v);
    m.psiR.col(k) = v;
  }
  m.psiL = m.psiR;  // H = H^T: left rows are unconjugated transposes of right columns

  m.completeness_residual = (m.psiR * m.psiL.transpose() - CMatrix::Identity(N, N)).norm();
  if (!(m.completeness_residual <= 1e-6))
    throw ExceptionalPointError(m.completeness_residual);

  classify_modes(m);
  return m;
}

ModeSet eigendecompose(const SystemParams& p) {
  ModeSet m = eigendecompose(build_effective_hamiltonian(p), p.Gamma_f);
  m.Gamma = p.Gamma;
  classify_modes(m);  // re-evaluate scale-aware warnings with the true Gamma
  return m;
}

void classify_modes(ModeSet& m) {
  const int N = m.size();
  int edge = 0;
  for (int j = 1; j < N; ++j) {
    const double a = std::abs(m.Delta(j)), b = std::abs(m.Delta(edge));
    if (a < b || (a == b && m.GammaJ(j) < m.GammaJ(edge))) edge = j;
  }
  m.edge_index = edge;
  m.bulk_indices.clear();
  for (int j = 0; j < N; ++j)
    if (j != edge) m.bulk_indices.push_back(j);

  const Eigen::VectorXd occ = m.psiR.col(edge).cwiseAbs2();
  const double total = occ.sum();
  m.boundary_weight_right = occ(N - 1) / total;
  m.boundary_weight_left = occ(0) / total;

  m.gap = 0.0;
  if (!m.bulk_indices.empty()) {
    double g = std::abs(m.Delta(m.bulk_indices.front()));
    for (int j : m.bulk_indices) g = std::min(g, std::abs(m.Delta(j)));
    m.gap = g;
  }

  m.warnings.clear();
  if (std::abs(m.Delta(edge)) > 1e-6)
    m.warnings.push_back("edge mode detuned: |Delta_edge| = " + std::to_string(std::abs(m.Delta(edge))) +
                         " > 1e-6 (frame misalignment or theta away from 3pi/2)");
  if (N > 1 && m.gap <= m.Gamma)
    m.warnings.push_back("no meaningful bandgap: min bulk |Delta| = " + std::to_string(m.gap) +
                         " <= Gamma; edge/bulk classification is not robust here");
}

double edge_decay_rate(const SystemParams& p) {
  SystemParams q = p;
  q.Gamma_f = 0.0;  // Gamma_edge is Gamma_f-independent (uniform shift)
  const ModeSet m = eigendecompose(q);
  return m.GammaJ(m.edge_index);
}

}  // namespace taasim

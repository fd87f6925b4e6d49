#include "taasim/model.hpp"

#include <cmath>

#include "taasim/errors.hpp"

namespace taasim {

std::vector<double> build_couplings(double J0, double phi, int N) {
  if (N < 1 || N % 2 == 0)
    throw ConfigError({"build_couplings: N must be a positive odd integer (got " + std::to_string(N) + ")"});
  std::vector<double> J(static_cast<std::size_t>(N - 1));
  const double c = std::cos(phi);
  for (int i = 1; i < N; ++i)
    J[static_cast<std::size_t>(i - 1)] = J0 * (1.0 - (i % 2 == 0 ? 1.0 : -1.0) * c);
  return J;
}

CMatrix build_effective_hamiltonian(const SystemParams& p) {
  p.validate();
  const int N = p.N;
  const Complex minus_i(0.0, -1.0);
  CMatrix H = CMatrix::Zero(N, N);
  const auto J = build_couplings(p.J0, p.phi, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const int m = std::abs(i - j);
      H(i, j) = minus_i * p.Gamma * p.theta.unit_power(m);
    }
    H(i, i) -= Complex(0.0, p.Gamma_f);
  }
  for (int i = 0; i + 1 < N; ++i) {
    H(i, i + 1) += J[static_cast<std::size_t>(i)];
    H(i + 1, i) += J[static_cast<std::size_t>(i)];
  }
  return H;
}

Eigen::MatrixXd build_bare_hamiltonian(const SystemParams& p) {
  p.validate();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(p.N, p.N);
  const auto J = build_couplings(p.J0, p.phi, p.N);
  for (int i = 0; i + 1 < p.N; ++i) {
    H(i, i + 1) = J[static_cast<std::size_t>(i)];
    H(i + 1, i) = J[static_cast<std::size_t>(i)];
  }
  return H;
}

}  // namespace taasim

// test_model.cpp — coupling pattern and effective-Hamiltonian structure.
#include <doctest.h>

#include "taasim/model.hpp"

using namespace taasim;

TEST_SUITE("model") {

TEST_CASE("couplings alternate strong-weak starting strong") {
  const double J0 = 2.2, phi = 0.2 * kPi;
  auto J = build_couplings(J0, phi, 7);
  REQUIRE(J.size() == 6);
  const double strong = J0 * (1.0 + std::cos(phi));
  const double weak = J0 * (1.0 - std::cos(phi));
  for (size_t i = 0; i < J.size(); ++i) CHECK(J[i] == (i % 2 == 0 ? strong : weak));
  CHECK(J[0] > J[1]);
}

TEST_CASE("effective Hamiltonian is complex-symmetric with exact kernel phases") {
  SystemParams p;  // theta = 3pi/2: e^{i theta m} cycles 1, -i, -1, i
  p.Gamma_f = 0.07;
  CMatrix H = build_effective_hamiltonian(p);
  REQUIRE(H.rows() == p.N);

  double asym = 0.0;
  for (int i = 0; i < p.N; ++i)
    for (int j = 0; j < p.N; ++j) asym = std::max(asym, std::abs(H(i, j) - H(j, i)));
  CHECK(asym == 0.0);

  const Complex diag(0.0, -(p.Gamma + p.Gamma_f));
  for (int i = 0; i < p.N; ++i) CHECK(H(i, i) == diag);

  auto J = build_couplings(p.J0, p.phi, p.N);
  // |i-j| = 1: -i*Gamma*e^{i 3pi/2} = -Gamma; |i-j| = 2: -i*Gamma*e^{i 3pi} = +i*Gamma
  CHECK(H(0, 1) == Complex(J[0] - p.Gamma, 0.0));
  CHECK(H(2, 3) == Complex(J[2] - p.Gamma, 0.0));
  CHECK(H(0, 2) == Complex(0.0, p.Gamma));
  CHECK(H(0, 3) == Complex(p.Gamma, 0.0));  // -i*Gamma*e^{i 9pi/2} = -i*Gamma*i = +Gamma
}

TEST_CASE("bare Hamiltonian is the real tridiagonal SSH part") {
  SystemParams p;
  Eigen::MatrixXd Hb = build_bare_hamiltonian(p);
  auto J = build_couplings(p.J0, p.phi, p.N);
  for (int i = 0; i < p.N; ++i)
    for (int j = 0; j < p.N; ++j) {
      if (std::abs(i - j) == 1)
        CHECK(Hb(i, j) == J[std::min(i, j)]);
      else
        CHECK(Hb(i, j) == 0.0);
    }
}

TEST_CASE("site phases live on x_i = i*d") {
  SystemParams p;
  // right-mover phase at atom 1: e^{i theta} = -i; left-mover: e^{-i theta} = +i
  CHECK(site_phase(p, 1, +1) == Complex(0.0, -1.0));
  CHECK(site_phase(p, 1, -1) == Complex(0.0, 1.0));
  CHECK(site_phase(p, 2, +1) == Complex(-1.0, 0.0));
  CHECK(site_phase(p, 4, +1) == Complex(1.0, 0.0));
}

}  // TEST_SUITE

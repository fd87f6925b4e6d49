// scattering.cpp — Markovian and exact transport solvers, channel decomposition.
#include "taasim/scattering.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "taasim/errors.hpp"

namespace taasim {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kCondLimit = 1e12;

// Locate the channel denominator that drove the system singular and throw.
[[noreturn]] void throw_singular(const SystemParams& p, double delta, double cond,
                                 const char* solver) {
  Complex eps_min{std::numeric_limits<double>::quiet_NaN(), 0.0};
  double best = std::numeric_limits<double>::infinity();
  try {
    ModeSet ms = eigendecompose(p);
    for (int j = 0; j < ms.size(); ++j) {
      Complex e = delta - ms.E(j);
      if (std::abs(e) < best) {
        best = std::abs(e);
        eps_min = e;
      }
    }
  } catch (const Error&) {
    // keep the NaN placeholder; the condition number still tells the story
  }
  std::string msg = std::string(solver) + " solve is near-singular (cond = " +
                    std::to_string(cond) + ") at delta = " + std::to_string(delta) +
                    "; smallest channel denominator |eps_j| = " + std::to_string(best) +
                    " (lasing-threshold divergence; move Gamma_f away from -Gamma_edge)";
  throw SingularityError(msg, eps_min, cond);
}

double condition_of(const Eigen::PartialPivLU<CMatrix>& lu) {
  double rc = lu.rcond();
  if (!(rc > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / rc;
}

}  // namespace

// ---- Markovian solver ----

ScatterResult scatter_markovian(const SystemParams& p, double delta, Direction dir) {
  p.validate();
  const int N = p.N;
  const int s = direction_sign(dir);

  CMatrix A = -build_effective_hamiltonian(p);
  A.diagonal().array() += delta;

  CVector V(N);
  for (int i = 1; i <= N; ++i) V(i - 1) = site_phase(p, i, s);

  Eigen::PartialPivLU<CMatrix> lu(A);
  const double cond = condition_of(lu);
  if (cond > kCondLimit) throw_singular(p, delta, cond, "markovian");

  ScatterResult out;
  out.delta = delta;
  out.direction = dir;
  out.solver = "markovian";
  out.cond = cond;
  out.Lambda = lu.solve(V);

  Complex sum_t{0.0, 0.0}, sum_r{0.0, 0.0};
  for (int i = 0; i < N; ++i) {
    sum_t += std::conj(V(i)) * out.Lambda(i);
    sum_r += V(i) * out.Lambda(i);
  }
  out.t = 1.0 - kI * p.Gamma * sum_t;
  out.r = -kI * p.Gamma * sum_r;
  out.T = std::norm(out.t);
  out.R = std::norm(out.r);
  out.eta = 1.0 - out.T - out.R;
  return out;
}

// ---- exact solver ----

std::pair<ScatterResult, PiecewiseField> scatter_exact(const SystemParams& p, double delta,
                                                       Direction dir) {
  p.validate(/*need_exact_solver=*/true);
  const int N = p.N;
  const double kd = p.theta.value() * (1.0 + delta / p.omega0);
  const std::vector<double> J = build_couplings(p.J0, p.phi, N);

  // Unknowns: [a_1..a_N | t_1..t_N | r_1..r_N]; t_0 and r_{N+1} are boundary data.
  const int na = 0, nt = N, nr = 2 * N;
  const Complex t0_bc = (dir == Direction::Left) ? 1.0 : 0.0;
  const Complex rN1_bc = (dir == Direction::Left) ? 0.0 : 1.0;

  CMatrix A = CMatrix::Zero(3 * N, 3 * N);
  CVector b = CVector::Zero(3 * N);

  for (int i = 1; i <= N; ++i) {
    const Complex Ei = std::polar(1.0, kd * i);    // e^{+ik x_i}
    const Complex Emi = std::polar(1.0, -kd * i);  // e^{-ik x_i}
    const int row_at = i - 1, row_t = N + i - 1, row_r = 2 * N + i - 1;

    // Atom i driven by the mean of its two adjacent segment fields.
    A(row_at, na + i - 1) = delta + kI * p.Gamma_f;
    if (i >= 2) A(row_at, na + i - 2) = -J[i - 2];
    if (i <= N - 1) A(row_at, na + i) = -J[i - 1];
    A(row_at, nt + i - 1) -= 0.5 * p.Gamma * Ei;  // t_i
    if (i >= 2)
      A(row_at, nt + i - 2) -= 0.5 * p.Gamma * Ei;  // t_{i-1}
    else
      b(row_at) += 0.5 * p.Gamma * Ei * t0_bc;
    A(row_at, nr + i - 1) -= 0.5 * p.Gamma * Emi;  // r_i
    if (i <= N - 1)
      A(row_at, nr + i) -= 0.5 * p.Gamma * Emi;  // r_{i+1}
    else
      b(row_at) += 0.5 * p.Gamma * Emi * rN1_bc;

    // Right-mover jump across atom i: t_i - t_{i-1} = -i a_i e^{-ik x_i}.
    A(row_t, nt + i - 1) = 1.0;
    A(row_t, na + i - 1) = kI * Emi;
    if (i >= 2)
      A(row_t, nt + i - 2) = -1.0;
    else
      b(row_t) += t0_bc;

    // Left-mover jump: r_{i+1} - r_i = +i a_i e^{+ik x_i}.
    A(row_r, nr + i - 1) = -1.0;
    A(row_r, na + i - 1) = -kI * Ei;
    if (i <= N - 1)
      A(row_r, nr + i) = 1.0;
    else
      b(row_r) -= rN1_bc;
  }

  Eigen::PartialPivLU<CMatrix> lu(A);
  const double cond = condition_of(lu);
  if (cond > kCondLimit) throw_singular(p, delta, cond, "exact");
  CVector u = lu.solve(b);

  PiecewiseField pw;
  pw.N = N;
  pw.k_d = kd;
  pw.direction = dir;
  pw.t_seg = CVector(N + 1);
  pw.r_seg = CVector(N + 1);
  pw.t_seg(0) = t0_bc;
  for (int i = 1; i <= N; ++i) pw.t_seg(i) = u(nt + i - 1);
  for (int i = 0; i < N; ++i) pw.r_seg(i) = u(nr + i);  // r_seg(i) = r_{i+1}
  pw.r_seg(N) = rN1_bc;

  ScatterResult out;
  out.delta = delta;
  out.direction = dir;
  out.solver = "exact";
  out.cond = cond;
  out.Lambda = u.segment(na, N) / p.Gamma;  // Markovian per-unit-drive convention
  const Complex right_out = pw.t_seg(N);
  const Complex left_out = pw.r_seg(0);
  out.t = (dir == Direction::Left) ? right_out : left_out;
  out.r = (dir == Direction::Left) ? left_out : right_out;
  out.T = std::norm(out.t);
  out.R = std::norm(out.r);
  out.eta = 1.0 - out.T - out.R;
  return {out, pw};
}

std::vector<double> field_profile(const PiecewiseField& pw, const SystemParams& /*p*/,
                                  const std::vector<double>& x_grid) {
  std::vector<double> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    int seg = static_cast<int>(std::floor(x));
    seg = std::max(0, std::min(pw.N, seg));  // atoms own their right-hand segment
    const Complex phase = std::polar(1.0, pw.k_d * x);
    out.push_back(std::norm(pw.t_seg(seg) * phase + pw.r_seg(seg) / phase));
  }
  return out;
}

// ---- channel decomposition ----

ChannelDecomposition scatter_channels(const SystemParams& p, double delta, Direction dir) {
  p.validate();
  const int N = p.N;
  const int s = direction_sign(dir);
  ModeSet ms = eigendecompose(p);

  CVector V(N);
  for (int i = 1; i <= N; ++i) V(i - 1) = site_phase(p, i, s);

  ChannelDecomposition ch;
  ch.edge_index = ms.edge_index;
  ch.xi_r = CVector(N);
  ch.xi_t = CVector(N);
  ch.eps = CVector(N);
  ch.Xi = CVector(N);
  ch.XiT = CVector(N);

  for (int j = 0; j < N; ++j) {
    const Complex a = V.transpose() * ms.psiR.col(j);          // V^T psi_j
    const Complex bL = ms.psiL.col(j).transpose() * V;         // psi_j^L . V (= a)
    const Complex c = V.conjugate().transpose() * ms.psiR.col(j);  // V^dag psi_j
    ch.Xi(j) = p.Gamma * a * bL;
    ch.XiT(j) = p.Gamma * c * bL;
    ch.eps(j) = delta - ms.E(j);
    ch.xi_r(j) = ch.Xi(j) / ch.eps(j);
    ch.xi_t(j) = ch.XiT(j) / ch.eps(j);
  }

  ch.xi_edge_r = ch.xi_r(ms.edge_index);
  ch.xi_edge_t = ch.xi_t(ms.edge_index);
  ch.xi_bulk_r = Complex{0.0, 0.0};
  ch.xi_bulk_t = Complex{0.0, 0.0};
  for (int j : ms.bulk_indices) {
    ch.xi_bulk_r += ch.xi_r(j);
    ch.xi_bulk_t += ch.xi_t(j);
  }
  ch.r_sum = -kI * ch.xi_r.sum();
  ch.t_sum = 1.0 - kI * ch.xi_t.sum();
  return ch;
}

}  // namespace taasim

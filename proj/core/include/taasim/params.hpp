// params.hpp — physical configuration: unit system, rotating frame, exact pi-rational phases.
#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace taasim {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// An angle that remembers being an exact rational multiple of pi, so that
// e^{i*angle*m} can be evaluated for integer m without phase accumulation error.
class PiPhase {
public:
  static PiPhase rational(std::int64_t num, std::int64_t den);
  static PiPhase radians(double value);  // generic, no exactness guarantee
  // Parses "0.241pi", "3/2pi", "1.5pi" (exact rational) or a plain radian number.
  static PiPhase parse(const std::string& text);

  double value() const noexcept { return value_; }
  bool is_pi_rational() const noexcept { return rational_; }
  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  // e^{i * value * m}. For pi-rational angles the phase is reduced mod 2*pi exactly
  // (integer arithmetic) and quarter-turn multiples come from a constant table.
  std::complex<double> unit_power(std::int64_t m) const;

private:
  double value_ = 0.0;
  bool rational_ = false;
  std::int64_t num_ = 0, den_ = 1;
};

struct SystemParams {
  int N = 7;                 // number of atoms (odd)
  double J0 = 2.2;           // coupling scale, units of Gamma
  double phi = 0.2 * kPi;    // dimerization angle, radians
  double Gamma = 1.0;        // waveguide decay rate g^2/v_g, the global unit
  double Gamma_f = 0.0;      // free-space loss (>0) or gain (<0), units of Gamma
  PiPhase theta = PiPhase::rational(3, 2);  // inter-atom propagation phase k0*d
  double omega0 = 1e4;       // absolute atomic frequency, exact solver only
  double epsilon = 0.1;      // drive amplitude; scattering coefficients are eps-independent

  // Throws ConfigError listing every violation. `need_exact_solver` adds the
  // Markovian-regime guard omega0/Gamma >= 1e3.
  void validate(bool need_exact_solver = false) const;
};

}  // namespace taasim

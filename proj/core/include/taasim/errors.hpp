// errors.hpp — failure taxonomy shared by the engine and the CLI exit-code contract.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace taasim {

// Base class; `code()` is stable and machine-readable (used in error JSON).
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

// Invalid configuration. Collects every violation, not just the first.
class ConfigError : public Error {
public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error("config", join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid configuration:";
    for (const auto& m : v) s += "\n  - " + m;
    return s;
  }
  std::vector<std::string> violations_;
};

// Numerical failure (fit window unusable, minimizer found no interior minimum, ...).
class NumericalError : public Error {
public:
  NumericalError(std::string code, const std::string& what) : Error(std::move(code), what) {}
};

// Near-singular linear system (lasing-threshold divergence). Carries the offending
// channel denominator so the caller can see which mode hit resonance.
class SingularityError : public Error {
public:
  SingularityError(const std::string& what, std::complex<double> offending_eps, double cond)
      : Error("singularity", what), offending_eps_(offending_eps), cond_(cond) {}
  std::complex<double> offending_eps() const noexcept { return offending_eps_; }
  double condition_number() const noexcept { return cond_; }

private:
  std::complex<double> offending_eps_;
  double cond_;
};

// Biorthogonal decomposition failed (eigenvector coalescence).
class ExceptionalPointError : public Error {
public:
  explicit ExceptionalPointError(double residual)
      : Error("exceptional-point",
              "biorthogonal completeness residual " + std::to_string(residual) +
                  " exceeds 1e-6; parameters are at/near an exceptional point"),
        residual_(residual) {}
  double completeness_residual() const noexcept { return residual_; }

private:
  double residual_;
};

}  // namespace taasim

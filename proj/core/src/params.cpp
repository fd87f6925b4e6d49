#include "taasim/params.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "taasim/errors.hpp"

namespace taasim {

PiPhase PiPhase::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ConfigError({"pi-rational phase has zero denominator"});
  if (den < 0) { num = -num; den = -den; }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) { num /= g; den /= g; }
  PiPhase p;
  p.rational_ = true;
  p.num_ = num;
  p.den_ = den;
  p.value_ = kPi * static_cast<double>(num) / static_cast<double>(den);
  return p;
}

PiPhase PiPhase::radians(double value) {
  PiPhase p;
  p.value_ = value;
  return p;
}

namespace {

// "123.456" -> exact rational 123456/1000 (decimal strings are rationals).
bool decimal_to_rational(const std::string& s, std::int64_t& num, std::int64_t& den) {
  std::int64_t n = 0, d = 1;
  bool neg = false, seen_digit = false, seen_dot = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.') {
      if (seen_dot) return false;
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') return false;
    if (n > (INT64_MAX - 9) / 10) return false;  // overflow guard
    n = n * 10 + (c - '0');
    if (seen_dot) {
      if (d > INT64_MAX / 10) return false;
      d *= 10;
    }
    seen_digit = true;
  }
  if (!seen_digit) return false;
  num = neg ? -n : n;
  den = d;
  return true;
}

}  // namespace

PiPhase PiPhase::parse(const std::string& text) {
  std::string s = text;
  // strip whitespace
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  s = t;
  const bool has_pi = s.size() >= 2 && (s.substr(s.size() - 2) == "pi" || s.substr(s.size() - 2) == "PI");
  if (!has_pi) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return PiPhase::radians(v);
    } catch (const std::exception&) {
      throw ConfigError({"cannot parse angle '" + text + "' (expected radians or a pi literal like 0.2pi or 3/2pi)"});
    }
  }
  std::string body = s.substr(0, s.size() - 2);
  if (body.empty()) body = "1";
  const auto slash = body.find('/');
  std::int64_t num = 0, den = 1;
  if (slash != std::string::npos) {
    std::int64_t dnum = 0, dden = 1;  // denominator may itself be decimal
    if (!decimal_to_rational(body.substr(0, slash), num, den) ||
        !decimal_to_rational(body.substr(slash + 1), dnum, dden) || dnum == 0)
      throw ConfigError({"cannot parse pi literal '" + text + "'"});
    // (num/den) / (dnum/dden) = num*dden / (den*dnum)
    return PiPhase::rational(num * dden, den * dnum);
  }
  if (!decimal_to_rational(body, num, den))
    throw ConfigError({"cannot parse pi literal '" + text + "'"});
  return PiPhase::rational(num, den);
}

std::complex<double> PiPhase::unit_power(std::int64_t m) const {
  if (!rational_) {
    const double a = value_ * static_cast<double>(m);
    return {std::cos(a), std::sin(a)};
  }
  // reduce m*num mod 2*den exactly: angle = pi * r / den with r in [0, 2*den)
  const std::int64_t mod = 2 * den_;
  std::int64_t r = (m % mod) * (num_ % mod) % mod;
  r %= mod;
  if (r < 0) r += mod;
  // quarter-turn multiples are exact table entries
  const std::int64_t q4 = (4 * r) / den_;  // r/den in quarter turns when divisible
  if ((4 * r) % den_ == 0) {
    switch (q4 % 8) {
      case 0: return {1.0, 0.0};
      case 2: return {0.0, 1.0};
      case 4: return {-1.0, 0.0};
      case 6: return {0.0, -1.0};
      default: break;  // odd eighths fall through to polar
    }
  }
  const double a = kPi * static_cast<double>(r) / static_cast<double>(den_);
  return {std::cos(a), std::sin(a)};
}

void SystemParams::validate(bool need_exact_solver) const {
  std::vector<std::string> v;
  if (N < 1) v.push_back("N must be >= 1 (got " + std::to_string(N) + ")");
  if (N >= 1 && N % 2 == 0) v.push_back("N must be odd (got " + std::to_string(N) + ")");
  if (!(J0 > 0.0)) v.push_back("J0 must be > 0");
  if (!(phi >= 0.0 && phi <= kPi)) v.push_back("phi must lie in [0, pi]");
  if (!(Gamma > 0.0)) v.push_back("Gamma must be > 0");
  if (!std::isfinite(Gamma_f)) v.push_back("Gamma_f must be finite");
  if (!std::isfinite(theta.value())) v.push_back("theta must be finite");
  if (!(epsilon > 0.0)) v.push_back("epsilon must be > 0");
  if (need_exact_solver && !(omega0 / Gamma >= 1e3))
    v.push_back("omega0/Gamma must be >= 1e3 for the exact solver (Markovian-regime guard)");
  if (!v.empty()) throw ConfigError(std::move(v));
}

}  // namespace taasim

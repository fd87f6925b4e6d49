// common.hpp — CLI plumbing shared by subcommands: config resolution, manifests, errors.
#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "taasim/errors.hpp"
#include "taasim/params.hpp"
#include "taasim/scattering.hpp"
#include "taasim/version.hpp"

namespace taasim::cli {

using nlohmann::json;
namespace fs = std::filesystem;

// Options common to every subcommand. Textual phase fields keep pi literals exact.
struct CommonOpts {
  int N = 7;
  double J0 = 2.2;
  std::string phi = "0.2pi";
  double Gamma = 1.0;
  double Gamma_f = 0.0;
  std::string theta = "3/2pi";
  double omega0 = 1e4;
  double epsilon = 0.1;
  std::string direction = "left";
  std::string outdir;
  unsigned workers = 0;
  bool allow_near_singular = false;
  std::uint64_t seed = 0;  // reserved; solvers are deterministic

  SystemParams params() const {
    std::vector<std::string> bad;
    SystemParams p;
    p.N = N;
    p.J0 = J0;
    p.Gamma = Gamma;
    p.Gamma_f = Gamma_f;
    p.omega0 = omega0;
    p.epsilon = epsilon;
    try {
      p.phi = PiPhase::parse(phi).value();
    } catch (const std::exception&) {
      bad.push_back("phi: cannot parse '" + phi + "' (expected e.g. 0.2pi, 1/4pi, or radians)");
    }
    try {
      p.theta = PiPhase::parse(theta);
    } catch (const std::exception&) {
      bad.push_back("theta: cannot parse '" + theta + "'");
    }
    if (!bad.empty()) throw ConfigError(bad);
    return p;
  }

  Direction dir() const { return direction == "right" ? Direction::Right : Direction::Left; }

  fs::path resolved_outdir() const {
    if (!outdir.empty()) return outdir;
    if (const char* env = std::getenv("TAASIM_OUTDIR"); env && *env) return env;
    return ".";
  }
};

inline json params_json(const SystemParams& p, const CommonOpts& o) {
  return json{{"N", p.N},           {"J0", p.J0},
              {"phi", o.phi},       {"phi_radians", p.phi},
              {"Gamma", p.Gamma},   {"Gamma_f", p.Gamma_f},
              {"theta", o.theta},   {"theta_radians", p.theta.value()},
              {"omega0", p.omega0}, {"epsilon", p.epsilon},
              {"direction", o.direction}};
}

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

inline void write_json_file(const fs::path& path, const json& j) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

// Every run leaves a manifest sufficient to reproduce it: resolved config, engine
// version, produced files, wall time.
inline void write_manifest(const fs::path& dir, const std::string& command, const json& config,
                           const std::vector<std::string>& outputs, double wall_s,
                           const std::vector<std::string>& warnings = {}) {
  json m{{"engine", kEngineName},
         {"version", kVersion},
         {"command", command},
         {"config", config},
         {"outputs", outputs},
         {"wall_time_s", wall_s}};
  if (!warnings.empty()) m["warnings"] = warnings;
  write_json_file(dir / "manifest.json", m);
}

// Exit-code contract: 0 ok, 2 config error, 3 numerical failure, 4 singularity
// without override.
inline int exit_code_for(const Error& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const SingularityError*>(&e)) return 4;
  return 3;
}

inline int emit_error(const Error& e) {
  json j{{"error", e.code()}, {"message", e.what()}};
  if (const auto* c = dynamic_cast<const ConfigError*>(&e)) j["violations"] = c->violations();
  if (const auto* s = dynamic_cast<const SingularityError*>(&e)) {
    j["offending_eps"] = {s->offending_eps().real(), s->offending_eps().imag()};
    j["cond"] = s->condition_number();
  }
  if (const auto* x = dynamic_cast<const ExceptionalPointError*>(&e))
    j["completeness_residual"] = x->completeness_residual();
  std::cerr << j.dump(2) << std::endl;
  return exit_code_for(e);
}

}  // namespace taasim::cli

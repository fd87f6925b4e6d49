// figures.hpp — canonical dataset generators behind `taasim figures`.
#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace taasim::cli {

const std::vector<std::string>& figure_keys();

// Writes <key>.csv (plus auxiliary CSVs) and <key>.meta.json under dir.
// Returns the produced file names. Throws taasim::Error subclasses on failure.
std::vector<std::string> generate_figure(const std::string& key, const CommonOpts& opts,
                                         const fs::path& dir);

}  // namespace taasim::cli

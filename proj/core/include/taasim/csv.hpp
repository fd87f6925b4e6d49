// csv.hpp — deterministic CSV emission (RFC 4180 quoting, round-trip floats).
#pragma once

#include <string>
#include <vector>

namespace taasim {
namespace csv {

// %.17g — shortest representation is not needed, round-trip fidelity is.
std::string fmt(double x);
// Quotes iff the cell contains a comma, quote, or newline; doubles embedded quotes.
std::string escape(const std::string& cell);
// Joins pre-escaped or raw cells with commas and a trailing newline.
std::string row(const std::vector<std::string>& cells);

}  // namespace csv

// Writes header + rows to path, creating parent directories. Throws taasim::Error
// (code "io") on failure.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows);

}  // namespace taasim

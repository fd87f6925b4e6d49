// csv.cpp — CSV formatting and file emission.
#include "taasim/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "taasim/errors.hpp"

namespace taasim {
namespace csv {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string row(const std::vector<std::string>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += escape(cells[i]);
  }
  out += '\n';
  return out;
}

}  // namespace csv

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::filesystem::path fp(path);
  if (fp.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(fp.parent_path(), ec);
    if (ec) throw Error("io", "cannot create directory " + fp.parent_path().string() + ": " +
                                  ec.message());
  }
  std::ofstream out(fp, std::ios::binary);
  if (!out) throw Error("io", "cannot open " + path + " for writing");
  out << header << '\n';
  for (const auto& r : rows) {
    out << r;
    if (r.empty() || r.back() != '\n') out << '\n';
  }
  if (!out) throw Error("io", "write failed for " + path);
}

}  // namespace taasim

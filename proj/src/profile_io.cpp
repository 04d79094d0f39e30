#include "stefanrad/profile_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "stefanrad/errors.hpp"

namespace stefanrad {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_profile(std::span<const double> y, std::span<const double> value,
                           std::span<const double> residual, const HeaderEcho& echo) {
  if (value.size() != y.size() || residual.size() != y.size()) {
    throw ConfigError("profile columns have different lengths");
  }
  std::string out = "#";
  for (const auto& [key, val] : echo) out += " " + key + "=" + val;
  out += "\n";
  for (std::size_t i = 0; i < y.size(); ++i) {
    out += format_double(y[i]) + " " + format_double(value[i]) + " " + format_double(residual[i]) + "\n";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::ios_base::failure("cannot open " + path + " for writing");
  os << text;
  os.flush();
  if (!os) throw std::ios_base::failure("write to " + path + " failed");
}

void write_profile(const Profile& p, std::span<const double> residual, const HeaderEcho& echo,
                   const std::string& path) {
  write_text(path, format_profile(p.grid.nodes, p.values, residual, echo));
}

void write_profile(const SelfSimilarProfile& p, const HeaderEcho& echo, const std::string& path) {
  const std::vector<double> residual = selfsimilar_residual(p.grid, p.values, p.alpha);
  write_text(path, format_profile(p.grid.nodes, p.values, residual, echo));
}

ProfileTable read_profile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::ios_base::failure("cannot open " + path);
  ProfileTable t;
  std::string line;
  if (!std::getline(is, line) || line.empty() || line[0] != '#') {
    throw ConfigError(path + ": missing header line");
  }
  std::istringstream header(line.substr(1));
  std::string token;
  while (header >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ": malformed header entry " + token);
    t.header.emplace_back(token.substr(0, eq), token.substr(eq + 1));
  }
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    const char* s = line.c_str();
    char* end = nullptr;
    double cols[3];
    for (double& col : cols) {
      col = std::strtod(s, &end);
      if (end == s) throw ConfigError(path + ": malformed row " + std::to_string(row));
      s = end;
    }
    t.y.push_back(cols[0]);
    t.value.push_back(cols[1]);
    t.residual.push_back(cols[2]);
  }
  return t;
}

}  // namespace stefanrad

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stefanrad/profile.hpp"
#include "stefanrad/selfsimilar.hpp"

namespace stefanrad {

/// Ordered key-value pairs written to the header line.
using HeaderEcho = std::vector<std::pair<std::string, std::string>>;

/// Parsed profile table.
struct ProfileTable {
  HeaderEcho header;
  std::vector<double> y;
  std::vector<double> value;
  std::vector<double> residual;
};

/// One header line "# key=value ..." followed by one row "y value residual"
/// per node, each number at 17 significant digits. Throws std::ios_base::failure
/// when the file cannot be written.
void write_profile(const Profile& p, std::span<const double> residual, const HeaderEcho& echo,
                   const std::string& path);
void write_profile(const SelfSimilarProfile& p, const HeaderEcho& echo, const std::string& path);

/// Same table as a string.
std::string format_profile(std::span<const double> y, std::span<const double> value,
                           std::span<const double> residual, const HeaderEcho& echo);

ProfileTable read_profile(const std::string& path);

/// Writes text to path, throwing std::ios_base::failure on error.
void write_text(const std::string& path, const std::string& text);

/// Formats a double at 17 significant digits.
std::string format_double(double v);

}  // namespace stefanrad

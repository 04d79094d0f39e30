#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "stefanrad/params.hpp"

namespace stefanrad {

enum class Command { solve_wave, cmax, small_tm, selfsimilar, c0, verify };

/// "solve-wave", "cmax", ... Throws ConfigError for unknown names.
Command parse_command(std::string_view name);
std::string command_name(Command command);

struct GridSpec {
  double y_max = 40.0;
  std::size_t n = 2000;
  double stretch = 1.0;
};

inline constexpr double kMinTol = 1e-14;
inline constexpr double kMaxTol = 1e-2;
inline constexpr std::size_t kMaxNodes = 200000;
inline constexpr double kMaxStretch = 1.1;
inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct RunConfig {
  Command command = Command::verify;
  WaveParams params;
  GridSpec grid;
  double tol = 1e-10;
  std::string output_dir = ".";
  // small-tm
  double eps = 0.0;
  // selfsimilar
  double T_int = 0.0;
  double T_inf = 0.0;
  double Z = 10.0;
  std::size_t selfsimilar_n = 800;
  // verify
  std::optional<std::string> suite;
  std::uint64_t seed = kDefaultSeed;
};

/// Builds a validated RunConfig from a JSON object. Keys: c, T_M, alpha,
/// kappa, K, L, y_max, n, stretch, tol, output_dir, eps, T_int, T_inf, Z,
/// selfsimilar_n, suite, seed. Missing keys take their defaults (y_max =
/// 40 / min(1, c)). Throws ConfigError listing unknown keys, naming the
/// violated bound, or naming a parameter the command requires.
RunConfig config_from_json(const nlohmann::json& doc, Command command);

/// Parses JSON text with config_from_json; an empty or whitespace-only text is an empty object.
RunConfig parse_config(std::string_view text, Command command);

/// Key-value echo of a config, used in report and profile headers.
nlohmann::json config_echo(const RunConfig& cfg);

}  // namespace stefanrad

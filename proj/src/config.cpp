#include "stefanrad/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "stefanrad/errors.hpp"

namespace stefanrad {
namespace {

constexpr std::array<std::pair<std::string_view, Command>, 6> kCommands{{
    {"solve-wave", Command::solve_wave},
    {"cmax", Command::cmax},
    {"small-tm", Command::small_tm},
    {"selfsimilar", Command::selfsimilar},
    {"c0", Command::c0},
    {"verify", Command::verify},
}};

constexpr std::array<std::string_view, 18> kKeys{"c",   "T_M",     "alpha", "kappa", "K",     "L",
                                                 "y_max", "n",     "stretch", "tol", "output_dir",
                                                 "eps", "T_int", "T_inf", "Z",     "selfsimilar_n",
                                                 "suite", "seed"};

std::string format(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double get_number(const nlohmann::json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw ConfigError(std::string("parameter ") + key + " must be a number");
  return v.get<double>();
}

std::size_t get_count(const nlohmann::json& doc, const char* key, std::size_t fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_float() && v.get<double>() >= 0.0 && std::floor(v.get<double>()) == v.get<double>()) {
    return static_cast<std::size_t>(v.get<double>());
  }
  throw ConfigError(std::string("parameter ") + key + " must be a nonnegative integer");
}

void require(const nlohmann::json& doc, const char* key, Command command) {
  if (!doc.contains(key)) {
    throw ConfigError("missing parameter " + std::string(key) + " required by " + command_name(command));
  }
}

void check_range(const char* key, double v, double lo, double hi) {
  if (!(v >= lo)) throw ConfigError(std::string(key) + " = " + format(v) + " is below the lower bound " + format(lo));
  if (!(v <= hi)) throw ConfigError(std::string(key) + " = " + format(v) + " exceeds the upper bound " + format(hi));
}

}  // namespace

Command parse_command(std::string_view name) {
  for (const auto& [key, cmd] : kCommands) {
    if (key == name) return cmd;
  }
  throw ConfigError("unknown command " + std::string(name));
}

std::string command_name(Command command) {
  for (const auto& [key, cmd] : kCommands) {
    if (cmd == command) return std::string(key);
  }
  return "unknown";
}

RunConfig config_from_json(const nlohmann::json& doc, Command command) {
  if (!doc.is_object()) throw ConfigError("configuration must be a key-value object");
  std::vector<std::string> unknown;
  for (const auto& item : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) unknown.push_back(item.key());
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError("unknown configuration keys: " + list);
  }

  RunConfig cfg;
  cfg.command = command;
  switch (command) {
    case Command::solve_wave:
      require(doc, "c", command);
      break;
    case Command::small_tm:
      require(doc, "c", command);
      require(doc, "eps", command);
      break;
    case Command::selfsimilar:
      require(doc, "T_int", command);
      require(doc, "T_inf", command);
      break;
    default:
      break;
  }

  WaveParams& p = cfg.params;
  p.c = get_number(doc, "c", 0.0);
  p.T_M = get_number(doc, "T_M", 1.0);
  p.alpha = get_number(doc, "alpha", 1.0);
  p.kappa = get_number(doc, "kappa", 1.0);
  p.K = get_number(doc, "K", 1.0);
  p.L = get_number(doc, "L", 1.0);
  if (command == Command::c0) p.c = 0.0;
  validate(p);
  for (double v : {p.c, p.T_M, p.kappa, p.K, p.L}) {
    if (std::isinf(v)) throw ConfigError("model parameters must be finite");
  }
  if (std::isinf(p.alpha) && command != Command::selfsimilar) {
    throw ConfigError("alpha = inf is only meaningful for the self-similar profile");
  }

  const double speed_scale = p.c > 0.0 ? std::min(1.0, p.c) : 1.0;
  cfg.grid.y_max = get_number(doc, "y_max", 40.0 / speed_scale);
  cfg.grid.n = get_count(doc, "n", 2000);
  cfg.grid.stretch = get_number(doc, "stretch", 1.0);
  cfg.tol = get_number(doc, "tol", 1e-10);
  check_range("y_max", cfg.grid.y_max, 1.0, 1e5);
  check_range("n", static_cast<double>(cfg.grid.n), 16.0, static_cast<double>(kMaxNodes));
  check_range("stretch", cfg.grid.stretch, 1.0, kMaxStretch);
  check_range("tol", cfg.tol, kMinTol, kMaxTol);

  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) throw ConfigError("output_dir must be a string");
    cfg.output_dir = doc.at("output_dir").get<std::string>();
  }
  cfg.eps = get_number(doc, "eps", 0.0);
  if (command == Command::small_tm && !(cfg.eps > 0.0)) throw ConfigError("eps must be positive");
  cfg.T_int = get_number(doc, "T_int", 0.0);
  cfg.T_inf = get_number(doc, "T_inf", 0.0);
  if (!(cfg.T_int >= 0.0) || !(cfg.T_inf >= 0.0)) throw ConfigError("T_int and T_inf must be nonnegative");
  cfg.Z = get_number(doc, "Z", 10.0);
  check_range("Z", cfg.Z, 8.0, 100.0);
  cfg.selfsimilar_n = get_count(doc, "selfsimilar_n", 800);
  check_range("selfsimilar_n", static_cast<double>(cfg.selfsimilar_n), 16.0, static_cast<double>(kMaxNodes));
  if (doc.contains("suite")) {
    if (!doc.at("suite").is_string()) throw ConfigError("suite must be a string");
    cfg.suite = doc.at("suite").get<std::string>();
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) throw ConfigError("seed must be a nonnegative integer");
    cfg.seed = doc.at("seed").get<std::uint64_t>();
  }
  return cfg;
}

RunConfig parse_config(std::string_view text, Command command) {
  if (std::all_of(text.begin(), text.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); })) {
    return config_from_json(nlohmann::json::object(), command);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  return config_from_json(doc, command);
}

nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = command_name(cfg.command);
  j["c"] = cfg.params.c;
  j["T_M"] = cfg.params.T_M;
  j["alpha"] = std::isinf(cfg.params.alpha) ? nlohmann::json("inf") : nlohmann::json(cfg.params.alpha);
  j["kappa"] = cfg.params.kappa;
  j["K"] = cfg.params.K;
  j["L"] = cfg.params.L;
  j["y_max"] = cfg.grid.y_max;
  j["n"] = cfg.grid.n;
  j["stretch"] = cfg.grid.stretch;
  j["tol"] = cfg.tol;
  if (cfg.command == Command::small_tm) j["eps"] = cfg.eps;
  if (cfg.command == Command::selfsimilar) {
    j["T_int"] = cfg.T_int;
    j["T_inf"] = cfg.T_inf;
    j["Z"] = cfg.Z;
    j["selfsimilar_n"] = cfg.selfsimilar_n;
  }
  if (cfg.suite) j["suite"] = *cfg.suite;
  j["seed"] = cfg.seed;
  return j;
}

}  // namespace stefanrad

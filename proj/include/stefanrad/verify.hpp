#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stefanrad/config.hpp"

namespace stefanrad {

struct SuiteResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation;  // how measured is compared with threshold, e.g. "<=" or ">="
  std::string detail;
};

struct VerificationReport {
  std::vector<SuiteResult> suites;  // in suite_names() order
  nlohmann::json environment;
  nlohmann::json config;

  bool all_pass() const;
};

struct VerifyOptions {
  double inject_kernel_scale = 1.0;  // multiplies every assembled kernel weight
};

/// Names of all invariant suites in run order.
const std::vector<std::string>& suite_names();

/// Runs every suite, or only cfg.suite when set (a full name or a module
/// prefix such as "kernel"). Suites use cfg.grid for the solid-phase runs.
/// Throws ConfigError for an unknown suite name.
VerificationReport run_verify(const RunConfig& cfg, const VerifyOptions& opt = {});

/// Deterministic JSON text: fixed key order, no timing data.
std::string report_json(const VerificationReport& report);

/// 0 when every suite passed, 1 otherwise.
int exit_status(const VerificationReport& report);

}  // namespace stefanrad

#pragma once

#include "verifier.hpp"

#include <json.hpp>

namespace superflat {

// "n,m,k" with positive integers
SuperDims parse_dims(const std::string& text);

// key = value lines, '#' comments, repeatable keys for list values:
//   case = 1,1,2
//   trials = 20
//   seed = 7
//   kappa = 1/3
//   checks = curvature, eigen
//   mutation = none
//   out = report.json
SuiteConfig parse_suite_config_text(const std::string& text);
SuiteConfig parse_suite_config_file(const std::string& path);

nlohmann::ordered_json suite_config_json(const SuiteConfig& config);
nlohmann::ordered_json check_json(const CheckResult& check);

// {"schema": 1, "config": ..., "checks": [...], "elapsed_seconds": ...}
nlohmann::ordered_json report_json(const nlohmann::ordered_json& config,
                                   const std::vector<CheckResult>& checks,
                                   double elapsed_seconds);

std::string report_string(const nlohmann::ordered_json& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace superflat

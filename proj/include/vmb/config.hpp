// JSON run configuration: one experiment plus one model (mixing-model or
// ALP parameters). Field names are fixed, lower_snake_case, with the unit
// baked into the name (b_tesla, l_meter, delta_ev, ...). Unknown fields are
// a hard error so that unit mistakes cannot pass silently.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "vmb/axion.hpp"
#include "vmb/exclusion.hpp"

namespace vmb::config {

// Raised on malformed configs; the message names the offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  exclusion::ExperimentConfig experiment;
  std::variant<dynamics::ModelParams, axion::AxionParams> model;
  OutputFormat output_format = OutputFormat::kCsv;
  std::string output_path;  // empty = standard output
};

// Schema (all numbers double unless noted):
//   experiment: name (string), b_tesla, l_meter, lambda_meter,
//               passes (integer >= 1),
//               geometry: either polarization_angle_to_b_rad
//                         or propagation_axis ("y"|"z") +
//                            polarization_axis ("x"|"z"),
//               measurement: either observed_rotation_rad + sigma_rad
//                            or limit_rotation_2sigma_rad
//   model:      either delta_ev + beta
//               or m_a_ev + g_inv_gev + omega_ev
RunConfig parse_run_config(const nlohmann::json& j);

RunConfig parse_run_config_text(const std::string& text);

RunConfig load_run_config(const std::string& path);

nlohmann::json serialize_run_config(const RunConfig& config);

}  // namespace vmb::config

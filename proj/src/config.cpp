#include "vmb/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace vmb::config {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& item : obj.items())
    if (!allowed.contains(item.key()))
      throw ConfigError("unknown field '" + item.key() + "' in " + where);
}

const json& require_field(const json& obj, const std::string& where,
                          const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError("missing field '" + key + "' in " + where);
  return *it;
}

double get_number(const json& obj, const std::string& where,
                  const std::string& key) {
  const json& v = require_field(obj, where, key);
  if (!v.is_number())
    throw ConfigError("field '" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

int get_positive_int(const json& obj, const std::string& where,
                     const std::string& key) {
  const json& v = require_field(obj, where, key);
  if (!v.is_number_integer())
    throw ConfigError("field '" + key + "' in " + where +
                      " must be an integer");
  const long long n = v.get<long long>();
  if (n < 1)
    throw ConfigError("field '" + key + "' in " + where + " must be >= 1");
  return static_cast<int>(n);
}

std::string get_string(const json& obj, const std::string& where,
                       const std::string& key) {
  const json& v = require_field(obj, where, key);
  if (!v.is_string())
    throw ConfigError("field '" + key + "' in " + where + " must be a string");
  return v.get<std::string>();
}

spin::Axis parse_axis(const std::string& text, const std::string& key) {
  if (text == "x") return spin::Axis::kX;
  if (text == "y") return spin::Axis::kY;
  if (text == "z") return spin::Axis::kZ;
  throw ConfigError("field '" + key + "' must be one of \"x\", \"y\", \"z\"");
}

std::string axis_name(spin::Axis axis) {
  switch (axis) {
    case spin::Axis::kX: return "x";
    case spin::Axis::kY: return "y";
    default: return "z";
  }
}

exclusion::ExperimentConfig parse_experiment(const json& j) {
  if (!j.is_object())
    throw ConfigError("field 'experiment' must be an object");
  const std::string where = "experiment";
  require_keys(j, where,
               {"name", "b_tesla", "l_meter", "lambda_meter", "passes",
                "polarization_angle_to_b_rad", "propagation_axis",
                "polarization_axis", "observed_rotation_rad", "sigma_rad",
                "limit_rotation_2sigma_rad"});

  exclusion::ExperimentConfig e;
  e.name = get_string(j, where, "name");
  e.b_tesla = get_number(j, where, "b_tesla");
  e.l_meter = get_number(j, where, "l_meter");
  e.lambda_meter = get_number(j, where, "lambda_meter");
  e.passes = get_positive_int(j, where, "passes");

  const bool has_angle = j.contains("polarization_angle_to_b_rad");
  const bool has_axes =
      j.contains("propagation_axis") || j.contains("polarization_axis");
  if (has_angle && has_axes)
    throw ConfigError(
        "experiment geometry must use either 'polarization_angle_to_b_rad' "
        "or the axis pair, not both");
  if (has_angle) {
    e.geometry = get_number(j, where, "polarization_angle_to_b_rad");
  } else if (has_axes) {
    spin::PolarizationSpec spec;
    spec.propagation =
        parse_axis(get_string(j, where, "propagation_axis"), "propagation_axis");
    spec.polarization = parse_axis(get_string(j, where, "polarization_axis"),
                                   "polarization_axis");
    e.geometry = spec;
  } else {
    throw ConfigError(
        "missing field 'polarization_angle_to_b_rad' (or the "
        "propagation_axis/polarization_axis pair) in experiment");
  }

  const bool has_signal =
      j.contains("observed_rotation_rad") || j.contains("sigma_rad");
  const bool has_limit = j.contains("limit_rotation_2sigma_rad");
  if (has_signal == has_limit)
    throw ConfigError(
        "experiment must carry exactly one measurement: either "
        "'observed_rotation_rad' + 'sigma_rad' or "
        "'limit_rotation_2sigma_rad'");
  if (has_signal) {
    exclusion::SignalMeasurement m;
    m.observed_rotation_rad = get_number(j, where, "observed_rotation_rad");
    m.sigma_rad = get_number(j, where, "sigma_rad");
    e.measurement = m;
  } else {
    exclusion::LimitMeasurement m;
    m.limit_rotation_2sigma_rad =
        get_number(j, where, "limit_rotation_2sigma_rad");
    e.measurement = m;
  }

  try {
    exclusion::validate(e);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("experiment: ") + err.what());
  }
  return e;
}

std::variant<dynamics::ModelParams, axion::AxionParams> parse_model(
    const json& j) {
  if (!j.is_object())
    throw ConfigError("field 'model' must be an object");
  const std::string where = "model";
  const bool is_fusion = j.contains("delta_ev") || j.contains("beta");
  const bool is_axion = j.contains("m_a_ev") || j.contains("g_inv_gev") ||
                        j.contains("omega_ev");
  if (is_fusion == is_axion)
    throw ConfigError(
        "model must carry exactly one parameter set: either 'delta_ev' + "
        "'beta' or 'm_a_ev' + 'g_inv_gev' + 'omega_ev'");

  if (is_fusion) {
    require_keys(j, where, {"delta_ev", "beta"});
    dynamics::ModelParams p;
    p.delta_ev = get_number(j, where, "delta_ev");
    p.beta = get_number(j, where, "beta");
    try {
      dynamics::validate(p);
    } catch (const std::invalid_argument& err) {
      throw ConfigError(std::string("model: ") + err.what());
    }
    return p;
  }

  require_keys(j, where, {"m_a_ev", "g_inv_gev", "omega_ev"});
  axion::AxionParams a;
  a.m_a_ev = get_number(j, where, "m_a_ev");
  a.g_inv_gev = get_number(j, where, "g_inv_gev");
  a.omega_ev = get_number(j, where, "omega_ev");
  try {
    axion::validate(a);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("model: ") + err.what());
  }
  return a;
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  require_keys(j, "config", {"experiment", "model"});
  RunConfig config;
  config.experiment = parse_experiment(require_field(j, "config", "experiment"));
  config.model = parse_model(require_field(j, "config", "model"));
  return config;
}

RunConfig parse_run_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("invalid JSON: ") + err.what());
  }
  return parse_run_config(j);
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config_text(buffer.str());
}

nlohmann::json serialize_run_config(const RunConfig& config) {
  json e;
  const auto& exp = config.experiment;
  e["name"] = exp.name;
  e["b_tesla"] = exp.b_tesla;
  e["l_meter"] = exp.l_meter;
  e["lambda_meter"] = exp.lambda_meter;
  e["passes"] = exp.passes;
  if (const auto* angle = std::get_if<double>(&exp.geometry)) {
    e["polarization_angle_to_b_rad"] = *angle;
  } else {
    const auto& spec = std::get<spin::PolarizationSpec>(exp.geometry);
    e["propagation_axis"] = axis_name(spec.propagation);
    e["polarization_axis"] = axis_name(spec.polarization);
  }
  if (const auto* signal =
          std::get_if<exclusion::SignalMeasurement>(&exp.measurement)) {
    e["observed_rotation_rad"] = signal->observed_rotation_rad;
    e["sigma_rad"] = signal->sigma_rad;
  } else {
    e["limit_rotation_2sigma_rad"] =
        std::get<exclusion::LimitMeasurement>(exp.measurement)
            .limit_rotation_2sigma_rad;
  }

  json m;
  if (const auto* fusion = std::get_if<dynamics::ModelParams>(&config.model)) {
    m["delta_ev"] = fusion->delta_ev;
    m["beta"] = fusion->beta;
  } else {
    const auto& a = std::get<axion::AxionParams>(config.model);
    m["m_a_ev"] = a.m_a_ev;
    m["g_inv_gev"] = a.g_inv_gev;
    m["omega_ev"] = a.omega_ev;
  }

  json root;
  root["experiment"] = e;
  root["model"] = m;
  return root;
}

}  // namespace vmb::config

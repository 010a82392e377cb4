#include "vmb/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vmb/config.hpp"
#include "vmb/constants.hpp"

namespace vmb::commands {

namespace {

using config::ConfigError;
using config::OutputFormat;
using config::RunConfig;
using nlohmann::json;

// Scientific notation, 9 significant digits: the table format.
std::string sci9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", x);
  return buf;
}

// Shortest exact round-trip representation, for the predict record.
std::string exact17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

OutputFormat parse_format(const std::string& text) {
  return text == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
}

// Writes through `writer` either to the given path or to the fallback
// stream, and reports whether everything was flushed out.
int write_output(const std::string& path, std::ostream& fallback,
                 std::ostream& err,
                 const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(fallback);
    fallback.flush();
    if (!fallback) {
      err << "error: failed writing to standard output\n";
      return 1;
    }
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << path << "'\n";
    return 1;
  }
  writer(file);
  file.flush();
  if (!file) {
    err << "error: failed writing output file '" << path << "'\n";
    return 1;
  }
  return 0;
}

// The mixing-model parameters to evaluate: axion configs are mapped through
// the dictionary at the experiment's field strength.
dynamics::ModelParams resolve_model(const RunConfig& config) {
  if (const auto* fusion = std::get_if<dynamics::ModelParams>(&config.model))
    return *fusion;
  return axion::to_model_params(std::get<axion::AxionParams>(config.model),
                                config.experiment.b_tesla);
}

int do_predict(const std::string& config_path, OutputFormat format,
               const std::string& output_path, std::ostream& out,
               std::ostream& err) {
  const RunConfig config = config::load_run_config(config_path);
  const dynamics::ModelParams params = resolve_model(config);
  const dynamics::Observables obs =
      dynamics::observables(params, exclusion::field_region(config.experiment),
                            config.experiment.lambda_meter);
  const double qed =
      constants::qed_reference_birefringence(config.experiment.b_tesla);

  return write_output(output_path, out, err, [&](std::ostream& os) {
    if (format == OutputFormat::kCsv) {
      os << "p_conversion,rotation_rad,phase_diff_rad,ellipticity_rad,"
            "birefringence,qed_birefringence\n";
      os << exact17(obs.p_conversion) << ',' << exact17(obs.rotation_rad)
         << ',' << exact17(obs.phase_diff_rad) << ','
         << exact17(obs.ellipticity_rad) << ',' << exact17(obs.birefringence)
         << ',' << exact17(qed) << '\n';
    } else {
      json record;
      record["p_conversion"] = obs.p_conversion;
      record["rotation_rad"] = obs.rotation_rad;
      record["phase_diff_rad"] = obs.phase_diff_rad;
      record["ellipticity_rad"] = obs.ellipticity_rad;
      record["birefringence"] = obs.birefringence;
      record["qed_birefringence"] = qed;
      os << record.dump(2) << '\n';
    }
  });
}

int do_scan(const std::string& config_path, const std::string& delta_spec,
            const std::string& beta_spec, OutputFormat format,
            const std::string& output_path, std::ostream& out,
            std::ostream& err) {
  const RunConfig config = config::load_run_config(config_path);
  const std::vector<double> deltas =
      log_grid(parse_grid_spec(delta_spec, "--delta"));
  const std::vector<double> betas =
      log_grid(parse_grid_spec(beta_spec, "--beta"));
  const std::vector<exclusion::ScanRow> rows =
      exclusion::grid_scan(config.experiment, deltas, betas);

  return write_output(output_path, out, err, [&](std::ostream& os) {
    if (format == OutputFormat::kCsv) {
      os << "delta_ev,beta,rotation_rad,ellipticity_rad,birefringence\n";
      for (const auto& row : rows)
        os << sci9(row.delta_ev) << ',' << sci9(row.beta) << ','
           << sci9(row.rotation_rad) << ',' << sci9(row.ellipticity_rad)
           << ',' << sci9(row.birefringence) << '\n';
    } else {
      json table = json::array();
      for (const auto& row : rows)
        table.push_back({{"delta_ev", row.delta_ev},
                         {"beta", row.beta},
                         {"rotation_rad", row.rotation_rad},
                         {"ellipticity_rad", row.ellipticity_rad},
                         {"birefringence", row.birefringence}});
      os << table.dump(2) << '\n';
    }
  });
}

int do_curve(const std::string& config_path, const std::string& kind,
             const std::string& delta_spec, OutputFormat format,
             const std::string& output_path, std::ostream& out,
             std::ostream& err) {
  const RunConfig config = config::load_run_config(config_path);
  const std::vector<double> deltas =
      log_grid(parse_grid_spec(delta_spec, "--delta"));
  const std::vector<exclusion::CurvePoint> points =
      kind == "signal" ? exclusion::signal_curve(config.experiment, deltas)
                       : exclusion::limit_curve(config.experiment, deltas);

  return write_output(output_path, out, err, [&](std::ostream& os) {
    if (format == OutputFormat::kCsv) {
      os << "delta_ev,beta,node_flag\n";
      for (const auto& p : points) {
        os << sci9(p.delta_ev) << ',';
        if (!p.node_flag) os << sci9(p.beta);
        os << ',' << (p.node_flag ? 1 : 0) << '\n';
      }
    } else {
      json table = json::array();
      for (const auto& p : points) {
        json row;
        row["delta_ev"] = p.delta_ev;
        row["beta"] = p.node_flag ? json() : json(p.beta);
        row["predicted_rotation_rad"] =
            p.node_flag ? json() : json(p.predicted_rotation_rad);
        row["node_flag"] = p.node_flag;
        table.push_back(row);
      }
      os << table.dump(2) << '\n';
    }
  });
}

int do_compare(const std::string& fusion_path, const std::string& axion_path,
               const std::string& length_spec, OutputFormat format,
               const std::string& output_path, std::ostream& out,
               std::ostream& err) {
  const RunConfig fusion_config = config::load_run_config(fusion_path);
  const RunConfig axion_config = config::load_run_config(axion_path);
  const auto* fusion = std::get_if<dynamics::ModelParams>(&fusion_config.model);
  if (fusion == nullptr)
    throw ConfigError("--fusion config must carry a delta_ev/beta model");
  const auto* alp = std::get_if<axion::AxionParams>(&axion_config.model);
  if (alp == nullptr)
    throw ConfigError("--axion config must carry an m_a_ev/g_inv_gev/omega_ev model");

  const GridSpec spec = parse_grid_spec(length_spec, "--length");
  if (spec.min < 0.0)
    throw ConfigError("invalid range for --length: min must be >= 0");
  const std::vector<double> lengths = linear_grid(spec);

  const std::vector<axion::ScalingRow> rows = axion::oscillation_scaling_report(
      *alp, *fusion, fusion_config.experiment.b_tesla, lengths);

  return write_output(output_path, out, err, [&](std::ostream& os) {
    if (format == OutputFormat::kCsv) {
      os << "length_m,p_fusion_omega1,p_fusion_omega2,p_alp_omega1,"
            "p_alp_omega2\n";
      for (const auto& row : rows)
        os << sci9(row.length_m) << ',' << sci9(row.p_fusion_omega1) << ','
           << sci9(row.p_fusion_omega2) << ',' << sci9(row.p_alp_omega1)
           << ',' << sci9(row.p_alp_omega2) << '\n';
    } else {
      json table = json::array();
      for (const auto& row : rows)
        table.push_back({{"length_m", row.length_m},
                         {"p_fusion_omega1", row.p_fusion_omega1},
                         {"p_fusion_omega2", row.p_fusion_omega2},
                         {"p_alp_omega1", row.p_alp_omega1},
                         {"p_alp_omega2", row.p_alp_omega2}});
      os << table.dump(2) << '\n';
    }
  });
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text,
                         const std::string& flag_name) {
  GridSpec spec;
  char trailing = '\0';
  const int matched = std::sscanf(text.c_str(), "%lf,%lf,%ld%c", &spec.min,
                                  &spec.max, &spec.count, &trailing);
  if (matched != 3)
    throw ConfigError("invalid grid '" + text + "' for " + flag_name +
                      ": expected min,max,n");
  if (spec.count < 1)
    throw ConfigError("invalid range for " + flag_name + ": count must be >= 1");
  if (!(std::isfinite(spec.min) && std::isfinite(spec.max)) ||
      spec.min >= spec.max)
    throw ConfigError("invalid range for " + flag_name +
                      ": min must be < max and both finite");
  return spec;
}

std::vector<double> log_grid(const GridSpec& spec) {
  if (spec.min <= 0.0)
    throw ConfigError("log-spaced grids require min > 0");
  std::vector<double> points;
  points.reserve(static_cast<size_t>(spec.count));
  if (spec.count == 1) {
    points.push_back(spec.min);
    return points;
  }
  const double log_min = std::log(spec.min);
  const double log_max = std::log(spec.max);
  for (long i = 0; i < spec.count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(spec.count - 1);
    points.push_back(std::exp(log_min + t * (log_max - log_min)));
  }
  points.front() = spec.min;
  points.back() = spec.max;
  return points;
}

std::vector<double> linear_grid(const GridSpec& spec) {
  std::vector<double> points;
  points.reserve(static_cast<size_t>(spec.count));
  if (spec.count == 1) {
    points.push_back(spec.min);
    return points;
  }
  for (long i = 0; i < spec.count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(spec.count - 1);
    points.push_back(spec.min + t * (spec.max - spec.min));
  }
  points.front() = spec.min;
  points.back() = spec.max;
  return points;
}

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Magnetic-field induced vacuum dichroism and birefringence "
               "from two-level photon mixing"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::string format_text = "csv";
  std::string kind;
  std::string fusion_path;
  std::string axion_path;
  std::string delta_spec;
  std::string beta_spec;
  std::string length_spec;

  const auto add_output_options = [&](CLI::App* cmd) {
    cmd->add_option("--output", output_path,
                    "output file path (default: standard output)");
    cmd->add_option("--format", format_text, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* predict =
      app.add_subcommand("predict", "observables for one configuration");
  predict->add_option("--config", config_path, "run config (JSON)")->required();
  add_output_options(predict);

  CLI::App* scan = app.add_subcommand(
      "scan", "observables over a log-spaced (delta, beta) grid");
  scan->add_option("--config", config_path, "run config (JSON)")->required();
  scan->add_option("--delta", delta_spec, "delta grid min,max,n (eV, log)")
      ->required();
  scan->add_option("--beta", beta_spec, "beta grid min,max,n (log)")->required();
  add_output_options(scan);

  CLI::App* curve = app.add_subcommand(
      "curve", "signal or limit curve in the (delta, beta) plane");
  curve->add_option("--config", config_path, "run config (JSON)")->required();
  curve->add_option("--kind", kind, "curve kind")
      ->required()
      ->check(CLI::IsMember({"signal", "limit"}));
  curve->add_option("--delta", delta_spec, "delta grid min,max,n (eV, log)")
      ->required();
  add_output_options(curve);

  CLI::App* compare = app.add_subcommand(
      "compare", "mixing-model vs ALP oscillation scaling with photon energy");
  compare->add_option("--fusion", fusion_path, "run config with delta_ev/beta model")
      ->required();
  compare->add_option("--axion", axion_path, "run config with ALP model")
      ->required();
  compare->add_option("--length", length_spec, "length grid min,max,n (m, linear)")
      ->required();
  add_output_options(compare);

  std::vector<std::string> full_args;
  full_args.reserve(args.size() + 1);
  full_args.emplace_back("vmb");
  full_args.insert(full_args.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(full_args.size());
  for (auto& arg : full_args) argv.push_back(arg.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  const OutputFormat format = parse_format(format_text);
  try {
    if (predict->parsed())
      return do_predict(config_path, format, output_path, out, err);
    if (scan->parsed())
      return do_scan(config_path, delta_spec, beta_spec, format, output_path,
                     out, err);
    if (curve->parsed())
      return do_curve(config_path, kind, delta_spec, format, output_path, out,
                      err);
    return do_compare(fusion_path, axion_path, length_spec, format,
                      output_path, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace vmb::commands

// Command-line surface: predict / scan / curve / compare, reading JSON run
// configs and emitting CSV or JSON tables. All diagnostics go to the error
// stream; data files never contain diagnostics; the exit status is 0 iff the
// output was fully written.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vmb::commands {

// "min,max,n" as passed to --delta / --beta / --length.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  long count = 0;
};

// Throws config::ConfigError on malformed text or invalid ranges
// (min >= max or count < 1); flag_name is used in the diagnostic.
GridSpec parse_grid_spec(const std::string& text, const std::string& flag_name);

// Log-spaced grid (endpoints exact, count 1 -> {min}); min must be > 0.
std::vector<double> log_grid(const GridSpec& spec);

// Linearly spaced grid (endpoints exact, count 1 -> {min}).
std::vector<double> linear_grid(const GridSpec& spec);

// Dispatches one invocation; args exclude the program name, e.g.
//   {"scan", "--config", "cfg.json", "--delta", "1e-9,1e-6,50",
//    "--beta", "1e-12,1e-6,50"}.
// Returns the process exit status.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace vmb::commands

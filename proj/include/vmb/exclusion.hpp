// Parameter-space engine over the (Delta, beta) plane: predicted rotation
// signals for a given experiment, signal curves (parameter pairs reproducing
// a measured rotation) and limit curves (boundaries excluded by a null
// result), plus bulk grid scans behind signal/limit plots.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "vmb/dynamics.hpp"

namespace vmb::exclusion {

// A measured polarization-plane rotation with its 1-sigma uncertainty.
struct SignalMeasurement {
  double observed_rotation_rad = 0.0;
  double sigma_rad = 0.0;
};

// A null result: 2-sigma upper bound on the rotation.
struct LimitMeasurement {
  double limit_rotation_2sigma_rad = 0.0;
};

using Measurement = std::variant<SignalMeasurement, LimitMeasurement>;

// One polarimetric experiment: field region, optics and the measurement.
struct ExperimentConfig {
  std::string name;
  double b_tesla = 0.0;
  double l_meter = 0.0;
  double lambda_meter = 0.0;
  int passes = 1;
  // Either the angle (radians, in [0, pi/2]) between the linear polarization
  // and the field for transverse propagation, or an exact axis geometry.
  std::variant<double, spin::PolarizationSpec> geometry = 0.0;
  Measurement measurement = SignalMeasurement{};
};

void validate(const ExperimentConfig& config);

dynamics::FieldRegion field_region(const ExperimentConfig& config);

// A point of a signal or limit curve. node_flag marks grid abscissas where
// no finite beta reproduces the target: either the oscillation phase
// Delta tau / 2 hbar sits on a multiple of pi (the perturbative probability
// vanishes identically) or the target exceeds the reachable rotation inside
// the search bracket. Flagged points carry beta = predicted = NaN.
struct CurvePoint {
  double delta_ev = 0.0;
  double beta = 0.0;
  double predicted_rotation_rad = 0.0;
  bool node_flag = false;
};

struct ScanRow {
  double delta_ev = 0.0;
  double beta = 0.0;
  double rotation_rad = 0.0;
  double ellipticity_rad = 0.0;
  double birefringence = 0.0;
};

// Total measured rotation predicted for the experiment,
// passes * (geometry/2) * P(delta, beta, B, L/c).
double predicted_rotation(const dynamics::ModelParams& params,
                          const ExperimentConfig& config);

// For each Delta of the grid, the smallest beta > 0 whose predicted rotation
// equals the target: coarse logarithmic scan over beta in [1e-30, 1e10]
// (100 points per decade) bracketing the first upward crossing, then
// bisection to 1e-12 relative in beta. The curve is defined by the minimal
// beta: with oscillatory probabilities several couplings can reproduce a
// target, and an exclusion plot is read at the smallest one.
//
// signal_curve requires a SignalMeasurement (target = observed rotation),
// limit_curve a LimitMeasurement (target = 2-sigma bound); mismatches and
// empty grids throw std::invalid_argument.
std::vector<CurvePoint> signal_curve(const ExperimentConfig& config,
                                     const std::vector<double>& delta_grid_ev);

std::vector<CurvePoint> limit_curve(const ExperimentConfig& config,
                                    const std::vector<double>& delta_grid_ev);

// Full outer product of the two grids, rows in row-major (delta-outer)
// order. Pure evaluation, deterministic.
std::vector<ScanRow> grid_scan(const ExperimentConfig& config,
                               const std::vector<double>& delta_grid_ev,
                               const std::vector<double>& beta_grid);

}  // namespace vmb::exclusion

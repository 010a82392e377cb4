#include "vmb/axion.hpp"

#include <cmath>
#include <stdexcept>

#include "vmb/constants.hpp"

namespace vmb::axion {

namespace {

double g_in_inverse_ev(const AxionParams& params) {
  return params.g_inv_gev * 1e-9;
}

}  // namespace

void validate(const AxionParams& params) {
  if (!(std::isfinite(params.m_a_ev) && params.m_a_ev > 0.0))
    throw std::invalid_argument("m_a_ev must be finite and > 0");
  if (!(std::isfinite(params.g_inv_gev) && params.g_inv_gev >= 0.0))
    throw std::invalid_argument("g_inv_gev must be finite and >= 0");
  if (!(std::isfinite(params.omega_ev) && params.omega_ev > 0.0))
    throw std::invalid_argument("omega_ev must be finite and > 0");
}

dynamics::ModelParams to_model_params(const AxionParams& params,
                                      double b_tesla) {
  validate(params);
  if (!std::isfinite(b_tesla))
    throw std::invalid_argument("b_tesla must be finite");
  dynamics::ModelParams out;
  out.delta_ev =
      kMassTermFactor * params.m_a_ev * params.m_a_ev / params.omega_ev;
  // beta_eff mu_B B = kCouplingTermFactor g B_nat for every B, so the field
  // strength drops out of beta_eff.
  out.beta = kCouplingTermFactor * g_in_inverse_ev(params) *
             constants::kTeslaToEv2 / constants::kBohrMagnetonEvPerT;
  return out;
}

AxionParams to_axion_params(const dynamics::ModelParams& params,
                            double omega_ev) {
  AxionParams out;
  out.omega_ev = omega_ev;
  out.m_a_ev = std::sqrt(params.delta_ev * omega_ev / kMassTermFactor);
  out.g_inv_gev = params.beta * constants::kBohrMagnetonEvPerT /
                  (kCouplingTermFactor * constants::kTeslaToEv2) * 1e9;
  return out;
}

double axion_oscillation_wavenumber(const AxionParams& params,
                                    double b_tesla) {
  const double q = 0.5 * params.m_a_ev * params.m_a_ev / params.omega_ev;
  const double gb = g_in_inverse_ev(params) * constants::tesla_to_ev2(b_tesla);
  return std::hypot(q, gb);
}

double axion_conversion_probability(const AxionParams& params, double b_tesla,
                                    double l_meter) {
  validate(params);
  const double q = 0.5 * params.m_a_ev * params.m_a_ev / params.omega_ev;
  const double gb = g_in_inverse_ev(params) * constants::tesla_to_ev2(b_tesla);
  const double delta_bar = std::hypot(q, gb);
  if (delta_bar == 0.0) return 0.0;
  const double sin2t = gb / delta_bar;
  const double phase =
      0.5 * delta_bar * constants::meter_to_inverse_ev(l_meter);
  const double amp = sin2t * std::sin(phase);
  return amp * amp;
}

std::vector<ScalingRow> oscillation_scaling_report(
    const AxionParams& axion, const dynamics::ModelParams& fusion,
    double b_tesla, const std::vector<double>& length_grid_m) {
  validate(axion);
  dynamics::validate(fusion);

  AxionParams axion_2w = axion;
  axion_2w.omega_ev = 2.0 * axion.omega_ev;

  std::vector<ScalingRow> rows;
  rows.reserve(length_grid_m.size());
  for (double l : length_grid_m) {
    if (!(std::isfinite(l) && l >= 0.0))
      throw std::invalid_argument("length grid entries must be finite, >= 0");
    const double tau = l / constants::kSpeedOfLightMPerS;
    ScalingRow row;
    row.length_m = l;
    row.p_fusion_omega1 =
        dynamics::conversion_probability(fusion, b_tesla, tau);
    row.p_fusion_omega2 =
        dynamics::conversion_probability(fusion, b_tesla, tau);
    row.p_alp_omega1 = axion_conversion_probability(axion, b_tesla, l);
    row.p_alp_omega2 = axion_conversion_probability(axion_2w, b_tesla, l);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vmb::axion

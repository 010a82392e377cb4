#include "vmb/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vmb/constants.hpp"

namespace vmb::dynamics {

namespace {

using spin::Complex;
using spin::StateVector;

constexpr double kPi = std::numbers::pi;

// Unperturbed levels of the (|1,0>, |0,0>) block, eV.
double level_e1(double delta_ev) { return -0.25 * delta_ev; }
double level_e0(double delta_ev) { return 0.75 * delta_ev; }

// x - sin(x), stable against cancellation for small x.
double x_minus_sin(double x) {
  const double ax = std::abs(x);
  if (ax < 0.1) {
    const double x2 = x * x;
    // (x^3/6) (1 - x^2/20 + x^4/840 - x^6/60480 + x^8/6652800)
    double poly = 1.0 + x2 * (-1.0 / 20.0 +
                  x2 * (1.0 / 840.0 +
                  x2 * (-1.0 / 60480.0 + x2 * (1.0 / 6652800.0))));
    return x * x2 / 6.0 * poly;
  }
  return x - std::sin(x);
}

struct Block2x2 {
  Complex a, b, c, d;  // [[a, b], [c, d]]

  Block2x2 operator*(const Block2x2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

}  // namespace

void validate(const ModelParams& params) {
  if (!(std::isfinite(params.delta_ev) && params.delta_ev >= 0.0))
    throw std::invalid_argument("delta_ev must be finite and >= 0");
  if (!(std::isfinite(params.beta) && params.beta >= 0.0))
    throw std::invalid_argument("beta must be finite and >= 0");
}

void validate(const FieldRegion& region) {
  if (!(std::isfinite(region.b_tesla) && region.b_tesla >= 0.0))
    throw std::invalid_argument("b_tesla must be finite and >= 0");
  if (!(std::isfinite(region.l_meter) && region.l_meter > 0.0))
    throw std::invalid_argument("l_meter must be finite and > 0");
  if (region.passes < 1)
    throw std::invalid_argument("passes must be >= 1");
  if (const auto* spec = std::get_if<spin::PolarizationSpec>(&region.geometry))
    spin::validate(*spec);
  else if (!std::isfinite(std::get<double>(region.geometry)))
    throw std::invalid_argument("polarization angle must be finite");
}

double coupling_ev(const ModelParams& params, double b_tesla) {
  return params.beta * constants::kBohrMagnetonEvPerT * b_tesla;
}

double mixing_angle(const ModelParams& params, double b_tesla) {
  const double v = coupling_ev(params, b_tesla);
  return 0.5 * std::atan2(2.0 * v, params.delta_ev);
}

MixedEigensystem eigensystem(const ModelParams& params, double b_tesla) {
  const double delta = params.delta_ev;
  const double v = coupling_ev(params, b_tesla);
  MixedEigensystem sys;
  sys.theta_rad = 0.5 * std::atan2(2.0 * v, delta);
  sys.delta_bar_ev = std::hypot(delta, 2.0 * v);
  const double mean = 0.25 * delta;  // (E1 + E0) / 2
  sys.e_bar_1_ev = mean - 0.5 * sys.delta_bar_ev;
  sys.e_bar_0_ev = mean + 0.5 * sys.delta_bar_ev;
  return sys;
}

StateVector evolve(const StateVector& state, const ModelParams& params,
                   double b_tesla, double tau_s) {
  const double delta = params.delta_ev;
  const double v = coupling_ev(params, b_tesla);
  const double inv_hbar = 1.0 / constants::kHbarEvS;

  StateVector out = state;

  // Decoupled |1,+/-1> components: free phase of the photon level E1.
  const Complex phase_pm =
      std::polar(1.0, -level_e1(delta) * tau_s * inv_hbar);
  out[spin::kIdxMPlus] = phase_pm * state[spin::kIdxMPlus];
  out[spin::kIdxMMinus] = phase_pm * state[spin::kIdxMMinus];

  // Coupled block.
  const double delta_bar = std::hypot(delta, 2.0 * v);
  const double mean = 0.25 * delta;
  const Complex phase_mean = std::polar(1.0, -mean * tau_s * inv_hbar);
  double cos2t = 1.0;
  double sin2t = 0.0;
  if (delta_bar > 0.0) {
    cos2t = delta / delta_bar;
    sin2t = 2.0 * v / delta_bar;
  }
  const double pb = 0.5 * delta_bar * tau_s * inv_hbar;
  const double cp = std::cos(pb);
  const double sp = std::sin(pb);

  const Complex u11 = phase_mean * Complex{cp, cos2t * sp};
  const Complex u22 = phase_mean * Complex{cp, -cos2t * sp};
  const Complex u12 = phase_mean * Complex{0.0, -sin2t * sp};

  const Complex a0 = state[spin::kIdxMZero];
  const Complex as = state[spin::kIdxSinglet];
  out[spin::kIdxMZero] = u11 * a0 + u12 * as;
  out[spin::kIdxSinglet] = u12 * a0 + u22 * as;
  return out;
}

double conversion_probability(const ModelParams& params, double b_tesla,
                              double tau_s) {
  const double delta = params.delta_ev;
  const double v = coupling_ev(params, b_tesla);
  const double delta_bar = std::hypot(delta, 2.0 * v);
  if (delta_bar == 0.0) return 0.0;
  const double sin2t = 2.0 * v / delta_bar;
  const double s = std::sin(0.5 * delta_bar * tau_s / constants::kHbarEvS);
  const double amp = sin2t * s;
  return amp * amp;
}

double conversion_probability_small_field(const ModelParams& params,
                                          double b_tesla, double tau_s) {
  const double v = coupling_ev(params, b_tesla);
  const double w = v * tau_s / constants::kHbarEvS;
  const double phi = 0.5 * params.delta_ev * tau_s / constants::kHbarEvS;
  const double sinc = (phi == 0.0) ? 1.0 : std::sin(phi) / phi;
  const double amp = w * sinc;
  return amp * amp;
}

double phase_difference(const ModelParams& params, double b_tesla,
                        double tau_s) {
  const double delta = params.delta_ev;
  const double v = coupling_ev(params, b_tesla);
  if (v == 0.0) return 0.0;      // theta = 0: the bracket equals the free phase
  if (delta == 0.0) return 0.0;  // cos(2 theta) = 0 and Delta tau/2hbar = 0

  const double delta_bar = std::hypot(delta, 2.0 * v);
  const double cos2t = delta / delta_bar;
  // 1 - cos(2 theta), computed without cancellation.
  const double eps = 4.0 * v * v / (delta_bar * (delta_bar + delta));

  const double x = 0.5 * delta_bar * tau_s / constants::kHbarEvS;
  const double y = std::remainder(x, kPi);  // in [-pi/2, pi/2]
  const double sy = std::sin(y);
  const double cy = std::cos(y);
  const double w = sy * cy / (cy * cy + cos2t * sy * sy);
  return eps * x - std::atan(eps * w);
}

double phase_difference_small_mixing(const ModelParams& params,
                                     double b_tesla, double tau_s) {
  if (params.delta_ev == 0.0)
    throw std::domain_error(
        "phase_difference_small_mixing is undefined at delta = 0");
  const double r = coupling_ev(params, b_tesla) / params.delta_ev;
  const double s = params.delta_ev * tau_s / constants::kHbarEvS;
  return r * r * x_minus_sin(s);
}

StateVector numeric_oracle(const StateVector& state, const ModelParams& params,
                           double b_tesla, double tau_s, long n_steps) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  const double delta = params.delta_ev;
  const double v = coupling_ev(params, b_tesla);
  const double dt = tau_s / static_cast<double>(n_steps);
  const double scale = -dt / constants::kHbarEvS;  // exponent factor

  // M = -i H dt / hbar for the 2x2 block.
  const Block2x2 m{Complex{0.0, scale * level_e1(delta)},
                   Complex{0.0, scale * v},
                   Complex{0.0, scale * v},
                   Complex{0.0, scale * level_e0(delta)}};

  // One exact small step: exp(M) by plain Taylor series. With
  // ||M|| <= 0.1 sixteen terms reach ~1e-32, far below accumulation error.
  Block2x2 step{Complex{1.0, 0.0}, Complex{0.0, 0.0},
                Complex{0.0, 0.0}, Complex{1.0, 0.0}};
  Block2x2 term = step;
  for (int k = 1; k <= 16; ++k) {
    term = term * m;
    const double inv_k = 1.0 / static_cast<double>(k);
    term.a *= inv_k; term.b *= inv_k; term.c *= inv_k; term.d *= inv_k;
    step.a += term.a; step.b += term.b; step.c += term.c; step.d += term.d;
  }

  // The summed step is unitary only to ~1 ulp; that bias compounds linearly
  // over millions of applications. One Newton-Schulz polar iteration,
  // U <- U (3I - U^dag U)/2, pushes the deviation to second order.
  {
    const Block2x2 dag{std::conj(step.a), std::conj(step.c),
                       std::conj(step.b), std::conj(step.d)};
    Block2x2 gram = dag * step;
    gram.a = Complex{3.0, 0.0} - gram.a;
    gram.b = -gram.b;
    gram.c = -gram.c;
    gram.d = Complex{3.0, 0.0} - gram.d;
    step = step * gram;
    step.a *= 0.5; step.b *= 0.5; step.c *= 0.5; step.d *= 0.5;
  }

  Complex a0 = state[spin::kIdxMZero];
  Complex as = state[spin::kIdxSinglet];
  const double block_norm0 = std::norm(a0) + std::norm(as);
  for (long i = 0; i < n_steps; ++i) {
    const Complex n0 = step.a * a0 + step.b * as;
    const Complex ns = step.c * a0 + step.d * as;
    a0 = n0;
    as = ns;
    // The block evolution is norm-preserving; rescaling away the residual
    // rounding drift keeps long products unitary to ~1e-15 at any n_steps.
    if ((i & 0x3ff) == 0x3ff && block_norm0 > 0.0) {
      const double cur = std::norm(a0) + std::norm(as);
      const double scale = std::sqrt(block_norm0 / cur);
      a0 *= scale;
      as *= scale;
    }
  }

  StateVector out = state;
  const Complex phase_pm =
      std::polar(1.0, -level_e1(delta) * tau_s / constants::kHbarEvS);
  out[spin::kIdxMPlus] = phase_pm * state[spin::kIdxMPlus];
  out[spin::kIdxMMinus] = phase_pm * state[spin::kIdxMMinus];
  out[spin::kIdxMZero] = a0;
  out[spin::kIdxSinglet] = as;
  return out;
}

namespace {

// Field-parallel and perpendicular amplitude projections of the linear
// polarization. Axis geometries are exact (0 or 1); the decoupled
// configurations therefore null the observables exactly.
struct Projections {
  double parallel = 0.0;
  double perpendicular = 0.0;
};

Projections projections(const FieldRegion& region) {
  if (const auto* spec =
          std::get_if<spin::PolarizationSpec>(&region.geometry)) {
    spin::validate(*spec);
    if (spec->propagation == spin::Axis::kZ) return {0.0, 1.0};
    if (spec->polarization == spin::Axis::kZ) return {1.0, 0.0};
    return {0.0, 1.0};
  }
  const double angle = std::get<double>(region.geometry);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

Observables observables(const ModelParams& params, const FieldRegion& region,
                        double lambda_m) {
  validate(params);
  validate(region);
  if (!(std::isfinite(lambda_m) && lambda_m > 0.0))
    throw std::invalid_argument("lambda_m must be finite and > 0");

  const double tau = region.l_meter / constants::kSpeedOfLightMPerS;
  const Projections proj = projections(region);
  const double geometry = 2.0 * proj.parallel * proj.perpendicular;

  const double p_parallel = conversion_probability(params, region.b_tesla, tau);
  const double dphi_parallel = phase_difference(params, region.b_tesla, tau);

  Observables obs;
  obs.p_conversion = geometry * p_parallel;
  obs.phase_diff_rad = geometry * dphi_parallel;
  const double n_passes = static_cast<double>(region.passes);
  obs.rotation_rad = n_passes * 0.5 * obs.p_conversion;
  obs.ellipticity_rad = n_passes * 0.5 * obs.phase_diff_rad;
  obs.birefringence =
      0.5 * obs.phase_diff_rad * lambda_m / (kPi * region.l_meter);
  return obs;
}

}  // namespace vmb::dynamics

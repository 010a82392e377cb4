// Two-level mixing of the photon triplet |1,0> with its scalar partner |0,0>
// in a static magnetic field, and the optical observables it induces on a
// linearly polarized beam: conversion probability (dichroism, seen as an
// apparent rotation of the polarization plane), field-induced phase
// difference (ellipticity and apparent birefringence).
//
// The interaction couples only <1,0|V|0,0> = beta * mu_B * B, so the problem
// reduces to the 2x2 block
//
//     H = [ E1   V  ]      E1 = -Delta/4,  E0 = +3 Delta/4,
//         [ V    E0 ]      V  = beta * mu_B * B            (all in eV)
//
// diagonalized by the mixing angle tan(2 theta) = 2 V / Delta with the
// dressed splitting Delta_bar = sqrt(Delta^2 + (2V)^2). Everything here is
// evaluated through the dimensionless groups u = 2V/Delta and
// phi = Delta * tau / (2 hbar), which stay finite in the Delta -> 0 and
// B -> 0 limits where the textbook forms overflow.

#pragma once

#include <complex>
#include <variant>

#include "vmb/spin_algebra.hpp"

namespace vmb::dynamics {

// Free parameters of the mixing model: the zero-field splitting Delta
// between the photon and its scalar partner, and the dimensionless
// magnetic-moment factor beta of the constituents.
struct ModelParams {
  double delta_ev = 0.0;
  double beta = 0.0;
};

// Throws std::invalid_argument on negative or non-finite parameters.
void validate(const ModelParams& params);

// A magnetic field region traversed by the beam. The geometry is either a
// fixed-axis PolarizationSpec or the angle (radians) between the linear
// polarization and the field for transverse propagation.
struct FieldRegion {
  double b_tesla = 0.0;
  double l_meter = 0.0;
  int passes = 1;
  std::variant<spin::PolarizationSpec, double> geometry =
      spin::PolarizationSpec{};
};

void validate(const FieldRegion& region);

struct MixedEigensystem {
  double theta_rad = 0.0;      // mixing angle, in [0, pi/4]
  double e_bar_1_ev = 0.0;     // dressed lower level (photon-like)
  double e_bar_0_ev = 0.0;     // dressed upper level (scalar-like)
  double delta_bar_ev = 0.0;   // e_bar_0 - e_bar_1
};

struct Observables {
  double p_conversion = 0.0;     // geometry-weighted conversion probability
  double rotation_rad = 0.0;     // apparent polarization-plane rotation
  double phase_diff_rad = 0.0;   // geometry-weighted phase difference
  double ellipticity_rad = 0.0;  // induced ellipticity
  double birefringence = 0.0;    // apparent n_par - n_perp
};

// Off-diagonal element beta * mu_B * B in eV.
double coupling_ev(const ModelParams& params, double b_tesla);

// theta = atan2(2 beta mu_B B, Delta) / 2, in [0, pi/4]. Continuous at
// Delta = 0, where it takes the maximal-mixing value pi/4 for B > 0.
double mixing_angle(const ModelParams& params, double b_tesla);

// Dressed levels E_bar = Delta/4 -/+ Delta_bar/2, with
// Delta_bar = hypot(Delta, 2V); reduces to the unperturbed pair
// (-Delta/4, 3 Delta/4) at B = 0 and to a pure Zeeman-like splitting
// 2 beta mu_B B at Delta = 0.
MixedEigensystem eigensystem(const ModelParams& params, double b_tesla);

// Evolves a state for a time tau (seconds) in a constant field B. The
// |1,+1>, |1,-1> amplitudes pick up the free phase exp(-i E1 tau/hbar);
// the (|1,0>, |0,0>) block evolves with the exact 2x2 propagator
//   exp(-i avg tau/hbar) [cos(pb) + i cos2th sin(pb)   -i sin2th sin(pb)]
//                        [-i sin2th sin(pb)   cos(pb) - i cos2th sin(pb)]
// where avg = Delta/4 and pb = Delta_bar tau / (2 hbar). Unitary, so the
// norm is preserved.
spin::StateVector evolve(const spin::StateVector& state,
                         const ModelParams& params, double b_tesla,
                         double tau_s);

// P(photon -> scalar) for the field-parallel polarization component:
//   P = sin^2(2 theta) sin^2(Delta_bar tau / 2 hbar)
// with sin(2 theta) = 2V / Delta_bar. Exact two-level result.
double conversion_probability(const ModelParams& params, double b_tesla,
                              double tau_s);

// Perturbative limit 2 beta mu_B B << Delta:
//   P ~= (beta mu_B B tau / hbar)^2 sinc^2(Delta tau / 2 hbar),
// which loses its Delta dependence once Delta tau / 2 hbar << 1.
double conversion_probability_small_field(const ModelParams& params,
                                          double b_tesla, double tau_s);

// Field-induced phase difference between the field-parallel and
// field-perpendicular photon amplitudes,
//   dphi = arctan[cos(2 theta) tan(Delta_bar tau / 2 hbar)] - Delta tau/2hbar,
// with the arctan continued continuously in tau from dphi(0) = 0 (one pi per
// half-period of the tangent). Evaluated in the cancellation-free form
//   dphi = (1 - cos2th) * x - atan((1 - cos2th) * w),
//   w = sin(y) cos(y) / (cos^2(y) + cos2th sin^2(y)),  y = remainder(x, pi),
// which is an exact algebraic rewriting valid on every branch.
// Non-negative for all tau >= 0.
double phase_difference(const ModelParams& params, double b_tesla,
                        double tau_s);

// Leading small-mixing expansion,
//   dphi ~= (beta mu_B B / Delta)^2 (Delta tau/hbar - sin(Delta tau/hbar)).
// Delta = 0 throws std::domain_error (the expansion is undefined there;
// use phase_difference instead).
double phase_difference_small_mixing(const ModelParams& params,
                                     double b_tesla, double tau_s);

// Independent brute-force check of evolve(): composes n_steps exact
// small-step propagators of the 2x2 block Hamiltonian, each obtained from a
// Taylor expansion of exp(-i H dt / hbar) carried to machine precision.
// Converges to evolve() as n_steps grows; it never reuses the mixing-angle
// closed form.
spin::StateVector numeric_oracle(const spin::StateVector& state,
                                 const ModelParams& params, double b_tesla,
                                 double tau_s, long n_steps);

// Optical observables for one beam traversal setup.
//
// The linear polarization is split into field-parallel and perpendicular
// amplitudes (cos a, sin a). Only the parallel one converts (probability P)
// and is retarded (phase dphi); the interaction is even in the field, so
// every polarization-plane signal scales with the product of the two
// projections. Rotation and ellipticity are normalized to the 45-degree
// configuration, where they equal P/2 and dphi/2 per pass:
//   p_conversion = sin(2a) P          rotation    = passes * p_conversion/2
//   phase_diff   = sin(2a) dphi       ellipticity = passes * phase_diff/2
//   birefringence = (single-pass ellipticity) * lambda / (pi L)
// Axis geometries map to exact projections, so the decoupled configurations
// (propagation along the field, or polarization perpendicular to it) give
// identically zero observables.
Observables observables(const ModelParams& params, const FieldRegion& region,
                        double lambda_m);

}  // namespace vmb::dynamics

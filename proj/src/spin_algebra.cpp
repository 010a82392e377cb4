#include "vmb/spin_algebra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vmb::spin {

namespace {
constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;
}

double StateVector::norm_squared() const {
  double n = 0.0;
  for (const auto& a : amplitudes) n += std::norm(a);
  return n;
}

void validate(const PolarizationSpec& spec) {
  if (spec.polarization == spec.propagation)
    throw std::invalid_argument(
        "polarization must be orthogonal to the propagation direction");
  if (spec.propagation == Axis::kY) {
    if (spec.polarization != Axis::kX && spec.polarization != Axis::kZ)
      throw std::invalid_argument(
          "propagation along y supports polarization along x or z only");
  } else if (spec.propagation == Axis::kZ) {
    if (spec.polarization != Axis::kX)
      throw std::invalid_argument(
          "propagation along z supports polarization along x only");
  } else {
    throw std::invalid_argument("propagation must be along y or z");
  }
}

double wigner_small_d(int m_row, int m_col, double theta) {
  if (m_row < -1 || m_row > 1 || m_col < -1 || m_col > 1)
    throw std::invalid_argument("spin-1 Wigner d: m indices must be in {-1,0,1}");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (m_col == 1) {
    if (m_row == 1) return 0.5 * (1.0 + c);
    if (m_row == 0) return kHalfSqrt2 * s;
    return 0.5 * (1.0 - c);
  }
  if (m_col == 0) {
    if (m_row == 1) return -kHalfSqrt2 * s;
    if (m_row == 0) return c;
    return kHalfSqrt2 * s;
  }
  // m_col == -1
  if (m_row == 1) return 0.5 * (1.0 - c);
  if (m_row == 0) return -kHalfSqrt2 * s;
  return 0.5 * (1.0 + c);
}

StateVector apply_triplet_rotation(const StateVector& state, double theta) {
  StateVector out;
  static constexpr int kM[3] = {1, 0, -1};
  for (int r = 0; r < 3; ++r) {
    Complex acc{0.0, 0.0};
    for (int c = 0; c < 3; ++c)
      acc += wigner_small_d(kM[r], kM[c], theta) * state[c];
    out[r] = acc;
  }
  out[kIdxSinglet] = state[kIdxSinglet];
  return out;
}

StateVector rotate_y_to_z(const StateVector& y_basis_state) {
  return apply_triplet_rotation(y_basis_state, std::numbers::pi / 2.0);
}

StateVector rotate_z_to_y(const StateVector& z_basis_state) {
  return apply_triplet_rotation(z_basis_state, -std::numbers::pi / 2.0);
}

StateVector polarization_state(const PolarizationSpec& spec) {
  validate(spec);
  StateVector state;
  if (spec.propagation == Axis::kY) {
    if (spec.polarization == Axis::kZ) {
      // -(1/sqrt2)(|1,M_y=1> - |1,M_y=-1>) rotated to the z basis: -|1,0>.
      state[kIdxMZero] = Complex{-1.0, 0.0};
    } else {
      state[kIdxMPlus] = Complex{kHalfSqrt2, 0.0};
      state[kIdxMMinus] = Complex{0.0, kHalfSqrt2};
    }
  } else {
    // Propagation along the field: helicity states |1,M_z=+/-1| only.
    state[kIdxMPlus] = Complex{-kHalfSqrt2, 0.0};
    state[kIdxMMinus] = Complex{kHalfSqrt2, 0.0};
  }
  return state;
}

}  // namespace vmb::spin

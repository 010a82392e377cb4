// Spin-1 (+ singlet) state algebra: the four-dimensional state space spanned
// by the z-quantized kets {|1,1>, |1,0>, |1,-1>, |0,0>}, Wigner d-function
// rotations between quantization axes, and construction of photon
// polarization states as spin states.
//
// Geometry is fixed: the magnetic field defines Oz. Light propagates along
// Oy (transverse geometry) or Oz (longitudinal, no effect). Linear
// polarizations are labelled by the lab axis of the electric field.

#pragma once

#include <array>
#include <complex>

namespace vmb::spin {

using Complex = std::complex<double>;

// Indices into StateVector::amplitudes, z-quantized basis order.
inline constexpr int kIdxMPlus = 0;   // |S=1, M_z=+1>
inline constexpr int kIdxMZero = 1;   // |S=1, M_z= 0>
inline constexpr int kIdxMMinus = 2;  // |S=1, M_z=-1>
inline constexpr int kIdxSinglet = 3; // |S=0, M_z= 0>

struct StateVector {
  std::array<Complex, 4> amplitudes{};

  Complex& operator[](int i) { return amplitudes[static_cast<size_t>(i)]; }
  const Complex& operator[](int i) const {
    return amplitudes[static_cast<size_t>(i)];
  }

  double norm_squared() const;
};

enum class Axis { kX, kY, kZ };

// Propagation along Oy or Oz, polarization orthogonal to it. The field is
// always along Oz, so (propagation=y, polarization=z) is the field-parallel
// configuration and (propagation=y, polarization=x) the field-perpendicular
// one. For propagation along Oz any transverse polarization stays in the
// span of |1,+1>, |1,-1> and decouples from the field.
struct PolarizationSpec {
  Axis propagation = Axis::kY;
  Axis polarization = Axis::kZ;
};

// Throws std::invalid_argument when the polarization is not orthogonal to
// the propagation direction or an unsupported axis pair is requested.
void validate(const PolarizationSpec& spec);

// Spin-1 Wigner small-d matrix element d^1_{m_row, m_col}(theta):
//   d_{1,1} = (1+cos)/2   d_{1,0} = -sin/sqrt2   d_{1,-1} = (1-cos)/2
//   d_{0,1} = sin/sqrt2   d_{0,0} = cos          d_{0,-1} = -sin/sqrt2
//   d_{-1,1} = (1-cos)/2  d_{-1,0} = sin/sqrt2   d_{-1,-1} = (1+cos)/2
// m outside {-1, 0, 1} throws std::invalid_argument.
double wigner_small_d(int m_row, int m_col, double theta);

// Change of basis |S,M_y> -> |S,M_z> using
//   |S, M_y> = sum_{M_z} |S, M_z> d^S_{M_z, M_y}(pi/2).
// Input amplitudes are ordered over (|1,M_y=1>, |1,M_y=0>, |1,M_y=-1>,
// |0,0>); the singlet amplitude is axis-independent.
StateVector rotate_y_to_z(const StateVector& y_basis_state);

// Inverse of rotate_y_to_z.
StateVector rotate_z_to_y(const StateVector& z_basis_state);

// Rotates the triplet block by d^1(theta) (singlet untouched):
//   out_{m'} = sum_m d^1_{m',m}(theta) in_m.
StateVector apply_triplet_rotation(const StateVector& state, double theta);

// The photon spin state of a linearly polarized beam:
//   (prop=y, pol=z) -> -|1,0>                    couples to the field
//   (prop=y, pol=x) -> (|1,1> + i|1,-1>)/sqrt2   decoupled
//   (prop=z, pol=x) -> (-|1,1> + |1,-1>)/sqrt2   decoupled
// The relative phase inside the decoupled doublet is a convention; every
// observable in this library depends only on the |1,0> projection.
StateVector polarization_state(const PolarizationSpec& spec);

}  // namespace vmb::spin

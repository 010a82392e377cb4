// Physical constants (CODATA 2018) and unit conversions between SI,
// electronvolt and natural (Heaviside-Lorentz, hbar = c = 1) units.
// Single source of truth for hbar, mu_B and c; everything else in the
// library is derived from the values pinned here.

#pragma once

#include <cmath>

namespace vmb::constants {

// CODATA 2018, SI.
inline constexpr double kHbarJS = 1.054571817e-34;          // J s
inline constexpr double kBohrMagnetonJPerT = 9.2740100783e-24;  // J/T
inline constexpr double kSpeedOfLightMPerS = 299792458.0;   // m/s (exact)
inline constexpr double kElectronVoltJ = 1.602176634e-19;   // J (exact)
inline constexpr double kVacuumPermeability = 1.25663706212e-6;  // N/A^2

// Derived, used throughout the spin dynamics (energies are carried in eV).
inline constexpr double kHbarEvS = kHbarJS / kElectronVoltJ;            // eV s
inline constexpr double kHbarCEvM =
    kHbarJS * kSpeedOfLightMPerS / kElectronVoltJ;                      // eV m
inline constexpr double kBohrMagnetonEvPerT =
    kBohrMagnetonJPerT / kElectronVoltJ;                                // eV/T

inline double ev_to_joule(double energy_ev) {
  return energy_ev * kElectronVoltJ;
}

inline double joule_to_ev(double energy_j) {
  return energy_j / kElectronVoltJ;
}

// Magnetic field, SI tesla -> eV^2 in Heaviside-Lorentz natural units.
// Derivation: the field energy density B^2/(2 mu0) [J/m^3] must equal
// B_nat^2/2 [eV^4], and 1 J/m^3 = (hbar c / eV)^3 / eV [eV^4], so
// B_nat = B * sqrt((hbar c in eV m)^3 / (mu0 * eV in J)).
inline const double kTeslaToEv2 =
    std::sqrt(kHbarCEvM * kHbarCEvM * kHbarCEvM /
              (kVacuumPermeability * kElectronVoltJ));

inline double tesla_to_ev2(double b_tesla) { return b_tesla * kTeslaToEv2; }

inline double ev2_to_tesla(double b_ev2) { return b_ev2 / kTeslaToEv2; }

inline double meter_to_inverse_ev(double length_m) {
  return length_m / kHbarCEvM;
}

inline double inverse_ev_to_meter(double length_inv_ev) {
  return length_inv_ev * kHbarCEvM;
}

// Reference line for output tables: the QED vacuum birefringence
// n_par - n_perp = 4e-24 * B^2 with B in tesla.
inline constexpr double kQedBirefringencePerTesla2 = 4e-24;

inline double qed_reference_birefringence(double b_tesla) {
  return kQedBirefringencePerTesla2 * b_tesla * b_tesla;
}

}  // namespace vmb::constants

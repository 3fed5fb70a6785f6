#ifndef QEWS_CONSTANTS_HPP
#define QEWS_CONSTANTS_HPP

// CODATA 2018 values, fixed to full double precision for bit-reproducible
// cross-checks between the quantum and classical routes.

namespace qews::constants {

inline constexpr double elementary_charge = 1.602176634e-19;     // C (exact)
inline constexpr double speed_of_light = 299792458.0;            // m/s (exact)
inline constexpr double hbar = 1.054571817e-34;                  // J s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double electron_mass = 9.1093837015e-31;        // kg
inline constexpr double electron_mass_kev = 510.99895000;        // m_e c^2 in keV

inline constexpr double vacuum_permeability() {
    return 1.0 / (vacuum_permittivity * speed_of_light * speed_of_light);
}

}  // namespace qews::constants

#endif

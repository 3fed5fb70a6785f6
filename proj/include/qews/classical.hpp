#ifndef QEWS_CLASSICAL_HPP
#define QEWS_CLASSICAL_HPP

// Classical point-particle radiation into one mode of a dielectric-waveguide
// ring resonator, used as an independent cross-check of the quantum photon
// yields. The spectral-energy chain is kept in separate composable steps so
// each factor is testable on its own.

#include "qews/fock.hpp"

#include <span>

namespace qews {

struct ClassicalModeSpec {
    double eta_q = 0.0;   // |E_z| / |E_perp| at the beam position
    double n_eff = 1.0;   // effective index of the waveguide mode
    double length = 0.0;  // interaction length L, m
    double circumference = 0.0;  // resonator circumference L_c, m
    double mode_area = 0.0;      // effective mode cross-section A_em, m^2
    double omega = 0.0;          // angular frequency, rad/s

    double mode_volume() const { return mode_area * circumference; }
    void check() const;
};

// Ensemble bunching coefficient M_b = (1/N_e) sum_j e^{i omega t_0j}.
cdouble classical_bunching(double omega, std::span<const double> arrival_times);

// Spectral radiation energy per transverse mode per electron, dW/d(omega).
double single_electron_spectral_energy(const ClassicalModeSpec& mode);

// Longitudinal mode spacing of the ring, 2 pi c / (L_c n_eff).
double longitudinal_mode_spacing(const ClassicalModeSpec& mode);

// Photons per electron per cavity mode, assembled from the two steps above.
double spontaneous_photons_per_electron(const ClassicalModeSpec& mode);

struct BeamEmission {
    double spontaneous = 0.0;   // N_e * n_sp
    double superradiant = 0.0;  // |M_b|^2 N_e^2 * n_sp
};

BeamEmission beam_emission(int n_electrons, cdouble bunching, const ClassicalModeSpec& mode);

// |g|^2 of the quantum coupling for the same mode, via the vacuum-field
// amplitude route; equals spontaneous_photons_per_electron.
double qed_coupling_magnitude(const ClassicalModeSpec& mode);

}  // namespace qews

#endif

#include "qews/classical.hpp"

#include "qews/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qews {

void ClassicalModeSpec::check() const {
    if (!(eta_q > 0.0) || !(n_eff > 1.0) || !(length > 0.0) || !(circumference > 0.0) ||
        !(mode_area > 0.0) || !(omega > 0.0))
        throw std::invalid_argument(
            "ClassicalModeSpec: all parameters must be positive and n_eff > 1");
}

cdouble classical_bunching(double omega, std::span<const double> arrival_times) {
    if (arrival_times.empty())
        throw std::invalid_argument("classical_bunching: need at least one electron");
    cdouble acc{0.0, 0.0};
    for (const double t : arrival_times) acc += std::polar(1.0, omega * t);
    return acc / double(arrival_times.size());
}

double single_electron_spectral_energy(const ClassicalModeSpec& mode) {
    using namespace constants;
    // field work -e E_z L under synchronism, normalized by the mode power
    const double work = elementary_charge * mode.eta_q * mode.length;
    const double impedance = std::sqrt(vacuum_permeability() / vacuum_permittivity) / mode.n_eff;
    return work * work * impedance / (4.0 * std::numbers::pi * mode.mode_area);
}

double longitudinal_mode_spacing(const ClassicalModeSpec& mode) {
    return 2.0 * std::numbers::pi * constants::speed_of_light /
           (mode.circumference * mode.n_eff);
}

double spontaneous_photons_per_electron(const ClassicalModeSpec& mode) {
    mode.check();
    const double energy = single_electron_spectral_energy(mode) * longitudinal_mode_spacing(mode);
    return energy / (constants::hbar * mode.omega);
}

BeamEmission beam_emission(int n_electrons, cdouble bunching, const ClassicalModeSpec& mode) {
    if (n_electrons < 1) throw std::invalid_argument("beam_emission: n_electrons must be >= 1");
    const double n_sp = spontaneous_photons_per_electron(mode);
    const double ne = double(n_electrons);
    BeamEmission e;
    e.spontaneous = ne * n_sp;
    e.superradiant = std::norm(bunching) * ne * ne * n_sp;
    return e;
}

double qed_coupling_magnitude(const ClassicalModeSpec& mode) {
    using namespace constants;
    mode.check();
    // g = i eta_q e A0 L / hbar with A0 the vacuum-field vector potential
    const double a0 = std::sqrt(hbar / (2.0 * mode.n_eff * mode.n_eff * vacuum_permittivity *
                                        mode.omega * mode.mode_volume()));
    const double g = mode.eta_q * elementary_charge * a0 * mode.length / hbar;
    return g * g;
}

}  // namespace qews

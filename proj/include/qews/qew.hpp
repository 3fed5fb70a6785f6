#ifndef QEWS_QEW_HPP
#define QEWS_QEW_HPP

// A single PINEM-modulated Gaussian electron wavepacket: momentum-space
// amplitudes, density bunching harmonics (closed form and brute force) and
// real-space density profiles.
//
// Dimensionless core conventions: momenta are measured in units of the laser
// recoil delta_k, drift times in units of the fundamental bunching period
// T_b = 2*pi / (hbar*delta_k^2 / (2*gamma^3*m_e)). The linear part of the
// drift phase contributes only through the carrier phase chi = omega_L*t_d
// (mod 2*pi), carried explicitly.

#include "qews/fock.hpp"

#include <optional>
#include <vector>

namespace qews {

// Physical description of the beam/laser pair behind a wavepacket.
struct QEWPhysical {
    double energy_kev = 200.0;     // electron kinetic energy
    double wavelength_nm = 800.0;  // modulating laser wavelength
    double sigma_t_s = 0.0;        // envelope duration (std dev, seconds)
    double drift_m = 0.0;          // drift length from modulation to cavity
};

// Derived kinematic quantities for a physical parameter block.
struct QEWDerived {
    double gamma, beta, v0;    // Lorentz factor, velocity
    double omega_l, delta_k;   // laser frequency, recoil wavenumber
    double sigma_k;            // momentum spread, 1/m
    double t_b, t_d;           // bunching period, drift time, seconds
    double sigma_ratio, t_d_ratio, carrier_phase;
};

struct QEWParams {
    double g_l = 0.0;            // laser modulation coupling (dimensionless)
    double sigma_ratio = 0.05;   // sigma_k / delta_k
    double t_d_ratio = 0.0;      // t_d / T_b
    double phi_0 = 0.0;          // carrier-envelope modulation phase
    double detuning_ratio = 0.0; // (delta_k_laser - delta_k_cavity) / delta_k_laser
    double carrier_phase = 0.0;  // omega_L * t_d, relevant mod 2*pi
    std::optional<QEWPhysical> physical;

    static QEWParams from_physical(const QEWPhysical& phys, double g_l, double phi_0 = 0.0,
                                   double detuning_ratio = 0.0);
    // Throws std::invalid_argument on inconsistent or non-positive values.
    void check() const;
};

QEWDerived derive_physical(const QEWPhysical& phys);

// J_n(x) for any integer n and real x.
double bessel_jn(int n, double x);

// Smallest N with sum_{|n|>N} J_n(2 g_l)^2 < 1e-14 (sideband cutoff of the
// modulation expansion).
int bessel_sideband_cutoff(double g_l);

struct KGridSpec {
    double half_span = 0.0;      // in recoil units
    int samples_per_recoil = 64;
};

// Default grid: spans the Bessel sidebands plus 8 envelope widths.
KGridSpec default_k_grid(const QEWParams& p);

// Uniform momentum-space samples of the modulated wavepacket, in recoil
// units, numerically normalized so sum |c|^2 dk = 1.
struct MomentumAmplitudes {
    std::vector<double> k;       // k_i / delta_k
    std::vector<cdouble> c;
    double dk = 0.0;             // grid step, recoil units
    int samples_per_recoil = 0;

    double norm_check() const;   // sum |c|^2 dk
};

MomentumAmplitudes momentum_amplitudes(const QEWParams& p, const KGridSpec& grid);
MomentumAmplitudes momentum_amplitudes(const QEWParams& p);

// Density spectrum M_b(k) = sum_{k'} c*(k') c(k'+k) dk at k snapped to the
// grid step; M_b(n) for integer n is the n-th bunching factor.
cdouble density_spectrum(const MomentumAmplitudes& amps, double k);

// Brute-force overlap integral for the n-th bunching harmonic b^(n); the
// oracle the closed form is checked against.
cdouble bunching_numeric(const MomentumAmplitudes& amps, int n);

// Signed real amplitude of b^(n): J_n(4 g_l sin(2 pi n tau)) times the
// drift-decay and detuning Gaussians.
double bunching_amplitude(const QEWParams& p, int n);

// Closed-form b^(n) including the carrier/modulation phase
// exp(-i n (chi + phi_0 + pi/2)).
cdouble bunching_analytic(const QEWParams& p, int n);

enum class Picture { schrodinger, interaction };

// Bunching harmonics b^(n), n in [-r_max, r_max], b^(0) = 1 exactly and
// b^(-n) = conj(b^(n)).
struct BunchingSpectrum {
    int r_max = 0;
    std::vector<cdouble> harmonics;  // index n + r_max
    Picture picture = Picture::schrodinger;
    double omega_t0 = 0.0;           // omega_L * t_0j (interaction picture)

    cdouble at(int n) const {
        if (n < -r_max || n > r_max) return {0.0, 0.0};
        return harmonics[std::size_t(n + r_max)];
    }
    // Largest |n| with |b^(n)| above the pruning threshold.
    int support(double threshold = 1e-12) const;
    void check() const;

    // Interaction-picture spectrum from explicit signed magnitudes
    // mags[n-1] for n = 1..R, with common beam phase phi_l:
    // b^(n) = mags[n-1] * exp(i n (phi_l - pi/2)).
    static BunchingSpectrum from_magnitudes(const std::vector<double>& mags, double phi_l);
};

// In the interaction picture only omega_L*t_0j - phi_0 - pi/2 enters the
// phases; the drift carrier phase cancels.
BunchingSpectrum bunching_spectrum(const QEWParams& p, int r_max, Picture picture,
                                   double omega_t0 = 0.0);

struct ZetaGrid {
    double min = 0.0, max = 0.0;  // zeta = delta_k * (z - v0 t_d)
    int samples = 0;
    std::vector<double> points() const;
};

ZetaGrid default_zeta_grid(const QEWParams& p);

// |psi(zeta)|^2 in the co-moving frame via direct Fourier transform of the
// momentum amplitudes (the linear dispersion phase only translates the
// packet and is removed; the quadratic chirp is kept).
std::vector<double> density_profile_exact(const MomentumAmplitudes& amps, const ZetaGrid& grid,
                                          const QEWParams& p);

// Envelope times harmonic carrier, chirp neglected:
// f(zeta) * (1 + 2 sum_n amp_n cos[n (zeta - phi_0 - pi/2)]).
std::vector<double> density_profile_approx(const QEWParams& p, const ZetaGrid& grid);

}  // namespace qews

#endif

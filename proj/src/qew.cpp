#include "qews/qew.hpp"

#include "qews/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qews {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

QEWDerived derive_physical(const QEWPhysical& phys) {
    using namespace constants;
    if (phys.energy_kev <= 0.0 || phys.wavelength_nm <= 0.0 || phys.sigma_t_s <= 0.0)
        throw std::invalid_argument("QEWPhysical: energy, wavelength and sigma_t must be positive");
    QEWDerived d{};
    d.gamma = 1.0 + phys.energy_kev / electron_mass_kev;
    d.beta = std::sqrt(1.0 - 1.0 / (d.gamma * d.gamma));
    d.v0 = d.beta * speed_of_light;
    d.omega_l = kTwoPi * speed_of_light / (phys.wavelength_nm * 1e-9);
    d.delta_k = d.omega_l / d.v0;
    d.sigma_k = 1.0 / (2.0 * d.v0 * phys.sigma_t_s);
    const double recoil_rate = hbar * d.delta_k * d.delta_k /
                               (2.0 * d.gamma * d.gamma * d.gamma * electron_mass);
    d.t_b = kTwoPi / recoil_rate;
    d.t_d = phys.drift_m / d.v0;
    d.sigma_ratio = d.sigma_k / d.delta_k;
    d.t_d_ratio = d.t_d / d.t_b;
    d.carrier_phase = std::fmod(d.omega_l * d.t_d, kTwoPi);
    return d;
}

QEWParams QEWParams::from_physical(const QEWPhysical& phys, double g_l, double phi_0,
                                   double detuning_ratio) {
    const QEWDerived d = derive_physical(phys);
    QEWParams p;
    p.g_l = g_l;
    p.sigma_ratio = d.sigma_ratio;
    p.t_d_ratio = d.t_d_ratio;
    p.phi_0 = phi_0;
    p.detuning_ratio = detuning_ratio;
    p.carrier_phase = d.carrier_phase;
    p.physical = phys;
    return p;
}

void QEWParams::check() const {
    if (!(sigma_ratio > 0.0)) throw std::invalid_argument("QEWParams: sigma_ratio must be > 0");
    if (g_l < 0.0) throw std::invalid_argument("QEWParams: g_l must be >= 0");
    if (t_d_ratio < 0.0) throw std::invalid_argument("QEWParams: t_d_ratio must be >= 0");
    if (physical) {
        const QEWDerived d = derive_physical(*physical);
        const double tol = 1e-12;
        if (std::abs(d.sigma_ratio - sigma_ratio) > tol * std::max(1.0, std::abs(sigma_ratio)) ||
            std::abs(d.t_d_ratio - t_d_ratio) > tol * std::max(1.0, std::abs(t_d_ratio)) ||
            std::abs(d.carrier_phase - carrier_phase) > 1e-9) {
            std::ostringstream os;
            os << "QEWParams: dimensionless fields inconsistent with physical block"
               << " (sigma_ratio " << sigma_ratio << " vs " << d.sigma_ratio << ", t_d_ratio "
               << t_d_ratio << " vs " << d.t_d_ratio << ")";
            throw std::invalid_argument(os.str());
        }
    }
}

double bessel_jn(int n, double x) {
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n % 2) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2) sign = -sign;
    }
    return sign * std::cyl_bessel_j(double(n), x);
}

int bessel_sideband_cutoff(double g_l) {
    const double x = 2.0 * g_l;
    if (x == 0.0) return 1;
    // total weight is exactly 1; find the smallest symmetric window whose
    // complement is below 1e-14
    double inside = bessel_jn(0, x) * bessel_jn(0, x);
    for (int n = 1; n <= 512; ++n) {
        const double j = bessel_jn(n, x);
        inside += 2.0 * j * j;
        if (1.0 - inside < 1e-14) return n;
    }
    throw std::invalid_argument("bessel_sideband_cutoff: modulation coupling too large");
}

KGridSpec default_k_grid(const QEWParams& p) {
    KGridSpec g;
    g.half_span = bessel_sideband_cutoff(p.g_l) + 8.0 * p.sigma_ratio;
    g.samples_per_recoil = 64;
    return g;
}

double MomentumAmplitudes::norm_check() const {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return s * dk;
}

MomentumAmplitudes momentum_amplitudes(const QEWParams& p, const KGridSpec& grid) {
    p.check();
    const KGridSpec req = default_k_grid(p);
    if (grid.half_span + 1e-12 < req.half_span || grid.samples_per_recoil < 64) {
        std::ostringstream os;
        os << "momentum_amplitudes: grid too narrow or coarse (need half_span >= "
           << req.half_span << ", samples_per_recoil >= 64; got " << grid.half_span << ", "
           << grid.samples_per_recoil << ")";
        throw std::invalid_argument(os.str());
    }

    MomentumAmplitudes amps;
    amps.samples_per_recoil = grid.samples_per_recoil;
    amps.dk = 1.0 / grid.samples_per_recoil;
    const int half = int(std::ceil(grid.half_span * grid.samples_per_recoil));
    const int count = 2 * half + 1;
    amps.k.resize(count);
    amps.c.assign(count, cdouble{0.0, 0.0});

    const int nb = bessel_sideband_cutoff(p.g_l);
    std::vector<double> j(2 * nb + 1);
    for (int n = -nb; n <= nb; ++n) j[std::size_t(n + nb)] = bessel_jn(n, 2.0 * p.g_l);

    const double sig = p.sigma_ratio;
    const double envelope_norm = std::pow(kTwoPi * sig * sig, -0.25);
    const double chirp = kTwoPi * p.t_d_ratio;  // quadratic dispersion coefficient
    for (int i = 0; i < count; ++i) {
        const double k = (i - half) * amps.dk;
        amps.k[i] = k;
        cdouble acc{0.0, 0.0};
        for (int n = -nb; n <= nb; ++n) {
            const double dk_n = k - n;
            const double gauss = std::exp(-dk_n * dk_n / (4.0 * sig * sig));
            if (gauss == 0.0) continue;
            acc += j[std::size_t(n + nb)] * gauss * std::polar(1.0, -n * p.phi_0);
        }
        const double drift = -(p.carrier_phase * k + chirp * k * k);
        amps.c[i] = envelope_norm * acc * std::polar(1.0, drift);
    }

    // detect clipping before normalizing: mass within 2 envelope widths of
    // either edge must be negligible
    const int guard = std::max(1, int(std::ceil(2.0 * sig * grid.samples_per_recoil)));
    double edge = 0.0, total = 0.0;
    for (int i = 0; i < count; ++i) {
        const double w = std::norm(amps.c[i]);
        total += w;
        if (i < guard || i >= count - guard) edge += w;
    }
    if (total <= 0.0 || edge / total > 1e-8) {
        std::ostringstream os;
        os << "momentum_amplitudes: grid clips the wavepacket (boundary mass fraction "
           << (total > 0 ? edge / total : 1.0) << " > 1e-8)";
        throw std::invalid_argument(os.str());
    }
    const double scale = 1.0 / std::sqrt(total * amps.dk);
    for (auto& v : amps.c) v *= scale;
    return amps;
}

MomentumAmplitudes momentum_amplitudes(const QEWParams& p) {
    return momentum_amplitudes(p, default_k_grid(p));
}

cdouble density_spectrum(const MomentumAmplitudes& amps, double k) {
    const double steps = k / amps.dk;
    const long shift = std::lround(steps);
    if (std::abs(steps - double(shift)) > 1e-9)
        throw std::invalid_argument("density_spectrum: k must be a multiple of the grid step");
    const long count = long(amps.c.size());
    if (shift <= -count || shift >= count)
        throw std::invalid_argument("density_spectrum: k outside the grid span");
    cdouble acc{0.0, 0.0};
    const long lo = std::max(0L, -shift);
    const long hi = std::min(count, count - shift);
    for (long i = lo; i < hi; ++i) acc += std::conj(amps.c[std::size_t(i)]) * amps.c[std::size_t(i + shift)];
    return acc * amps.dk;
}

cdouble bunching_numeric(const MomentumAmplitudes& amps, int n) {
    return density_spectrum(amps, double(n));
}

double bunching_amplitude(const QEWParams& p, int n) {
    if (n == 0) return 1.0;
    const double tau = p.t_d_ratio;
    const double arg = 4.0 * std::abs(p.g_l) * std::sin(n * kTwoPi * tau);
    const double decay_k = 4.0 * kPi * tau * p.sigma_ratio;  // (hbar t_d / gamma^3 m) sigma_k delta_k
    double amp = bessel_jn(n, arg) * std::exp(-0.5 * double(n) * n * decay_k * decay_k);
    if (p.detuning_ratio != 0.0) {
        const double det = p.detuning_ratio / p.sigma_ratio;
        amp *= std::exp(-double(n) * n * det * det / 8.0);
    }
    return amp;
}

cdouble bunching_analytic(const QEWParams& p, int n) {
    if (n == 0) return {1.0, 0.0};
    const double amp = bunching_amplitude(p, n);
    return amp * std::polar(1.0, -n * (p.carrier_phase + p.phi_0 + kPi / 2.0));
}

int BunchingSpectrum::support(double threshold) const {
    int s = 0;
    for (int n = 1; n <= r_max; ++n)
        if (std::abs(at(n)) >= threshold) s = n;
    return s;
}

void BunchingSpectrum::check() const {
    if (std::abs(at(0) - cdouble{1.0, 0.0}) != 0.0)
        throw std::invalid_argument("BunchingSpectrum: b^(0) must be exactly 1");
    for (int n = 1; n <= r_max; ++n) {
        if (std::abs(at(-n) - std::conj(at(n))) > 1e-10)
            throw std::invalid_argument("BunchingSpectrum: b^(-n) != conj(b^(n))");
        if (std::abs(at(n)) > 1.0 + 1e-12)
            throw std::invalid_argument("BunchingSpectrum: |b^(n)| exceeds 1");
    }
}

BunchingSpectrum BunchingSpectrum::from_magnitudes(const std::vector<double>& mags, double phi_l) {
    BunchingSpectrum s;
    s.r_max = int(mags.size());
    s.picture = Picture::interaction;
    s.harmonics.assign(std::size_t(2 * s.r_max + 1), cdouble{0.0, 0.0});
    s.harmonics[std::size_t(s.r_max)] = 1.0;
    for (int n = 1; n <= s.r_max; ++n) {
        const cdouble b = mags[std::size_t(n - 1)] * std::polar(1.0, n * (phi_l - kPi / 2.0));
        s.harmonics[std::size_t(s.r_max + n)] = b;
        s.harmonics[std::size_t(s.r_max - n)] = std::conj(b);
    }
    s.check();
    return s;
}

BunchingSpectrum bunching_spectrum(const QEWParams& p, int r_max, Picture picture,
                                   double omega_t0) {
    if (r_max < 1) throw std::invalid_argument("bunching_spectrum: r_max must be >= 1");
    BunchingSpectrum s;
    s.r_max = r_max;
    s.picture = picture;
    s.omega_t0 = omega_t0;
    s.harmonics.assign(std::size_t(2 * r_max + 1), cdouble{0.0, 0.0});
    s.harmonics[std::size_t(r_max)] = 1.0;
    for (int n = 1; n <= r_max; ++n) {
        const double amp = bunching_amplitude(p, n);
        cdouble b;
        if (picture == Picture::schrodinger)
            b = amp * std::polar(1.0, -n * (p.carrier_phase + p.phi_0 + kPi / 2.0));
        else
            b = amp * std::polar(1.0, n * (omega_t0 - p.phi_0 - kPi / 2.0));
        s.harmonics[std::size_t(r_max + n)] = b;
        s.harmonics[std::size_t(r_max - n)] = std::conj(b);
    }
    s.check();
    return s;
}

std::vector<double> ZetaGrid::points() const {
    std::vector<double> z(static_cast<std::size_t>(samples));
    const double step = samples > 1 ? (max - min) / (samples - 1) : 0.0;
    for (int i = 0; i < samples; ++i) z[std::size_t(i)] = min + i * step;
    return z;
}

ZetaGrid default_zeta_grid(const QEWParams& p) {
    ZetaGrid g;
    const double sigma_z = 1.0 / (2.0 * p.sigma_ratio);
    g.min = -6.0 * sigma_z;
    g.max = 6.0 * sigma_z;
    g.samples = std::max(1024, int(std::ceil((g.max - g.min) * 64.0 / kTwoPi)));
    return g;
}

std::vector<double> density_profile_exact(const MomentumAmplitudes& amps, const ZetaGrid& grid,
                                          const QEWParams& p) {
    // remove the linear dispersion phase: it translates the packet by
    // carrier_phase without changing its shape or carrier offset
    const std::vector<double> zeta = grid.points();
    std::vector<double> density(zeta.size(), 0.0);
    // psi(zeta) = (2 pi)^{-1/2} sum_i c_i e^{i k_i zeta} dk
    const double norm = amps.dk * amps.dk / kTwoPi;
#pragma omp parallel for schedule(static)
    for (std::size_t iz = 0; iz < zeta.size(); ++iz) {
        cdouble acc{0.0, 0.0};
        for (std::size_t i = 0; i < amps.c.size(); ++i) {
            const double phase = amps.k[i] * (zeta[iz] + p.carrier_phase);
            acc += amps.c[i] * std::polar(1.0, phase);
        }
        density[iz] = std::norm(acc) * norm;
    }
    return density;
}

std::vector<double> density_profile_approx(const QEWParams& p, const ZetaGrid& grid) {
    const double sigma_z = 1.0 / (2.0 * p.sigma_ratio);
    const int nb = bessel_sideband_cutoff(p.g_l) + 4;
    std::vector<double> amp(std::size_t(nb) + 1, 0.0);
    for (int n = 1; n <= nb; ++n) amp[std::size_t(n)] = bunching_amplitude(p, n);

    const std::vector<double> zeta = grid.points();
    std::vector<double> density(zeta.size(), 0.0);
    const double env_norm = 1.0 / std::sqrt(kTwoPi * sigma_z * sigma_z);
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        const double z = zeta[i];
        double carrier = 1.0;
        for (int n = 1; n <= nb; ++n)
            carrier += 2.0 * amp[std::size_t(n)] * std::cos(n * (z - p.phi_0 - kPi / 2.0));
        density[i] = env_norm * std::exp(-z * z / (2.0 * sigma_z * sigma_z)) * carrier;
    }
    return density;
}

}  // namespace qews

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qews/qew.hpp"

#include <cmath>
#include <numbers>

using namespace qews;

namespace {
constexpr double kPi = std::numbers::pi;

QEWParams modulated(double g_l, double sigma_ratio, double tau, double phi0 = 0.0) {
    QEWParams p;
    p.g_l = g_l;
    p.sigma_ratio = sigma_ratio;
    p.t_d_ratio = tau;
    p.phi_0 = phi0;
    return p;
}

double wrap(double phase) {
    phase = std::fmod(phase, 2.0 * kPi);
    if (phase > kPi) phase -= 2.0 * kPi;
    if (phase <= -kPi) phase += 2.0 * kPi;
    return phase;
}
}  // namespace

TEST_CASE("unmodulated amplitudes are a single normalized Gaussian") {
    const QEWParams p = modulated(0.0, 0.05, 0.0);
    const MomentumAmplitudes amps = momentum_amplitudes(p);
    CHECK(std::abs(amps.norm_check() - 1.0) < 1e-12);
    // |c|^2 should match the Gaussian density exactly after normalization
    for (std::size_t i = 0; i < amps.k.size(); i += 64) {
        const double k = amps.k[i];
        const double expect = std::exp(-k * k / (2.0 * 0.05 * 0.05)) /
                              std::sqrt(2.0 * kPi * 0.05 * 0.05);
        CHECK(std::norm(amps.c[i]) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("sideband weights follow the squared Bessel ladder") {
    const QEWParams p = modulated(0.5, 0.05, 0.0);
    const MomentumAmplitudes amps = momentum_amplitudes(p);
    CHECK(std::abs(amps.norm_check() - 1.0) < 1e-12);
    const int spr = amps.samples_per_recoil;
    double total = 0.0;
    for (int n = -6; n <= 6; ++n) {
        // integrate |c|^2 over one recoil-wide window around sideband n
        double mass = 0.0;
        for (std::size_t i = 0; i < amps.k.size(); ++i)
            if (std::abs(amps.k[i] - n) <= 0.5) mass += std::norm(amps.c[i]);
        mass /= spr;
        total += mass;
        const double j = bessel_jn(n, 1.0);
        CHECK(std::abs(mass - j * j) < 1e-8);
        CHECK(std::abs(mass - bessel_jn(-n, 1.0) * bessel_jn(-n, 1.0)) < 1e-8);
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("fig-S2-like physical parameters normalize on the default grid") {
    QEWPhysical phys;
    phys.energy_kev = 200.0;
    phys.wavelength_nm = 800.0;
    const QEWDerived d0 = derive_physical({200.0, 800.0, 1e-15, 0.0});
    phys.sigma_t_s = 1.5 * (2.0 * kPi / d0.omega_l);
    phys.drift_m = 0.03;
    const QEWParams p = QEWParams::from_physical(phys, 1.5, -0.2 * kPi);
    p.check();
    CHECK(p.sigma_ratio == doctest::Approx(1.0 / (2.0 * 2.0 * kPi * 1.5)).epsilon(1e-12));
    const MomentumAmplitudes amps = momentum_amplitudes(p);
    CHECK(std::abs(amps.norm_check() - 1.0) < 1e-10);
}

TEST_CASE("narrow or coarse grids are rejected") {
    const QEWParams p = modulated(0.5, 0.05, 0.1);
    KGridSpec bad = default_k_grid(p);
    bad.half_span = 1.0;
    CHECK_THROWS_AS(momentum_amplitudes(p, bad), std::invalid_argument);
    KGridSpec coarse = default_k_grid(p);
    coarse.samples_per_recoil = 16;
    CHECK_THROWS_AS(momentum_amplitudes(p, coarse), std::invalid_argument);
}

TEST_CASE("numeric bunching basics") {
    const QEWParams p = modulated(0.8, 0.05, 0.13, 0.4);
    const MomentumAmplitudes amps = momentum_amplitudes(p);
    CHECK(std::abs(bunching_numeric(amps, 0) - cdouble{1.0, 0.0}) < 1e-12);

    // no drift: no density modulation yet
    const MomentumAmplitudes fresh = momentum_amplitudes(modulated(1.1, 0.05, 0.0, 0.3));
    for (int n = 1; n <= 3; ++n) CHECK(std::abs(bunching_numeric(fresh, n)) < 1e-6);

    // pure Gaussian at zero drift: overlap has the closed form e^{-n^2/(8 sigma^2)}
    const MomentumAmplitudes plain = momentum_amplitudes(modulated(0.0, 0.1, 0.0));
    for (int n = 1; n <= 2; ++n) {
        const double expect = std::exp(-n * n / (8.0 * 0.1 * 0.1));
        CHECK(std::abs(std::abs(bunching_numeric(plain, n)) - expect) < 1e-8 * expect + 1e-12);
    }
}

TEST_CASE("analytic bunching base cases") {
    const QEWParams none = modulated(0.0, 0.05, 0.3, 1.0);
    CHECK(bunching_analytic(none, 0) == cdouble{1.0, 0.0});
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(bunching_analytic(none, n)) == 0.0);
    const QEWParams p = modulated(0.7, 0.05, 0.21, 0.9);
    CHECK(bunching_analytic(p, 0) == cdouble{1.0, 0.0});
}

TEST_CASE("analytic matches numeric over the sweep grid") {
    // max relative error per sigma_ratio must also improve monotonically as
    // the recoil gets larger relative to the momentum spread
    const double taus[] = {0.05, 0.1, 0.2, 0.3, 0.45};
    double prev_err = 1e300;
    for (const double sigma : {0.1, 0.05, 0.02}) {
        double max_err = 0.0;
        for (const double g_l : {0.2, 0.5, 1.5}) {
            for (const double tau : taus) {
                const QEWParams p = modulated(g_l, sigma, tau, 0.37);
                const MomentumAmplitudes amps = momentum_amplitudes(p);
                for (int n = 1; n <= 4; ++n) {
                    const cdouble numeric = bunching_numeric(amps, n);
                    const cdouble analytic = bunching_analytic(p, n);
                    const double err =
                        std::abs(analytic - numeric) / std::max(std::abs(numeric), 1e-3);
                    max_err = std::max(max_err, err);
                }
            }
        }
        CHECK(max_err < 1e-3);
        CHECK(max_err <= prev_err + 1e-9);
        prev_err = max_err;
    }
}

TEST_CASE("phase law of the first harmonic") {
    const QEWParams p = modulated(0.5, 0.05, 0.17, 0.6);
    const MomentumAmplitudes amps = momentum_amplitudes(p);
    const cdouble numeric = bunching_numeric(amps, 1);
    const double bessel_sign = bunching_amplitude(p, 1) >= 0.0 ? 0.0 : kPi;
    const double expect = -(p.carrier_phase + p.phi_0 + kPi / 2.0) + bessel_sign;
    CHECK(std::abs(wrap(std::arg(numeric) - expect)) < 1e-4);
    CHECK(std::abs(wrap(std::arg(bunching_analytic(p, 1)) - expect)) < 1e-12);
}

TEST_CASE("second harmonic is subleading near the strong-bunching drift") {
    // holds in the configurations the emission runs use (drift near the
    // first bunching maximum), not for arbitrarily small modulation
    for (const double g_l : {0.4, 0.443594329799648, 0.5}) {
        for (const double tau : {0.18, 0.197431626037045, 0.22}) {
            const QEWParams p = modulated(g_l, 0.05, tau);
            const double b1 = std::abs(bunching_amplitude(p, 1));
            const double b2 = std::abs(bunching_amplitude(p, 2));
            CHECK(b2 < b1 * b1);
        }
    }
}

TEST_CASE("spectrum construction and symmetry") {
    const BunchingSpectrum none = bunching_spectrum(modulated(0.0, 0.05, 0.0), 4,
                                                    Picture::schrodinger);
    CHECK(none.at(0) == cdouble{1.0, 0.0});
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(none.at(n)) < 1e-12);

    const QEWParams p = modulated(0.6, 0.04, 0.22, 1.3);
    const BunchingSpectrum s = bunching_spectrum(p, 6, Picture::interaction, 2.0);
    s.check();
    for (int n = 1; n <= 6; ++n) CHECK(std::abs(s.at(-n) - std::conj(s.at(n))) == 0.0);

    // equal omega_L t_0 - phi_0 means equal spectra
    QEWParams q = p;
    q.phi_0 = p.phi_0 + 0.7;
    const BunchingSpectrum a = bunching_spectrum(p, 6, Picture::interaction, 1.1);
    const BunchingSpectrum b = bunching_spectrum(q, 6, Picture::interaction, 1.1 + 0.7);
    for (int n = -6; n <= 6; ++n) CHECK(std::abs(a.at(n) - b.at(n)) < 1e-14);
}

TEST_CASE("density spectrum endpoints") {
    const QEWParams p = modulated(0.5, 0.05, 0.2, 0.3);
    const MomentumAmplitudes amps = momentum_amplitudes(p);
    CHECK(std::abs(density_spectrum(amps, 0.0) - cdouble{1.0, 0.0}) < 1e-12);
    for (int n = 1; n <= 3; ++n)
        CHECK(std::abs(density_spectrum(amps, double(n)) - bunching_numeric(amps, n)) == 0.0);
    // |M_b| <= 1 across the sampled axis
    for (double k = -3.0; k <= 3.0; k += 0.25)
        CHECK(std::abs(density_spectrum(amps, k)) <= 1.0 + 1e-12);
    CHECK_THROWS_AS(density_spectrum(amps, 1e4), std::invalid_argument);
}

TEST_CASE("exact density profile: Gaussian limit and positivity") {
    const QEWParams p = modulated(0.0, 0.05, 0.0);
    const MomentumAmplitudes amps = momentum_amplitudes(p);
    const ZetaGrid grid = default_zeta_grid(p);
    const std::vector<double> exact = density_profile_exact(amps, grid, p);
    const std::vector<double> zeta = grid.points();
    const double sigma_z = 1.0 / (2.0 * 0.05);
    double linf = 0.0;
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        CHECK(exact[i] >= 0.0);
        const double ref = std::exp(-zeta[i] * zeta[i] / (2.0 * sigma_z * sigma_z)) /
                           std::sqrt(2.0 * kPi * sigma_z * sigma_z);
        linf = std::max(linf, std::abs(exact[i] - ref));
    }
    CHECK(linf < 1e-10);
}

TEST_CASE("profiles integrate to one and agree at fig-S2 parameters") {
    const QEWParams p = modulated(1.5, 1.0 / (6.0 * kPi), 0.062793, -0.2 * kPi);
    const MomentumAmplitudes amps = momentum_amplitudes(p);
    const ZetaGrid grid = default_zeta_grid(p);
    const std::vector<double> zeta = grid.points();
    const double dz = zeta[1] - zeta[0];

    const std::vector<double> exact = density_profile_exact(amps, grid, p);
    const std::vector<double> approx = density_profile_approx(p, grid);

    double exact_sum = 0.0, approx_sum = 0.0, l2 = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        exact_sum += exact[i] * dz;
        approx_sum += approx[i] * dz;
        l2 += (exact[i] - approx[i]) * (exact[i] - approx[i]);
        ref2 += exact[i] * exact[i];
    }
    CHECK(std::abs(exact_sum - 1.0) < 1e-8);
    CHECK(std::abs(approx_sum - 1.0) < 1e-6);
    CHECK(std::sqrt(l2 / ref2) < 0.05);

    // micro-bunch peak sits at zeta = phi_0 + pi/2 (mod 2 pi)
    std::size_t peak = 0;
    for (std::size_t i = 1; i + 1 < exact.size(); ++i)
        if (exact[i] > exact[peak]) peak = i;
    // quadratic vertex refinement
    const double num = exact[peak - 1] - exact[peak + 1];
    const double den = exact[peak - 1] - 2.0 * exact[peak] + exact[peak + 1];
    const double z_peak = zeta[peak] + 0.5 * dz * num / den;
    CHECK(std::abs(wrap(z_peak - (p.phi_0 + kPi / 2.0))) < 0.02);
}

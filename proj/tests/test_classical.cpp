#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qews/classical.hpp"

#include "qews/constants.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qews;

namespace {
constexpr double kPi = std::numbers::pi;

ClassicalModeSpec microcavity() {
    // representative integrated-photonics ring: 1.55 um mode, 50 um
    // interaction length, 1 um^2 mode area, 300 um circumference
    ClassicalModeSpec mode;
    mode.eta_q = 0.3;
    mode.n_eff = 2.0;
    mode.length = 50e-6;
    mode.circumference = 300e-6;
    mode.mode_area = 1e-12;
    mode.omega = 2.0 * kPi * constants::speed_of_light / 1.55e-6;
    return mode;
}

ClassicalModeSpec random_mode(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ClassicalModeSpec mode;
    mode.eta_q = 0.05 + unit(rng);
    mode.n_eff = 1.2 + 2.0 * unit(rng);
    mode.length = 1e-6 * std::pow(10.0, 2.0 * unit(rng));
    mode.circumference = mode.length * (2.0 + 20.0 * unit(rng));
    mode.mode_area = 1e-13 * std::pow(10.0, 2.0 * unit(rng));
    mode.omega = 2.0 * kPi * constants::speed_of_light / (0.4e-6 + 1.6e-6 * unit(rng));
    return mode;
}
}  // namespace

TEST_CASE("bunching coefficient of arrival-time lists") {
    const double omega = 1.0e15;
    std::vector<double> equal(12, 3.3e-15);
    CHECK(std::abs(classical_bunching(omega, equal) - std::polar(1.0, omega * 3.3e-15)) < 1e-12);
    CHECK(std::abs(std::abs(classical_bunching(omega, equal)) - 1.0) < 1e-12);

    const double half_period = kPi / omega;
    std::vector<double> pair{0.0, half_period};
    CHECK(std::abs(classical_bunching(omega, pair)) < 1e-12);

    // random times: |M_b|^2 <= 1 always, mean 1/N_e
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n_e = 50, events = 4000;
    double acc = 0.0, acc2 = 0.0;
    for (int e = 0; e < events; ++e) {
        std::vector<double> times(n_e);
        for (auto& t : times) t = 1e-12 * unit(rng);
        const double m2 = std::norm(classical_bunching(omega, times));
        CHECK(m2 <= 1.0 + 1e-12);
        acc += m2;
        acc2 += m2 * m2;
    }
    const double mean = acc / events;
    const double sem = std::sqrt((acc2 / events - mean * mean) / (events - 1));
    CHECK(std::abs(mean - 1.0 / n_e) <= 3.0 * sem);
}

TEST_CASE("spontaneous photon yield scalings") {
    const ClassicalModeSpec mode = microcavity();
    const double base = spontaneous_photons_per_electron(mode);
    CHECK(base > 0.0);

    ClassicalModeSpec double_l = mode;
    double_l.length *= 2.0;
    CHECK(spontaneous_photons_per_electron(double_l) == doctest::Approx(4.0 * base).epsilon(1e-12));

    ClassicalModeSpec double_v = mode;
    double_v.mode_area *= 2.0;
    CHECK(spontaneous_photons_per_electron(double_v) == doctest::Approx(0.5 * base).epsilon(1e-12));

    ClassicalModeSpec double_eta = mode;
    double_eta.eta_q *= 2.0;
    CHECK(qed_coupling_magnitude(double_eta) ==
          doctest::Approx(4.0 * qed_coupling_magnitude(mode)).epsilon(1e-12));

    // representative numbers give |g| in the 1e-2..1e-1 range
    const double g = std::sqrt(qed_coupling_magnitude(mode));
    CHECK(g > 0.01);
    CHECK(g < 0.1);
}

TEST_CASE("classical and quantum yields are identical") {
    std::mt19937_64 rng(321);
    for (int rep = 0; rep < 1000; ++rep) {
        const ClassicalModeSpec mode = random_mode(rng);
        const double classical = spontaneous_photons_per_electron(mode);
        const double quantum = qed_coupling_magnitude(mode);
        CHECK(std::abs(classical - quantum) / quantum < 1e-12);
    }
}

TEST_CASE("beam emission laws") {
    const ClassicalModeSpec mode = microcavity();
    const double n_sp = spontaneous_photons_per_electron(mode);

    const BeamEmission none = beam_emission(40, cdouble{0.0, 0.0}, mode);
    CHECK(none.spontaneous == doctest::Approx(40.0 * n_sp).epsilon(1e-12));
    CHECK(none.superradiant == 0.0);

    const BeamEmission full = beam_emission(40, cdouble{1.0, 0.0}, mode);
    CHECK(full.superradiant == doctest::Approx(1600.0 * n_sp).epsilon(1e-12));

    // |M_b|^2 = 1/N_e reduces the superradiant formula to the spontaneous one
    const BeamEmission reduced = beam_emission(40, cdouble{std::sqrt(1.0 / 40.0), 0.0}, mode);
    CHECK(reduced.superradiant == doctest::Approx(reduced.spontaneous).epsilon(1e-12));
}

TEST_CASE("mode validation") {
    ClassicalModeSpec bad = microcavity();
    bad.n_eff = 0.9;
    CHECK_THROWS_AS(spontaneous_photons_per_electron(bad), std::invalid_argument);
    bad = microcavity();
    bad.length = 0.0;
    CHECK_THROWS_AS(qed_coupling_magnitude(bad), std::invalid_argument);
    CHECK_THROWS_AS(classical_bunching(1.0, std::span<const double>{}), std::invalid_argument);
}

#ifndef QEWS_BEAM_HPP
#define QEWS_BEAM_HPP

// Multi-electron build-up of the cavity photon state, one scattering channel
// application per electron starting from the vacuum, plus the closed-form
// photon-number laws and seeded Monte Carlo ensembles.
//
// Beam phase model: each electron carries the beam phase
// phi_l = omega_L*t_0j - phi_0j, the only arrival quantity the
// interaction-picture bunching depends on. Correlated beams share one phi_l,
// uncorrelated beams draw it per electron, partially coherent beams draw it
// once per emission event.

#include "qews/fock.hpp"
#include "qews/interaction.hpp"
#include "qews/phase_space.hpp"
#include "qews/qew.hpp"

#include <cstdint>
#include <random>

namespace qews {

enum class BeamMode { unmodulated, correlated, uncorrelated, partially_coherent };

struct BeamSpec {
    int n_electrons = 1;
    BeamMode mode = BeamMode::unmodulated;
    double phi_l = 0.0;       // correlated: shared beam phase
    double phi_mean = 0.0;    // partially coherent: Gaussian center
    double phi_sigma = 0.0;   //                    and width (radians)
    QEWParams qew;            // template; all electrons share the magnitudes
    double mean_spacing = 1.0;  // mean arrival spacing; only phases matter
    int r_max = 8;            // harmonic support of the per-electron spectra

    void check() const;
};

struct StepRecord {
    int electron = 0;        // 1-based index j
    double mean_n = 0.0;
    double dq2 = 0.0, dp2 = 0.0;
    double trace_deficit = 0.0;
};

struct BuildupResult {
    DensityMatrix state;
    std::vector<StepRecord> trajectory;
    std::vector<double> phi_l;  // realized per-electron beam phases
};

// Deterministic per-event seed derivation from a master seed.
std::uint64_t derive_event_seed(std::uint64_t master_seed, std::uint64_t event_index);

// Portable draws on top of the fixed mt19937_64 stream.
double uniform_angle(std::mt19937_64& rng);                    // [0, 2 pi)
double gaussian(std::mt19937_64& rng, double mean, double sigma);

BuildupResult run_buildup(const BeamSpec& beam, const CouplingSpec& coupling, int cutoff,
                          std::uint64_t event_seed, double eps_tr = 1e-8);

// <n> = N_e |g|^2 + N_e (N_e - 1) |g|^2 |b1|^2 (fully phase-matched beam).
double expected_photon_correlated(int n_electrons, double g_mag, double b1_mag);

// <n> = N_e |g|^2 + |g|^2 sum_{i != j} b_i conj(b_j) for per-electron first
// harmonics b_i.
double expected_photon_general(const std::vector<cdouble>& b1, double g_mag);

// Thermal (Bose-Einstein) photon-number law with mean N_e |g|^2.
double bose_einstein_diagonal(int n_electrons, double g_mag, int n);

struct EventSummary {
    std::uint64_t event_index = 0;
    std::uint64_t seed = 0;
    double mean_n = 0.0;
    double dq2 = 0.0, dp2 = 0.0;
    double trace_deficit = 0.0;
};

struct TrajectoryStat {
    int electron = 0;
    double mean = 0.0;       // across events
    double std_error = 0.0;  // of the mean
};

struct EnsembleReport {
    int events = 0;
    std::vector<EventSummary> per_event;
    DensityMatrix averaged;               // event-averaged density matrix
    std::vector<TrajectoryStat> mean_trajectory;
};

// Events are independent; execution is chunked so the reduction order is
// fixed by event index regardless of the thread count.
EnsembleReport ensemble_run(const BeamSpec& beam, const CouplingSpec& coupling, int cutoff,
                            int events, std::uint64_t master_seed, double eps_tr = 1e-8);

struct SumRuleReport {
    double zero_order_sum = 0.0;    // sum_n rho(n,n), unmodulated: expect 1
    double zero_order_mean = 0.0;   // sum_n n rho(n,n), expect N_e |g|^2
    double pair_trace_slope = 0.0;  // d trace / d(sum_{i!=j} b b*), expect 0
    double pair_mean_slope = 0.0;   // d <n> / d(sum_{i!=j} b b*), expect |g|^2
};

// Numeric checks of the combinatorial coefficients behind the diagonal of
// the built-up state: the unmodulated sums and the finite-difference slope
// of <n> against the pair correlation sum at small uniform bunching.
SumRuleReport sum_rule_checks(double g_mag, int n_electrons, int cutoff);

}  // namespace qews

#endif

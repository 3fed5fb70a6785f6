#include "qews/beam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qews {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

void BeamSpec::check() const {
    if (n_electrons < 1) throw std::invalid_argument("BeamSpec: n_electrons must be >= 1");
    if (phi_sigma < 0.0) throw std::invalid_argument("BeamSpec: phi_sigma must be >= 0");
    if (r_max < 1) throw std::invalid_argument("BeamSpec: r_max must be >= 1");
    if (mode != BeamMode::unmodulated) qew.check();
}

std::uint64_t derive_event_seed(std::uint64_t master_seed, std::uint64_t event_index) {
    return splitmix64(master_seed ^ splitmix64(event_index + 1));
}

double uniform_angle(std::mt19937_64& rng) {
    // top 53 bits -> [0,1); distributions from <random> are not portable
    const double u = double(rng() >> 11) * 0x1.0p-53;
    return kTwoPi * u;
}

double gaussian(std::mt19937_64& rng, double mean, double sigma) {
    // Box-Muller, one fresh pair per call for reproducibility
    double u1 = double(rng() >> 11) * 0x1.0p-53;
    const double u2 = double(rng() >> 11) * 0x1.0p-53;
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

namespace {

// Per-electron magnitudes are shared across the beam; only phi_l varies.
BunchingSpectrum spectrum_for_phase(const BeamSpec& beam, const std::vector<double>& mags,
                                    double phi_l) {
    BunchingSpectrum s = BunchingSpectrum::from_magnitudes(mags, phi_l);
    s.omega_t0 = phi_l + beam.qew.phi_0;  // omega_L t_0j for this electron
    return s;
}

std::vector<double> beam_magnitudes(const BeamSpec& beam) {
    std::vector<double> mags(std::size_t(beam.r_max), 0.0);
    if (beam.mode != BeamMode::unmodulated)
        for (int n = 1; n <= beam.r_max; ++n)
            mags[std::size_t(n - 1)] = bunching_amplitude(beam.qew, n);
    return mags;
}

}  // namespace

BuildupResult run_buildup(const BeamSpec& beam, const CouplingSpec& coupling, int cutoff,
                          std::uint64_t event_seed, double eps_tr) {
    beam.check();
    coupling.check();
    const std::vector<double> mags = beam_magnitudes(beam);
    const DisplacementMatrix m = displacement_matrix(coupling.g, cutoff);

    std::mt19937_64 rng(event_seed);
    BuildupResult result;
    result.state = DensityMatrix(cutoff);
    result.state(0, 0) = 1.0;  // cavity starts in the vacuum
    result.trajectory.reserve(std::size_t(beam.n_electrons));
    result.phi_l.reserve(std::size_t(beam.n_electrons));

    double event_phi = beam.phi_l;
    if (beam.mode == BeamMode::partially_coherent)
        event_phi = gaussian(rng, beam.phi_mean, beam.phi_sigma);

    for (int j = 1; j <= beam.n_electrons; ++j) {
        double phi = event_phi;
        if (beam.mode == BeamMode::uncorrelated) phi = uniform_angle(rng);
        result.phi_l.push_back(phi);
        const BunchingSpectrum spec = spectrum_for_phase(beam, mags, phi);
        try {
            result.state = scatter(result.state, spec, m, eps_tr);
        } catch (const numerical_error& err) {
            throw numerical_error(std::string(err.what()) + " (electron " + std::to_string(j) + ")",
                                  err.diagnostics, j);
        }
        const QuadratureMoments mom = moments(result.state);
        result.trajectory.push_back(StepRecord{j, mean_photon(result.state), mom.dq2, mom.dp2,
                                               1.0 - result.state.trace_real()});
    }
    return result;
}

double expected_photon_correlated(int n_electrons, double g_mag, double b1_mag) {
    const double ne = double(n_electrons);
    const double g2 = g_mag * g_mag;
    return ne * g2 + ne * (ne - 1.0) * g2 * b1_mag * b1_mag;
}

double expected_photon_general(const std::vector<cdouble>& b1, double g_mag) {
    const double g2 = g_mag * g_mag;
    cdouble sum{0.0, 0.0};
    for (const auto& b : b1) sum += b;
    double pair = std::norm(sum);
    for (const auto& b : b1) pair -= std::norm(b);  // remove i == j
    return double(b1.size()) * g2 + g2 * pair;
}

double bose_einstein_diagonal(int n_electrons, double g_mag, int n) {
    const double mu = double(n_electrons) * g_mag * g_mag;
    return std::pow(mu / (mu + 1.0), double(n)) / (mu + 1.0);
}

EnsembleReport ensemble_run(const BeamSpec& beam, const CouplingSpec& coupling, int cutoff,
                            int events, std::uint64_t master_seed, double eps_tr) {
    if (events < 1) throw std::invalid_argument("ensemble_run: events must be >= 1");
    EnsembleReport report;
    report.events = events;
    report.per_event.resize(std::size_t(events));
    report.averaged = DensityMatrix(cutoff);
    report.mean_trajectory.assign(std::size_t(beam.n_electrons), TrajectoryStat{});

    std::vector<double> traj_sum(std::size_t(beam.n_electrons), 0.0);
    std::vector<double> traj_sq(std::size_t(beam.n_electrons), 0.0);

    // fixed-size chunks keep the reduction order independent of threading
    const int chunk = 32;
    std::vector<BuildupResult> slot(std::size_t(std::min(chunk, events)));
    for (int base = 0; base < events; base += chunk) {
        const int count = std::min(chunk, events - base);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i) {
            const std::uint64_t seed = derive_event_seed(master_seed, std::uint64_t(base + i));
            slot[std::size_t(i)] = run_buildup(beam, coupling, cutoff, seed, eps_tr);
        }
        for (int i = 0; i < count; ++i) {
            const int index = base + i;
            const BuildupResult& run = slot[std::size_t(i)];
            const StepRecord& last = run.trajectory.back();
            report.per_event[std::size_t(index)] =
                EventSummary{std::uint64_t(index), derive_event_seed(master_seed, std::uint64_t(index)),
                             last.mean_n, last.dq2, last.dp2, last.trace_deficit};
            auto& acc = report.averaged.entries();
            const auto& src = run.state.entries();
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += src[k];
            for (std::size_t j = 0; j < run.trajectory.size(); ++j) {
                traj_sum[j] += run.trajectory[j].mean_n;
                traj_sq[j] += run.trajectory[j].mean_n * run.trajectory[j].mean_n;
            }
        }
    }

    const double inv = 1.0 / double(events);
    for (auto& v : report.averaged.entries()) v *= inv;
    for (std::size_t j = 0; j < traj_sum.size(); ++j) {
        const double mean = traj_sum[j] * inv;
        const double var = std::max(0.0, traj_sq[j] * inv - mean * mean);
        report.mean_trajectory[j] =
            TrajectoryStat{int(j) + 1, mean,
                           events > 1 ? std::sqrt(var / double(events - 1)) : 0.0};
    }
    return report;
}

SumRuleReport sum_rule_checks(double g_mag, int n_electrons, int cutoff) {
    SumRuleReport report;
    const CouplingSpec coupling{cdouble{g_mag, 0.0}, {}};
    const DisplacementMatrix m = displacement_matrix(coupling.g, cutoff);

    auto uniform_run = [&](double b_mag) {
        DensityMatrix rho(cutoff);
        rho(0, 0) = 1.0;
        const BunchingSpectrum spec = BunchingSpectrum::from_magnitudes({b_mag}, 0.0);
        for (int j = 0; j < n_electrons; ++j) rho = scatter(rho, spec, m, 1e-6);
        return rho;
    };

    const DensityMatrix unmod = uniform_run(0.0);
    report.zero_order_sum = unmod.trace_real();
    report.zero_order_mean = mean_photon(unmod);

    // slope of <n> and trace against x = N(N-1) b^2, Richardson-extrapolated
    // from b = 0.02 and 0.04
    const double ne = double(n_electrons);
    auto slope_at = [&](double b) {
        const DensityMatrix rho = uniform_run(b);
        const double x = ne * (ne - 1.0) * b * b;
        return std::pair<double, double>{(mean_photon(rho) - report.zero_order_mean) / x,
                                         (rho.trace_real() - report.zero_order_sum) / x};
    };
    const auto [m1, t1] = slope_at(0.02);
    const auto [m2, t2] = slope_at(0.04);
    report.pair_mean_slope = (4.0 * m1 - m2) / 3.0;
    report.pair_trace_slope = (4.0 * t1 - t2) / 3.0;
    return report;
}

}  // namespace qews

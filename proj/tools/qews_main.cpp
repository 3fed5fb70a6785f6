// Command-line front end: seeded, reproducible runs of the emission
// simulator with plot-ready CSV/JSON outputs. Configuration comes from a
// JSON document (a file path or a named preset); individual keys can be
// overridden with --set dotted.path=value.

#include "qews/beam.hpp"
#include "qews/classical.hpp"
#include "qews/constants.hpp"
#include "qews/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <omp.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

using json = nlohmann::json;
using namespace qews;

namespace {

constexpr const char* kToolVersion = "qews 1.0.0";

#ifndef QEWS_PRESET_DIR
#define QEWS_PRESET_DIR "presets"
#endif

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_config(const std::string& ref) {
    namespace fs = std::filesystem;
    std::vector<fs::path> candidates{ref, fs::path(QEWS_PRESET_DIR) / (ref + ".json"),
                                     fs::path(QEWS_PRESET_DIR) / ref};
    for (const auto& path : candidates) {
        if (fs::exists(path) && fs::is_regular_file(path)) {
            std::ifstream in(path);
            if (!in) throw CliError("cannot read config " + path.string());
            try {
                return json::parse(in);
            } catch (const json::parse_error& err) {
                throw std::invalid_argument("config parse error in " + path.string() + ": " +
                                            err.what());
            }
        }
    }
    throw std::invalid_argument("config not found (tried path and presets): " + ref);
}

void apply_override(json& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("--set expects key=value, got: " + assignment);
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    json* node = &config;
    std::size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string part = key.substr(pos, dot - pos);
        if (part.empty()) throw std::invalid_argument("--set: empty key segment in " + key);
        if (dot == std::string::npos) {
            json parsed;
            try {
                parsed = json::parse(value);
            } catch (const json::parse_error&) {
                parsed = value;  // plain string
            }
            (*node)[part] = parsed;
            return;
        }
        node = &(*node)[part];
        pos = dot + 1;
    }
}

QEWParams qew_from_json(const json& node) {
    QEWParams p;
    if (node.contains("physical")) {
        const json& ph = node.at("physical");
        QEWPhysical phys;
        phys.energy_kev = ph.at("energy_kev").get<double>();
        phys.wavelength_nm = ph.at("wavelength_nm").get<double>();
        phys.sigma_t_s = ph.at("sigma_t_s").get<double>();
        phys.drift_m = ph.at("drift_m").get<double>();
        p = QEWParams::from_physical(phys, node.value("g_l", 0.0), node.value("phi_0", 0.0),
                                     node.value("detuning_ratio", 0.0));
    } else {
        p.g_l = node.value("g_l", 0.0);
        p.sigma_ratio = node.value("sigma_ratio", 0.05);
        p.t_d_ratio = node.value("t_d_ratio", 0.0);
        p.phi_0 = node.value("phi_0", 0.0);
        p.detuning_ratio = node.value("detuning_ratio", 0.0);
        p.carrier_phase = node.value("carrier_phase", 0.0);
    }
    p.check();
    return p;
}

CouplingSpec coupling_from_json(const json& node) {
    CouplingSpec c;
    const json& g = node.at("g");
    if (!g.is_array() || g.size() != 2)
        throw std::invalid_argument("coupling.g must be [re, im]");
    c.g = cdouble{g[0].get<double>(), g[1].get<double>()};
    return c;
}

BeamMode beam_mode_from_string(const std::string& name) {
    if (name == "unmodulated") return BeamMode::unmodulated;
    if (name == "correlated") return BeamMode::correlated;
    if (name == "uncorrelated") return BeamMode::uncorrelated;
    if (name == "partially_coherent") return BeamMode::partially_coherent;
    throw std::invalid_argument("unknown beam.mode: " + name);
}

BeamSpec beam_from_json(const json& config) {
    const json& node = config.at("beam");
    BeamSpec beam;
    beam.n_electrons = node.at("n_electrons").get<int>();
    beam.mode = beam_mode_from_string(node.at("mode").get<std::string>());
    beam.phi_l = node.value("phi_l", 0.0);
    beam.phi_mean = node.value("phi_mean", 0.0);
    beam.phi_sigma = node.value("phi_sigma", 0.0);
    beam.r_max = node.value("r_max", 8);
    beam.mean_spacing = node.value("mean_spacing", 1.0);
    if (beam.mode != BeamMode::unmodulated) beam.qew = qew_from_json(config.at("qew"));
    beam.check();
    return beam;
}

int resolve_cutoff(const json& config, double predicted_mean) {
    const int requested = config.value("cutoff", 0);
    return requested > 0 ? requested : default_cutoff(predicted_mean);
}

double predicted_beam_mean(const BeamSpec& beam, const CouplingSpec& coupling) {
    // size for the fully correlated growth; the other modes stay below it
    const double b1 = beam.mode == BeamMode::unmodulated
                          ? 0.0
                          : std::abs(bunching_amplitude(beam.qew, 1));
    return expected_photon_correlated(beam.n_electrons, std::abs(coupling.g), b1);
}

json run_metadata(const json& config, std::uint64_t seed) {
    json meta;
    meta["schema_version"] = io::schema_version;
    meta["tool_version"] = kToolVersion;
    meta["seed"] = seed;
    meta["params"] = config;
    return meta;
}

WignerGridSpec wigner_spec_from_json(const json& config, double mean_n) {
    const json node = config.value("wigner", json::object());
    const int samples = node.value("samples", 201);
    const double half = node.value("half_width", 0.0);
    WignerGridSpec spec = default_wigner_grid(mean_n, samples);
    if (half > 0.0) {
        spec.q_min = spec.p_min = -half;
        spec.q_max = spec.p_max = half;
    }
    return spec;
}

bool wigner_enabled(const json& config) {
    return config.value("wigner", json::object()).value("enable", false);
}

void emit_wigner(const DensityMatrix& state, const json& config, const json& meta,
                 const std::filesystem::path& out_dir, const std::string& stem) {
    const WignerGridSpec spec = wigner_spec_from_json(config, mean_photon(state));
    const WignerGrid grid = wigner(state, spec);
    io::write_wigner_csv(out_dir / (stem + ".csv"), grid, io::csv_preamble(meta));
    io::write_wigner_json(out_dir / (stem + ".json"), grid, meta);
}

void emit_statistics(const DensityMatrix& state, const json& meta,
                     const std::filesystem::path& path, double poisson_mean,
                     double thermal_mean) {
    const std::vector<double> stats = photon_statistics(state);
    std::vector<std::string> header{"n", "p_n"};
    if (poisson_mean >= 0.0) header.push_back("poisson_reference");
    if (thermal_mean >= 0.0) header.push_back("bose_einstein_reference");
    std::vector<std::vector<double>> rows;
    for (std::size_t n = 0; n < stats.size(); ++n) {
        std::vector<double> row{double(n), stats[n]};
        if (poisson_mean >= 0.0)
            row.push_back(std::exp(-poisson_mean + double(n) * std::log(poisson_mean) -
                                   std::lgamma(double(n) + 1.0)));
        if (thermal_mean >= 0.0)
            row.push_back(std::pow(thermal_mean / (thermal_mean + 1.0), double(n)) /
                          (thermal_mean + 1.0));
        rows.push_back(std::move(row));
    }
    io::write_csv(path, header, rows, io::csv_preamble(meta));
}

int cmd_single(const json& config, std::uint64_t seed, const std::filesystem::path& out_dir) {
    const CouplingSpec coupling = coupling_from_json(config.at("coupling"));
    const QEWParams qew = qew_from_json(config.at("qew"));
    const int r_max = config.value("r_max", 8);
    const int cutoff = resolve_cutoff(config, std::norm(coupling.g));
    const json meta = run_metadata(config, seed);

    const BunchingSpectrum spec = bunching_spectrum(qew, r_max, Picture::schrodinger);
    const DisplacementMatrix m = displacement_matrix(coupling.g, cutoff);
    DensityMatrix vac(cutoff);
    vac(0, 0) = 1.0;
    const DensityMatrix state = scatter(vac, spec, m);

    io::write_density_json(out_dir / "state.json", state, meta);
    emit_statistics(state, meta, out_dir / "photon_statistics.csv", std::norm(coupling.g), -1.0);
    if (wigner_enabled(config)) emit_wigner(state, config, meta, out_dir, "wigner");
    return 0;
}

void write_trajectory(const std::filesystem::path& path, const BuildupResult& run,
                      const BeamSpec& beam, const CouplingSpec& coupling, const json& meta) {
    const double g_mag = std::abs(coupling.g);
    const double b1 = beam.mode == BeamMode::unmodulated
                          ? 0.0
                          : std::abs(bunching_amplitude(beam.qew, 1));
    std::vector<std::vector<double>> rows;
    for (const StepRecord& step : run.trajectory) {
        const double closed =
            beam.mode == BeamMode::correlated || beam.mode == BeamMode::partially_coherent
                ? expected_photon_correlated(step.electron, g_mag, b1)
                : double(step.electron) * g_mag * g_mag;
        rows.push_back({double(step.electron), step.mean_n, step.dq2, step.dp2,
                        0.5 * (step.dq2 + step.dp2), 0.5 * (step.dq2 - step.dp2),
                        step.trace_deficit, closed});
    }
    io::write_csv(path,
                  {"electron", "mean_n", "dq2", "dp2", "dc2", "dr2", "trace_deficit",
                   "closed_form_mean"},
                  rows, io::csv_preamble(meta));
}

int cmd_buildup(const json& config, std::uint64_t seed, const std::filesystem::path& out_dir) {
    const CouplingSpec coupling = coupling_from_json(config.at("coupling"));
    const BeamSpec beam = beam_from_json(config);
    const int cutoff = resolve_cutoff(config, predicted_beam_mean(beam, coupling));
    const json meta = run_metadata(config, seed);

    const BuildupResult run = run_buildup(beam, coupling, cutoff, seed);
    write_trajectory(out_dir / "trajectory.csv", run, beam, coupling, meta);
    io::write_density_json(out_dir / "state.json", run.state, meta);
    const double thermal =
        beam.mode == BeamMode::unmodulated
            ? beam.n_electrons * std::norm(coupling.g)
            : -1.0;
    emit_statistics(run.state, meta, out_dir / "photon_statistics.csv", -1.0, thermal);
    if (wigner_enabled(config)) emit_wigner(run.state, config, meta, out_dir, "wigner");
    return 0;
}

int cmd_ensemble(const json& config, std::uint64_t seed, const std::filesystem::path& out_dir) {
    const CouplingSpec coupling = coupling_from_json(config.at("coupling"));
    const BeamSpec beam = beam_from_json(config);
    const int events = config.at("events").get<int>();
    const int cutoff = resolve_cutoff(config, predicted_beam_mean(beam, coupling));
    const json meta = run_metadata(config, seed);

    const EnsembleReport report = ensemble_run(beam, coupling, cutoff, events, seed);

    std::vector<std::vector<double>> event_rows;
    for (const EventSummary& ev : report.per_event)
        event_rows.push_back({double(ev.event_index), double(ev.seed), ev.mean_n, ev.dq2, ev.dp2,
                              ev.trace_deficit});
    io::write_csv(out_dir / "events.csv",
                  {"event", "event_seed", "mean_n", "dq2", "dp2", "trace_deficit"}, event_rows,
                  io::csv_preamble(meta));

    const double g_mag = std::abs(coupling.g);
    std::vector<std::vector<double>> traj_rows;
    for (const TrajectoryStat& stat : report.mean_trajectory)
        traj_rows.push_back({double(stat.electron), stat.mean, stat.std_error,
                             double(stat.electron) * g_mag * g_mag});
    io::write_csv(out_dir / "mean_trajectory.csv",
                  {"electron", "mean_n", "std_error", "linear_reference"}, traj_rows,
                  io::csv_preamble(meta));

    io::write_density_json(out_dir / "averaged_state.json", report.averaged, meta);
    if (wigner_enabled(config))
        emit_wigner(report.averaged, config, meta, out_dir, "averaged_wigner");
    return 0;
}

int cmd_bunching(const json& config, std::uint64_t seed, const std::filesystem::path& out_dir) {
    const QEWParams qew = qew_from_json(config.at("qew"));
    const json node = config.value("bunching", json::object());
    const int harmonics = node.value("harmonics", 4);
    const int count = node.value("sweep_count", 1);
    const double sweep_max = node.value("sweep_max_ratio", 0.5);
    const json meta = run_metadata(config, seed);

    std::vector<std::vector<double>> rows;
    for (int i = 0; i < count; ++i) {
        QEWParams p = qew;
        if (count > 1) {
            p.physical.reset();
            p.t_d_ratio = sweep_max * (i + 1) / double(count);
        }
        const MomentumAmplitudes amps = momentum_amplitudes(p);
        for (int n = 1; n <= harmonics; ++n) {
            const cdouble analytic = bunching_analytic(p, n);
            const cdouble numeric = bunching_numeric(amps, n);
            rows.push_back({double(n), p.t_d_ratio, analytic.real(), analytic.imag(),
                            numeric.real(), numeric.imag(), std::abs(analytic - numeric)});
        }
    }
    io::write_csv(out_dir / "bunching.csv",
                  {"n", "t_d_ratio", "analytic_re", "analytic_im", "numeric_re", "numeric_im",
                   "abs_error"},
                  rows, io::csv_preamble(meta));

    if (node.value("profile", false)) {
        const MomentumAmplitudes amps = momentum_amplitudes(qew);
        const ZetaGrid grid = default_zeta_grid(qew);
        const std::vector<double> zeta = grid.points();
        const std::vector<double> exact = density_profile_exact(amps, grid, qew);
        const std::vector<double> approx = density_profile_approx(qew, grid);
        std::vector<std::string> header{"zeta", "exact", "approx"};
        const bool physical = qew.physical.has_value();
        double z0 = 0.0, inv_dk = 0.0;
        if (physical) {
            const QEWDerived d = derive_physical(*qew.physical);
            z0 = d.v0 * d.t_d;
            inv_dk = 1.0 / d.delta_k;
            header.insert(header.begin() + 1, "z_m");
        }
        std::vector<std::vector<double>> profile_rows;
        for (std::size_t i = 0; i < zeta.size(); ++i) {
            std::vector<double> row{zeta[i]};
            if (physical) row.push_back(z0 + zeta[i] * inv_dk);
            row.push_back(exact[i]);
            row.push_back(approx[i]);
            profile_rows.push_back(std::move(row));
        }
        io::write_csv(out_dir / "profile.csv", header, profile_rows, io::csv_preamble(meta));
    }
    return 0;
}

int cmd_classical(const json& config, std::uint64_t seed, const std::filesystem::path& out_dir) {
    const json& node = config.at("classical");
    ClassicalModeSpec mode;
    mode.eta_q = node.at("eta_q").get<double>();
    mode.n_eff = node.at("n_eff").get<double>();
    mode.length = node.at("length_m").get<double>();
    mode.circumference = node.at("circumference_m").get<double>();
    mode.mode_area = node.at("mode_area_m2").get<double>();
    mode.omega = 2.0 * std::numbers::pi * constants::speed_of_light /
                 (node.at("wavelength_um").get<double>() * 1e-6);
    const json meta = run_metadata(config, seed);

    const double classical = spontaneous_photons_per_electron(mode);
    const double quantum = qed_coupling_magnitude(mode);

    json report;
    report["schema_version"] = io::schema_version;
    report["metadata"] = meta;
    report["classical_photons_per_electron"] = classical;
    report["qed_coupling_magnitude_sq"] = quantum;
    report["relative_difference"] = std::abs(classical - quantum) / quantum;
    report["coupling_magnitude"] = std::sqrt(quantum);
    report["spectral_energy_per_mode"] = single_electron_spectral_energy(mode);
    report["longitudinal_mode_spacing"] = longitudinal_mode_spacing(mode);
    io::write_json(out_dir / "equivalence_report.json", report);

    const int max_electrons = node.value("max_electrons", 50);
    std::vector<std::vector<double>> rows;
    for (int ne = 1; ne <= max_electrons; ++ne) {
        const BeamEmission random_beam = beam_emission(ne, cdouble{0.0, 0.0}, mode);
        const BeamEmission bunched = beam_emission(ne, cdouble{1.0, 0.0}, mode);
        rows.push_back({double(ne), random_beam.spontaneous, bunched.superradiant});
    }
    io::write_csv(out_dir / "scaling.csv", {"n_electrons", "spontaneous", "superradiant_mb1"},
                  rows, io::csv_preamble(meta));
    return 0;
}

int cmd_wigner(const json& config, std::uint64_t seed, const std::filesystem::path& out_dir) {
    const std::string input = config.at("input").get<std::string>();
    const io::DensityFile file = io::read_density_json(input);
    const json meta = run_metadata(config, seed);
    emit_wigner(file.state, config, meta, out_dir, "wigner");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cavity photon emission by modulated electron wavepackets"};
    app.require_subcommand(1);

    std::string config_ref;
    std::vector<std::string> overrides;
    std::string out_dir;
    std::int64_t seed_flag = -1;
    int jobs = 0;

    const std::vector<std::string> names{"single",   "buildup",  "ensemble",
                                         "bunching", "classical", "wigner"};
    for (const auto& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_ref, "config file path or preset name")->required();
        sub->add_option("--set", overrides, "override config keys, dotted.path=value");
        sub->add_option("--seed", seed_flag, "master seed (overrides config)");
        sub->add_option("--jobs", jobs, "worker threads for parallel sections");
        sub->add_option("--out", out_dir, "output directory")->required();
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        json config = load_config(config_ref);
        for (const auto& assignment : overrides) apply_override(config, assignment);
        if (config.contains("command") && config["command"].get<std::string>() != command)
            throw std::invalid_argument("config is for command '" +
                                        config["command"].get<std::string>() +
                                        "', invoked as '" + command + "'");
        config["command"] = command;

        std::uint64_t seed = config.value("seed", std::uint64_t{1});
        if (seed_flag >= 0) seed = std::uint64_t(seed_flag);
        config["seed"] = seed;
        if (jobs > 0) omp_set_num_threads(jobs);

        const std::filesystem::path out(out_dir);
        std::filesystem::create_directories(out);

        if (command == "single") return cmd_single(config, seed, out);
        if (command == "buildup") return cmd_buildup(config, seed, out);
        if (command == "ensemble") return cmd_ensemble(config, seed, out);
        if (command == "bunching") return cmd_bunching(config, seed, out);
        if (command == "classical") return cmd_classical(config, seed, out);
        if (command == "wigner") return cmd_wigner(config, seed, out);
        throw std::invalid_argument("unknown command " + command);
    } catch (const numerical_error& err) {
        std::cerr << "numerical budget breach: " << err.what() << "\n  "
                  << err.diagnostics.summary() << "\n";
        return 3;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "i/o error: " << err.what() << "\n";
        return 4;
    }
}

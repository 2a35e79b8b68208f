#include "cpc/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "cpc/calibration.hpp"
#include "cpc/circuits.hpp"
#include "cpc/detectors.hpp"
#include "cpc/evolution.hpp"
#include "cpc/rng.hpp"
#include "cpc/serialize.hpp"
#include "cpc/sources.hpp"
#include "cpc/version.hpp"

namespace cpc::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string csv_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file '" + tmp + "'");
        out << content;
        if (!out) throw std::runtime_error("failed writing '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("failed to move output into place at '" + path + "'");
}

struct OutputWriter {
    std::string path;
    json config = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    json manifest() const {
        json m;
        m["tool"] = kToolName;
        m["version"] = kToolVersion;
        m["config"] = config;
        const auto elapsed = std::chrono::steady_clock::now() - start;
        m["duration_ms"] =
            std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0;
        return m;
    }

    void write_json(json result) const {
        json doc;
        doc["manifest"] = manifest();
        doc["result"] = std::move(result);
        write_atomic(path, doc.dump(2) + "\n");
        std::cout << path << "\n";
    }

    void write_csv(const std::string& header, const std::vector<std::string>& rows) const {
        std::ostringstream out;
        out << "# manifest: " << manifest().dump() << "\n";
        out << header << "\n";
        for (const auto& row : rows) out << row << "\n";
        write_atomic(path, out.str());
        std::cout << path << "\n";
    }
};

std::string resolve_output(const std::string& requested, const std::string& subcommand,
                           const std::string& format) {
    if (!requested.empty()) return requested;
    return default_output_dir() + "/" + subcommand + "." + format;
}

std::map<std::string, int> parse_occupations(const std::string& text,
                                             const std::vector<std::string>& modes) {
    std::vector<int> values;
    if (text.find(',') != std::string::npos || text.find(':') != std::string::npos) {
        // "a:1,b:0" or "1,0,0"
        std::stringstream ss(text);
        std::string item;
        std::map<std::string, int> named;
        bool any_named = false;
        bool any_positional = false;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon != std::string::npos) {
                any_named = true;
                named[item.substr(0, colon)] = std::stoi(item.substr(colon + 1));
            } else {
                any_positional = true;
                values.push_back(std::stoi(item));
            }
        }
        if (any_named && any_positional)
            throw std::invalid_argument("occupations '" + text +
                                        "' mix named and positional entries");
        if (any_named) return named;
    } else {
        for (char c : text) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("cannot parse occupations '" + text + "'");
            values.push_back(c - '0');
        }
    }
    if (values.size() > modes.size())
        throw std::invalid_argument("more occupations than modes in '" + text + "'");
    std::map<std::string, int> occ;
    for (std::size_t i = 0; i < values.size(); ++i) occ[modes[i]] = values[i];
    return occ;
}

json distribution_to_json(const std::map<int, double>& dist) {
    json j = json::object();
    for (const auto& [n, p] : dist) j[std::to_string(n)] = p;
    return j;
}

// ---------------------------------------------------------------------------
// Subcommand option bags

struct EvolveOptions {
    std::string input = "100";
    std::string modes = "a,b,c";
    std::string theta = "0.5pi";
    std::string coupling = "nondegenerate";
    double phase_re = 1.0, phase_im = 0.0;
    int trace_n = 0;
    std::string trace_theta_max = "2pi";
    int samples = 0;
};

struct ScanOptions {
    int n = 2;
    double theta_max = 2.0;  // in pi units (matches the table convention)
    double grid = 1e-3;      // in pi units
    double floor = 0.5;
};

struct SourceOptions {
    double alpha_sq = 1.5;
    double alpha_phase = 0.0;
    int steps = 5;
    std::string theta = "1pi";
    std::string thetas;  // comma-separated per-step override
    bool no_doubler = false;
    double tail_tol = 1e-12;
};

struct DcOptions {
    double alpha_sq = -1.0;
    std::string mixture;
    int m = 1;
};

struct CascadeOptions {
    int depth = 3;
    int k = 1;
    double eta = 0.5;
    double dark = 0.0;
    double eta_dbl = 1.0;
    bool residual = false;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    double photon_prob = 1e-2;
    bool sweep = false;
};

struct CalibrateOptions {
    std::string params_file;
    double power = 1000.0;
};

struct CircuitRunOptions {
    std::string circuit_file;
    std::string input;
    std::string input_file;
};

// ---------------------------------------------------------------------------

void run_evolve(const EvolveOptions& opt, OutputWriter& writer, const std::string& format) {
    if (opt.samples > 0) {
        // Population trace of the |n00> input.
        const double theta_max = parse_theta_flag(opt.trace_theta_max);
        const auto trace = population_trace(opt.trace_n, theta_max, opt.samples);
        if (format == "csv") {
            std::vector<std::string> rows;
            rows.reserve(trace.size());
            for (const auto& [theta, p] : trace)
                rows.push_back(csv_double(theta / kPi) + "," + csv_double(p));
            writer.write_csv("theta_over_pi,probability", rows);
        } else {
            json points = json::array();
            for (const auto& [theta, p] : trace)
                points.push_back(json{{"theta_over_pi", theta / kPi}, {"probability", p}});
            writer.write_json(json{{"n", opt.trace_n}, {"trace", std::move(points)}});
        }
        return;
    }

    std::vector<std::string> modes;
    std::stringstream ss(opt.modes);
    std::string mode;
    while (std::getline(ss, mode, ',')) modes.push_back(mode);

    Coupling coupling;
    const complexd phase{opt.phase_re, opt.phase_im};
    if (opt.coupling == "nondegenerate") {
        if (modes.size() < 3) throw std::invalid_argument("nondegenerate coupling needs 3 modes");
        coupling = Coupling::nondegenerate(modes[0], modes[1], modes[2], phase);
    } else if (opt.coupling == "degenerate") {
        if (modes.size() < 2) throw std::invalid_argument("degenerate coupling needs 2 modes");
        coupling = Coupling::degenerate(modes[0], modes[1], phase);
    } else if (opt.coupling == "converter") {
        if (modes.size() < 2) throw std::invalid_argument("converter coupling needs 2 modes");
        coupling = Coupling::converter(modes[0], modes[1], phase);
    } else {
        throw std::invalid_argument("unknown coupling '" + opt.coupling + "'");
    }

    const auto registry = make_registry(modes);
    const auto occ = parse_occupations(opt.input, modes);
    const auto state = make_fock(registry, occ);
    const auto result = evolve(state, coupling, parse_theta_flag(opt.theta));

    json out;
    out["theta_over_pi"] = result.theta / kPi;
    out["subspace_dims"] = result.subspace_dims;
    out["state"] = state_to_json(result.state);
    writer.write_json(std::move(out));
}

void run_scan(const ScanOptions& opt, OutputWriter& writer, const std::string& format) {
    const auto peaks = revival_scan(opt.n, opt.theta_max, opt.grid, opt.floor);
    if (format == "csv") {
        std::vector<std::string> rows;
        rows.reserve(peaks.size());
        for (const auto& p : peaks)
            rows.push_back(csv_double(p.theta_over_pi) + "," + csv_double(p.transmission));
        writer.write_csv("theta_over_pi,transmission", rows);
    } else {
        json list = json::array();
        for (const auto& p : peaks)
            list.push_back(
                json{{"theta_over_pi", p.theta_over_pi}, {"transmission", p.transmission}});
        writer.write_json(json{{"n", opt.n}, {"peaks", std::move(list)}});
    }
}

json source_report_to_json(const SourceReport& report) {
    json j;
    j["production_efficiency"] = report.production_efficiency;
    j["absolute_efficiency"] = report.absolute_efficiency;
    j["filter_pass_probability"] = report.filter_pass_probability;
    j["single_photon_fidelity"] = report.single_photon_fidelity;
    j["higher_order_mass"] = report.higher_order_mass;
    j["pre_herald_higher_order_mass"] = report.pre_herald_higher_order_mass;
    j["steps"] = report.steps;
    j["heralded"] = report.heralded;
    j["output_distribution"] = distribution_to_json(report.output_distribution);
    json steps = json::array();
    for (const auto& dist : report.step_distributions)
        steps.push_back(distribution_to_json(dist));
    j["step_distributions"] = std::move(steps);
    return j;
}

void run_source(const SourceOptions& opt, OutputWriter& writer, const std::string& format) {
    const complexd alpha =
        std::sqrt(opt.alpha_sq) * std::exp(complexd(0.0, opt.alpha_phase));
    TruncationPolicy policy;
    policy.tail_tolerance = opt.tail_tol;

    SourceReport report;
    if (!opt.thetas.empty()) {
        std::vector<double> thetas;
        std::stringstream ss(opt.thetas);
        std::string item;
        while (std::getline(ss, item, ',')) thetas.push_back(parse_theta_flag(item));
        report = heralded_source(alpha, thetas, !opt.no_doubler, policy);
    } else {
        report = heralded_source(alpha, opt.steps, parse_theta_flag(opt.theta), !opt.no_doubler,
                                 policy);
    }

    if (format == "csv") {
        // step, P0..Pmax of the filtered mode-a distribution
        int max_n = 0;
        for (const auto& dist : report.step_distributions)
            for (const auto& [n, p] : dist) max_n = std::max(max_n, n);
        std::string header = "step";
        for (int n = 0; n <= max_n; ++n) header += ",P" + std::to_string(n);
        std::vector<std::string> rows;
        for (std::size_t step = 0; step < report.step_distributions.size(); ++step) {
            std::string row = std::to_string(step);
            const auto& dist = report.step_distributions[step];
            for (int n = 0; n <= max_n; ++n) {
                auto it = dist.find(n);
                row += "," + csv_double(it == dist.end() ? 0.0 : it->second);
            }
            rows.push_back(std::move(row));
        }
        writer.write_csv(header, rows);
    } else {
        writer.write_json(source_report_to_json(report));
    }
}

void run_dc(const DcOptions& opt, OutputWriter& writer) {
    DcInput input = DcInput::coherent(0.0);
    if (!opt.mixture.empty()) {
        std::map<int, double> weights;
        std::stringstream ss(opt.mixture);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("mixture entries must be n:probability");
            weights[std::stoi(item.substr(0, colon))] = std::stod(item.substr(colon + 1));
        }
        input = DcInput::fock_mixture(std::move(weights));
    } else if (opt.alpha_sq >= 0.0) {
        input = DcInput::coherent(std::sqrt(opt.alpha_sq));
    } else {
        throw std::invalid_argument("improved-dc needs --alpha-sq or --mixture");
    }

    const auto report = improved_dc(input, opt.m);
    json j;
    j["m"] = opt.m;
    j["theta_over_pi"] = 2.0 * opt.m / std::sqrt(6.0);
    j["single_pair_probability"] = report.single_pair_probability;
    j["total_emission_probability"] = report.total_emission_probability;
    j["heralded_fidelity"] = report.heralded_fidelity;
    j["spdc_reference"] = json{
        {"single_pair_probability", report.spdc_reference.single_pair_probability},
        {"total_emission_probability", report.spdc_reference.total_emission_probability},
        {"heralded_fidelity", report.spdc_reference.heralded_fidelity}};
    writer.write_json(std::move(j));
}

void run_cascade(const CascadeOptions& opt, OutputWriter& writer, const std::string& format) {
    const CascadeSpec spec{opt.depth, opt.k, opt.eta_dbl, opt.residual};
    const DetectorModel model{opt.eta, opt.dark};

    if (opt.sweep && format == "csv") {
        const int n = 1 << opt.depth;
        std::vector<std::string> rows;
        for (int k = 1; k <= n; ++k) {
            CascadeSpec s = spec;
            s.k = k;
            rows.push_back(std::to_string(k) + "," + csv_double(effective_efficiency(s, model)) +
                           "," + csv_double(dark_click_probability(s, model)));
        }
        writer.write_csv("k,effective_efficiency,dark_click_probability", rows);
        return;
    }

    json j;
    j["spec"] = json{{"depth", opt.depth},
                     {"k", opt.k},
                     {"eta_dbl", opt.eta_dbl},
                     {"detect_residual", opt.residual}};
    j["model"] = json{{"eta", opt.eta}, {"dark_prob", opt.dark}};
    j["analytic"] = json{{"effective_efficiency", effective_efficiency(spec, model)},
                         {"dark_click_probability", dark_click_probability(spec, model)}};
    if (opt.trials > 0) {
        const auto mc = simulate_counts(spec, model, opt.trials, opt.photon_prob, opt.seed);
        j["monte_carlo"] = json{{"trials", mc.trials},
                                {"signal_counts", mc.signal_counts},
                                {"noise_counts", mc.noise_counts},
                                {"snr", mc.snr},
                                {"seed", mc.seed},
                                {"rng", kRngAlgorithm}};
    }
    writer.write_json(std::move(j));
}

void run_calibrate(const CalibrateOptions& opt, OutputWriter& writer) {
    std::ifstream in(opt.params_file);
    if (!in) throw std::runtime_error("cannot open params file '" + opt.params_file + "'");
    json j;
    in >> j;

    ExperimentParams params;
    params.pair_rate_per_s_per_mw = j.at("pair_rate_per_s_per_mW").get<double>();
    params.input_flux_per_s = j.at("input_flux_per_s").get<double>();
    params.arm_transmission_1 = j.at("arm_transmission_1").get<double>();
    params.arm_transmission_2 = j.at("arm_transmission_2").get<double>();
    params.pump_power_mw = opt.power;

    const auto report = calibrate(params);
    json out;
    out["kappa_per_sqrt_mw"] = report.kappa;
    out["pump_power_mw"] = opt.power;
    out["theta_at_pump"] = report.theta_at_pump;
    out["small_angle_ok"] = report.small_angle_ok;
    out["power_mw_for_half_pi"] = report.power_mw_for_half_pi;
    out["power_mw_for_pi"] = report.power_mw_for_pi;
    out["note"] = CalibrationReport::kTransmissionNote;
    writer.write_json(std::move(out));
}

void run_circuit(const CircuitRunOptions& opt, OutputWriter& writer) {
    const Circuit circuit = load_circuit_file(opt.circuit_file);

    QuantumState input;
    if (!opt.input_file.empty()) {
        std::ifstream in(opt.input_file);
        if (!in) throw std::runtime_error("cannot open input state file '" + opt.input_file + "'");
        json j;
        in >> j;
        input = state_from_json(j);
    } else if (!opt.input.empty()) {
        std::vector<std::string> modes;
        for (const auto& m : circuit.registry->modes()) modes.push_back(m.name);
        input = circuit_input(circuit, parse_occupations(opt.input, modes));
    } else {
        throw std::invalid_argument("circuit-run needs --input or --input-file");
    }

    const auto result = run(circuit, input);
    json j;
    j["success_probability"] = result.success_probability;
    j["failed"] = result.failed;
    json events = json::array();
    for (const auto& e : result.event_log) {
        events.push_back(json{{"index", e.index},
                              {"kind", e.kind},
                              {"probability", e.probability},
                              {"failed", e.failed}});
    }
    j["event_log"] = std::move(events);
    j["final_state"] = state_to_json(result.final_state);
    writer.write_json(std::move(j));
}

}  // namespace

std::string default_output_dir() {
    if (const char* dir = std::getenv("CPCSIM_OUTPUT_DIR")) return dir;
    return ".";
}

int dispatch(int argc, const char* const* argv) {
    CLI::App app{std::string(kToolName) + " - coherent photon conversion simulator"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string output;
    std::string format;

    EvolveOptions evolve_opt;
    auto* evolve_cmd = app.add_subcommand("evolve", "evolve a Fock input under a CPC coupling");
    evolve_cmd->add_option("--input", evolve_opt.input, "occupations, e.g. 100 or a:1,b:0");
    evolve_cmd->add_option("--modes", evolve_opt.modes, "comma-separated mode names");
    evolve_cmd->add_option("--theta", evolve_opt.theta, "interaction angle (radians or '0.5pi')");
    evolve_cmd->add_option("--coupling", evolve_opt.coupling,
                           "nondegenerate | degenerate | converter");
    evolve_cmd->add_option("--phase-re", evolve_opt.phase_re, "coupling phase, real part");
    evolve_cmd->add_option("--phase-im", evolve_opt.phase_im, "coupling phase, imaginary part");
    evolve_cmd->add_option("--n", evolve_opt.trace_n, "trace: photon number of the |n00> input");
    evolve_cmd->add_option("--theta-max", evolve_opt.trace_theta_max, "trace: scan end");
    evolve_cmd->add_option("--samples", evolve_opt.samples,
                           "trace: sample count (enables population trace output)");

    ScanOptions scan_opt;
    auto* scan_cmd = app.add_subcommand("revival-scan", "locate revival peaks of |n00> inputs");
    scan_cmd->add_option("--n", scan_opt.n, "input photon number")->required();
    scan_cmd->add_option("--theta-max", scan_opt.theta_max, "scan end, in pi units");
    scan_cmd->add_option("--grid", scan_opt.grid, "coarse grid step, in pi units");
    scan_cmd->add_option("--floor", scan_opt.floor, "minimum transmission to report");

    SourceOptions source_opt;
    auto* source_cmd =
        app.add_subcommand("heralded-source", "filtered heralded single-photon pipeline");
    source_cmd->add_option("--alpha-sq", source_opt.alpha_sq, "coherent |alpha|^2");
    source_cmd->add_option("--alpha-phase", source_opt.alpha_phase, "coherent phase (radians)");
    source_cmd->add_option("--steps", source_opt.steps, "number of filter steps");
    source_cmd->add_option("--theta", source_opt.theta, "angle per step");
    source_cmd->add_option("--thetas", source_opt.thetas, "comma-separated per-step angles");
    source_cmd->add_flag("--no-doubler", source_opt.no_doubler,
                         "skip the final doubling + herald");
    source_cmd->add_option("--tail-tol", source_opt.tail_tol, "coherent truncation tolerance");

    DcOptions dc_opt;
    auto* dc_cmd = app.add_subcommand("improved-dc", "pair emission at the two-photon revival");
    dc_cmd->add_option("--alpha-sq", dc_opt.alpha_sq, "coherent |alpha|^2");
    dc_cmd->add_option("--mixture", dc_opt.mixture, "Fock mixture, e.g. 0:0.5,1:0.4,2:0.1");
    dc_cmd->add_option("--m", dc_opt.m, "number of two-photon oscillation periods");

    CascadeOptions cascade_opt;
    auto* cascade_cmd =
        app.add_subcommand("detector-cascade", "doubling-cascade detector analytics");
    cascade_cmd->add_option("--depth", cascade_opt.depth, "cascade depth (n = 2^depth)");
    cascade_cmd->add_option("--k", cascade_opt.k, "coincidence threshold");
    cascade_cmd->add_option("--eta", cascade_opt.eta, "single-detector efficiency");
    cascade_cmd->add_option("--dark", cascade_opt.dark, "dark-count probability");
    cascade_cmd->add_option("--eta-dbl", cascade_opt.eta_dbl, "per-doubling success probability");
    cascade_cmd->add_flag("--residual", cascade_opt.residual, "detect undoubled photons");
    cascade_cmd->add_option("--trials", cascade_opt.trials, "Monte Carlo trials (0 = analytics only)");
    cascade_cmd->add_option("--seed", cascade_opt.seed, "Monte Carlo seed");
    cascade_cmd->add_option("--photon-prob", cascade_opt.photon_prob,
                            "Monte Carlo incident photon probability");
    cascade_cmd->add_flag("--sweep", cascade_opt.sweep, "emit per-k sweep (csv format)");

    CalibrateOptions cal_opt;
    auto* cal_cmd = app.add_subcommand("calibrate", "interaction strength from measured rates");
    cal_cmd->add_option("--params", cal_opt.params_file, "experiment parameters JSON file")
        ->required();
    cal_cmd->add_option("--power", cal_opt.power, "pump power (mW) for the theta projection");

    CircuitRunOptions circuit_opt;
    auto* circuit_cmd = app.add_subcommand("circuit-run", "run a circuit description file");
    circuit_cmd->add_option("--circuit", circuit_opt.circuit_file, "circuit JSON file")->required();
    circuit_cmd->add_option("--input", circuit_opt.input, "input occupations");
    circuit_cmd->add_option("--input-file", circuit_opt.input_file, "input state JSON file");

    for (auto* cmd : {evolve_cmd, scan_cmd, source_cmd, dc_cmd, cascade_cmd, cal_cmd, circuit_cmd}) {
        cmd->add_option("--output", output, "output file path");
        cmd->add_option("--format", format, "json | csv");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (format.empty()) format = (name == "revival-scan") ? "csv" : "json";
    if (format != "json" && format != "csv") {
        std::cerr << R"({"error":{"type":"usage","message":"format must be json or csv"}})"
                  << "\n";
        return 2;
    }

    OutputWriter writer;
    writer.path = resolve_output(output, name, format);

    // Effective (post-default) config echo.
    json cfg;
    cfg["subcommand"] = name;
    cfg["format"] = format;
    if (name == "evolve") {
        cfg["input"] = evolve_opt.input;
        cfg["modes"] = evolve_opt.modes;
        cfg["theta"] = evolve_opt.theta;
        cfg["coupling"] = evolve_opt.coupling;
        cfg["phase"] = json::array({evolve_opt.phase_re, evolve_opt.phase_im});
        if (evolve_opt.samples > 0) {
            cfg["n"] = evolve_opt.trace_n;
            cfg["theta_max"] = evolve_opt.trace_theta_max;
            cfg["samples"] = evolve_opt.samples;
        }
    } else if (name == "revival-scan") {
        cfg["n"] = scan_opt.n;
        cfg["theta_max_over_pi"] = scan_opt.theta_max;
        cfg["grid_over_pi"] = scan_opt.grid;
        cfg["floor"] = scan_opt.floor;
    } else if (name == "heralded-source") {
        cfg["alpha_sq"] = source_opt.alpha_sq;
        cfg["alpha_phase"] = source_opt.alpha_phase;
        cfg["steps"] = source_opt.steps;
        cfg["theta"] = source_opt.theta;
        if (!source_opt.thetas.empty()) cfg["thetas"] = source_opt.thetas;
        cfg["final_doubler"] = !source_opt.no_doubler;
        cfg["tail_tol"] = source_opt.tail_tol;
    } else if (name == "improved-dc") {
        if (!dc_opt.mixture.empty())
            cfg["mixture"] = dc_opt.mixture;
        else
            cfg["alpha_sq"] = dc_opt.alpha_sq;
        cfg["m"] = dc_opt.m;
    } else if (name == "detector-cascade") {
        cfg["depth"] = cascade_opt.depth;
        cfg["k"] = cascade_opt.k;
        cfg["eta"] = cascade_opt.eta;
        cfg["dark"] = cascade_opt.dark;
        cfg["eta_dbl"] = cascade_opt.eta_dbl;
        cfg["residual"] = cascade_opt.residual;
        cfg["trials"] = cascade_opt.trials;
        cfg["seed"] = cascade_opt.seed;
        cfg["photon_prob"] = cascade_opt.photon_prob;
        cfg["sweep"] = cascade_opt.sweep;
    } else if (name == "calibrate") {
        cfg["params"] = cal_opt.params_file;
        cfg["power_mw"] = cal_opt.power;
    } else if (name == "circuit-run") {
        cfg["circuit"] = circuit_opt.circuit_file;
        if (!circuit_opt.input.empty()) cfg["input"] = circuit_opt.input;
        if (!circuit_opt.input_file.empty()) cfg["input_file"] = circuit_opt.input_file;
    }
    writer.config = std::move(cfg);

    try {
        if (name == "evolve")
            run_evolve(evolve_opt, writer, format);
        else if (name == "revival-scan")
            run_scan(scan_opt, writer, format);
        else if (name == "heralded-source")
            run_source(source_opt, writer, format);
        else if (name == "improved-dc")
            run_dc(dc_opt, writer);
        else if (name == "detector-cascade")
            run_cascade(cascade_opt, writer, format);
        else if (name == "calibrate")
            run_calibrate(cal_opt, writer);
        else if (name == "circuit-run")
            run_circuit(circuit_opt, writer);
    } catch (const std::exception& err) {
        json error;
        error["error"] = json{{"type", "runtime"}, {"message", err.what()}};
        std::cerr << error.dump() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace cpc::cli

#include "cpc/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <variant>

namespace cpc {

namespace {

constexpr double kPi = std::numbers::pi;

json occupations_to_json(const FockBasisVector& v) {
    json occ = json::object();
    for (const auto& [mode, n] : v.occupations()) occ[mode] = n;
    return occ;
}

FockBasisVector occupations_from_json(const json& j) {
    std::map<std::string, int> occ;
    for (const auto& [mode, n] : j.items()) occ[mode] = n.get<int>();
    return FockBasisVector(occ);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("not a number: '" + text + "'");
    return value;
}

}  // namespace

json state_to_json(const QuantumState& state) {
    json j;
    json modes = json::array();
    if (state.registry())
        for (const auto& m : state.registry()->modes()) modes.push_back(m.name);
    j["modes"] = modes;
    j["norm_weight"] = state.norm_weight();
    json amps = json::array();
    for (const auto& [v, a] : state.amplitudes()) {
        json entry;
        entry["occupations"] = occupations_to_json(v);
        entry["re"] = a.real();
        entry["im"] = a.imag();
        amps.push_back(std::move(entry));
    }
    j["amplitudes"] = std::move(amps);
    return j;
}

QuantumState state_from_json(const json& j) {
    std::vector<std::string> names;
    for (const auto& m : j.at("modes")) names.push_back(m.get<std::string>());
    std::map<FockBasisVector, complexd> amps;
    for (const auto& entry : j.at("amplitudes")) {
        amps.emplace(occupations_from_json(entry.at("occupations")),
                     complexd{entry.at("re").get<double>(), entry.at("im").get<double>()});
    }
    return QuantumState(make_registry(names), std::move(amps),
                        j.at("norm_weight").get<double>());
}

json coupling_matrix_to_json(const CouplingMatrix& matrix) {
    json j;
    json basis = json::array();
    for (const auto& v : matrix.basis) basis.push_back(occupations_to_json(v));
    j["basis"] = std::move(basis);
    json rows = json::array();
    for (Eigen::Index r = 0; r < matrix.entries.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < matrix.entries.cols(); ++c)
            row.push_back(json::array({matrix.entries(r, c).real(), matrix.entries(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

double parse_theta_pi_suffixed(const std::string& text) {
    if (text.size() < 3 || text.substr(text.size() - 2) != "pi")
        throw std::invalid_argument("theta value '" + text + "' must carry a 'pi' suffix");
    return parse_double(text.substr(0, text.size() - 2)) * kPi;
}

double parse_theta_flag(const std::string& text) {
    if (text.size() >= 3 && text.substr(text.size() - 2) == "pi")
        return parse_double(text.substr(0, text.size() - 2)) * kPi;
    return parse_double(text);
}

std::string format_theta_pi(double theta) {
    json value = theta / kPi;  // shortest round-trip formatting
    return value.dump() + "pi";
}

namespace {

json coupling_to_json(const Coupling& coupling) {
    json j;
    switch (coupling.kind) {
        case CouplingKind::nondegenerate:
            j["coupling"] = "nondegenerate";
            j["modes"] = json::array({coupling.mode_a, coupling.mode_b, coupling.mode_c});
            break;
        case CouplingKind::degenerate:
            j["coupling"] = "degenerate";
            j["modes"] = json::array({coupling.mode_a, coupling.mode_b});
            break;
        case CouplingKind::converter:
            j["coupling"] = "converter";
            j["modes"] = json::array({coupling.mode_a, coupling.mode_c});
            break;
    }
    if (coupling.strength_phase != complexd{1.0, 0.0})
        j["phase"] = json::array({coupling.strength_phase.real(), coupling.strength_phase.imag()});
    return j;
}

}  // namespace

json circuit_to_json(const Circuit& circuit) {
    json j;
    json modes = json::array();
    for (const auto& m : circuit.registry->modes()) modes.push_back(m.name);
    j["modes"] = std::move(modes);

    json elements = json::array();
    for (const auto& element : circuit.elements) {
        json e;
        e["kind"] = element_kind(element);
        if (const auto* gate = std::get_if<CpcGate>(&element)) {
            e.update(coupling_to_json(gate->coupling));
            e["theta"] = format_theta_pi(gate->theta);
        } else if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
            e["modes"] = json::array({bs->mode1, bs->mode2});
            e["transmissivity"] = bs->transmissivity;
        } else if (const auto* ps = std::get_if<PhaseShift>(&element)) {
            e["mode"] = ps->mode;
            e["phase"] = format_theta_pi(ps->phase);
        } else if (const auto* filter = std::get_if<Filter>(&element)) {
            e["policy"] = filter->policy == FilterPolicy::keep_pattern ? "keep-pattern"
                                                                       : "reject-on-occupation";
            json pattern = json::object();
            for (const auto& [mode, n] : filter->pattern) pattern[mode] = n;
            e["pattern"] = std::move(pattern);
        } else if (const auto* herald = std::get_if<Herald>(&element)) {
            e["mode"] = herald->mode;
            e["occupation"] = herald->occupation;
        } else if (const auto* relabel = std::get_if<Relabel>(&element)) {
            json mapping = json::object();
            for (const auto& [from, to] : relabel->mapping) mapping[from] = to;
            e["map"] = std::move(mapping);
        }
        elements.push_back(std::move(e));
    }
    j["elements"] = std::move(elements);
    return j;
}

namespace {

[[noreturn]] void parse_fail(std::size_t index, const std::string& message) {
    throw CircuitParseError("circuit element " + std::to_string(index) + ": " + message);
}

std::string require_mode_name(const json& j, const ModeRegistry& registry, std::size_t index) {
    const auto name = j.get<std::string>();
    if (!registry.contains(name)) parse_fail(index, "undeclared mode '" + name + "'");
    return name;
}

}  // namespace

Circuit circuit_from_json(const json& j) {
    Circuit circuit;
    std::vector<std::string> names;
    if (!j.contains("modes") || !j.at("modes").is_array())
        throw CircuitParseError("circuit file: missing 'modes' array");
    for (const auto& m : j.at("modes")) names.push_back(m.get<std::string>());
    circuit.registry = make_registry(names);
    const ModeRegistry& registry = *circuit.registry;

    if (!j.contains("elements") || !j.at("elements").is_array())
        throw CircuitParseError("circuit file: missing 'elements' array");

    std::size_t index = 0;
    for (const auto& e : j.at("elements")) {
        const auto kind = e.value("kind", std::string{});
        try {
            if (kind == "cpc") {
                const auto shape = e.at("coupling").get<std::string>();
                std::vector<std::string> modes;
                for (const auto& m : e.at("modes"))
                    modes.push_back(require_mode_name(m, registry, index));
                complexd phase{1.0, 0.0};
                if (e.contains("phase"))
                    phase = complexd{e.at("phase").at(0).get<double>(),
                                     e.at("phase").at(1).get<double>()};
                Coupling coupling;
                if (shape == "nondegenerate") {
                    if (modes.size() != 3) parse_fail(index, "nondegenerate coupling needs 3 modes");
                    coupling = Coupling::nondegenerate(modes[0], modes[1], modes[2], phase);
                } else if (shape == "degenerate") {
                    if (modes.size() != 2) parse_fail(index, "degenerate coupling needs 2 modes");
                    coupling = Coupling::degenerate(modes[0], modes[1], phase);
                } else if (shape == "converter") {
                    if (modes.size() != 2) parse_fail(index, "converter coupling needs 2 modes");
                    coupling = Coupling::converter(modes[0], modes[1], phase);
                } else {
                    parse_fail(index, "unknown coupling shape '" + shape + "'");
                }
                circuit.elements.push_back(
                    CpcGate{coupling, parse_theta_pi_suffixed(e.at("theta").get<std::string>())});
            } else if (kind == "beamsplitter") {
                const auto& modes = e.at("modes");
                if (modes.size() != 2) parse_fail(index, "beamsplitter needs 2 modes");
                const double t = e.at("transmissivity").get<double>();
                if (!(t >= 0.0 && t <= 1.0))
                    parse_fail(index, "transmissivity must be in [0,1]");
                circuit.elements.push_back(
                    BeamSplitter{require_mode_name(modes.at(0), registry, index),
                                 require_mode_name(modes.at(1), registry, index), t});
            } else if (kind == "phaseshift") {
                circuit.elements.push_back(
                    PhaseShift{require_mode_name(e.at("mode"), registry, index),
                               parse_theta_pi_suffixed(e.at("phase").get<std::string>())});
            } else if (kind == "filter") {
                const auto policy_name = e.at("policy").get<std::string>();
                FilterPolicy policy;
                if (policy_name == "keep-pattern")
                    policy = FilterPolicy::keep_pattern;
                else if (policy_name == "reject-on-occupation")
                    policy = FilterPolicy::reject_on_occupation;
                else
                    parse_fail(index, "unknown filter policy '" + policy_name + "'");
                std::map<std::string, int> pattern;
                for (const auto& [mode, n] : e.at("pattern").items()) {
                    if (!registry.contains(mode))
                        parse_fail(index, "undeclared mode '" + mode + "'");
                    pattern[mode] = n.get<int>();
                }
                circuit.elements.push_back(Filter{std::move(pattern), policy});
            } else if (kind == "herald") {
                circuit.elements.push_back(
                    Herald{require_mode_name(e.at("mode"), registry, index),
                           e.at("occupation").get<int>()});
            } else if (kind == "relabel") {
                std::map<std::string, std::string> mapping;
                for (const auto& [from, to] : e.at("map").items()) {
                    if (!registry.contains(from))
                        parse_fail(index, "undeclared mode '" + from + "'");
                    mapping[from] = require_mode_name(to, registry, index);
                }
                circuit.elements.push_back(Relabel{std::move(mapping)});
            } else {
                parse_fail(index, "unknown element kind '" + kind + "'");
            }
        } catch (const CircuitParseError&) {
            throw;
        } catch (const std::exception& err) {
            parse_fail(index, err.what());
        }
        ++index;
    }
    return circuit;
}

Circuit load_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CircuitParseError("cannot open circuit file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& err) {
        throw CircuitParseError("circuit file '" + path + "': " + err.what());
    }
    return circuit_from_json(j);
}

void save_circuit_file(const Circuit& circuit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write circuit file '" + path + "'");
    out << circuit_to_json(circuit).dump(2) << "\n";
}

}  // namespace cpc

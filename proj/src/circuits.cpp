#include "cpc/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace cpc {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

void require_mode(const QuantumState& state, const std::string& mode, const char* who) {
    if (!state.registry() || !state.registry()->contains(mode))
        throw std::invalid_argument(std::string(who) + ": mode '" + mode +
                                    "' not in state registry");
}

}  // namespace

const char* element_kind(const CircuitElement& element) {
    switch (element.index()) {
        case 0: return "cpc";
        case 1: return "beamsplitter";
        case 2: return "phaseshift";
        case 3: return "filter";
        case 4: return "herald";
        case 5: return "relabel";
    }
    return "?";
}

QuantumState circuit_input(const Circuit& circuit, const std::map<std::string, int>& occupations) {
    return make_fock(circuit.registry, occupations);
}

QuantumState apply_beam_splitter(const QuantumState& state, const std::string& mode1,
                                 const std::string& mode2, double transmissivity) {
    require_mode(state, mode1, "apply_beam_splitter");
    require_mode(state, mode2, "apply_beam_splitter");
    if (mode1 == mode2)
        throw std::invalid_argument("apply_beam_splitter: modes must be distinct");
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0))
        throw std::invalid_argument("apply_beam_splitter: transmissivity must be in [0,1]");

    const double t = std::sqrt(transmissivity);
    const double r = std::sqrt(1.0 - transmissivity);
    const complexd ir{0.0, r};

    std::map<FockBasisVector, complexd> out;
    for (const auto& [v, a] : state.amplitudes()) {
        const int n1 = v.occupation(mode1);
        const int n2 = v.occupation(mode2);
        if (n1 == 0 && n2 == 0) {
            out[v] += a;
            continue;
        }
        const int total = n1 + n2;
        const double input_norm = std::sqrt(factorial(n1) * factorial(n2));
        // (t a+ + i r b+)^n1 (i r a+ + t b+)^n2 |00>, collected by the output
        // photon number m in mode1.
        for (int m = 0; m <= total; ++m) {
            complexd coeff{0.0, 0.0};
            for (int p = std::max(0, m - n2); p <= std::min(n1, m); ++p) {
                const int q = m - p;
                coeff += binomial(n1, p) * binomial(n2, q) *
                         std::pow(t, p + n2 - q) * std::pow(ir, n1 - p + q);
            }
            if (coeff == complexd{0.0, 0.0}) continue;
            coeff *= std::sqrt(factorial(m) * factorial(total - m)) / input_norm;
            FockBasisVector target = v.with(mode1, m).with(mode2, total - m);
            out[target] += a * coeff;
        }
    }
    std::erase_if(out, [](const auto& kv) { return std::abs(kv.second) < kAmplitudePruneThreshold; });
    return QuantumState(state.registry(), std::move(out), state.norm_weight());
}

QuantumState apply_phase_shift(const QuantumState& state, const std::string& mode, double phase) {
    require_mode(state, mode, "apply_phase_shift");
    std::map<FockBasisVector, complexd> out;
    for (const auto& [v, a] : state.amplitudes())
        out.emplace(v, a * std::exp(complexd(0.0, phase * v.occupation(mode))));
    return QuantumState(state.registry(), std::move(out), state.norm_weight());
}

QuantumState apply_relabel(const QuantumState& state,
                           const std::map<std::string, std::string>& mapping) {
    for (const auto& [from, to] : mapping) {
        require_mode(state, from, "apply_relabel");
        require_mode(state, to, "apply_relabel");
    }
    std::map<FockBasisVector, complexd> out;
    for (const auto& [v, a] : state.amplitudes()) {
        std::map<std::string, int> occ;
        for (const auto& [mode, n] : v.occupations()) {
            auto it = mapping.find(mode);
            const std::string& name = it == mapping.end() ? mode : it->second;
            if (!occ.emplace(name, n).second)
                throw std::invalid_argument("apply_relabel: collision on mode '" + name + "'");
        }
        out.emplace(FockBasisVector(std::move(occ)), a);
    }
    return QuantumState(state.registry(), std::move(out), state.norm_weight());
}

CircuitRun run(const Circuit& circuit, const QuantumState& input) {
    QuantumState state = input;
    CircuitRun result;
    result.success_probability = 1.0;

    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        const CircuitElement& element = circuit.elements[i];
        ElementOutcome outcome{i, element_kind(element), 1.0, false};

        if (const auto* gate = std::get_if<CpcGate>(&element)) {
            for (const auto& m : gate->coupling.modes()) require_mode(state, m, "run");
            state = evolve(state, gate->coupling, gate->theta).state;
        } else if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
            state = apply_beam_splitter(state, bs->mode1, bs->mode2, bs->transmissivity);
        } else if (const auto* ps = std::get_if<PhaseShift>(&element)) {
            state = apply_phase_shift(state, ps->mode, ps->phase);
        } else if (const auto* filter = std::get_if<Filter>(&element)) {
            std::map<std::string, int> pattern = filter->pattern;
            if (filter->policy == FilterPolicy::reject_on_occupation)
                for (auto& [mode, n] : pattern) n = 0;
            auto projected = project(state, pattern);
            if (!projected) {
                outcome.failed = true;
                outcome.probability = 0.0;
                result.event_log.push_back(outcome);
                result.final_state = state;
                result.success_probability = 0.0;
                result.failed = true;
                return result;
            }
            outcome.probability = projected->norm_weight() / state.norm_weight();
            result.success_probability *= outcome.probability;
            state = std::move(*projected);
        } else if (const auto* herald = std::get_if<Herald>(&element)) {
            if (herald->occupation < 0)
                throw std::invalid_argument("run: herald occupation must be >= 0");
            auto projected = project(state, {{herald->mode, herald->occupation}});
            if (!projected) {
                outcome.failed = true;
                outcome.probability = 0.0;
                result.event_log.push_back(outcome);
                result.final_state = state;
                result.success_probability = 0.0;
                result.failed = true;
                return result;
            }
            outcome.probability = projected->norm_weight() / state.norm_weight();
            result.success_probability *= outcome.probability;
            state = std::move(*projected);
        } else if (const auto* relabel = std::get_if<Relabel>(&element)) {
            state = apply_relabel(state, relabel->mapping);
        }
        result.event_log.push_back(outcome);
    }
    result.final_state = std::move(state);
    return result;
}

Eigen::Matrix4cd cz_gate_matrix(const DualRailEncoding& enc, double theta) {
    const std::vector<std::string> names = {enc.q0_rail0, enc.q0_rail1, enc.q1_rail0,
                                            enc.q1_rail1, enc.ancilla};
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
        throw std::invalid_argument("cz_gate_matrix: encoding modes overlap");

    Circuit circuit;
    circuit.registry = make_registry(names);
    circuit.elements.push_back(
        CpcGate{Coupling::nondegenerate(enc.ancilla, enc.q0_rail1, enc.q1_rail1), theta});

    const std::string q0_rails[2] = {enc.q0_rail0, enc.q0_rail1};
    const std::string q1_rails[2] = {enc.q1_rail0, enc.q1_rail1};

    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    for (int in = 0; in < 4; ++in) {
        const int x = in >> 1, y = in & 1;
        auto input = circuit_input(circuit, {{q0_rails[x], 1}, {q1_rails[y], 1}});
        auto out_state = run(circuit, input).final_state;
        for (int out = 0; out < 4; ++out) {
            const int ox = out >> 1, oy = out & 1;
            FockBasisVector target({{q0_rails[ox], 1}, {q1_rails[oy], 1}});
            m(out, in) = out_state.amplitude(target);
        }
    }
    return m;
}

double entanglement_entropy_bits(const Eigen::Vector4cd& psi) {
    Eigen::Matrix2cd block;
    block << psi(0), psi(1), psi(2), psi(3);
    Eigen::Matrix2cd rho = block * block.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(rho);
    double entropy = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double p = solver.eigenvalues()(i);
        if (p > 1e-15) entropy -= p * std::log2(p);
    }
    return entropy;
}

// ---------------------------------------------------------------------------
// Builders

double degenerate_doubler_theta() { return kPi / (2.0 * std::sqrt(2.0)); }

namespace {

struct CascadeBuilder {
    std::vector<std::string> mode_names;
    std::vector<CircuitElement> elements;
    int cpc_gates = 0;

    std::string declare(std::string name) {
        mode_names.push_back(name);
        return name;
    }

    // Method 1: nondegenerate doubling of `mode` followed by frequency
    // conversion of both products back to input-band modes.
    std::pair<std::string, std::string> double_method1(const std::string& mode) {
        const std::string b = declare(mode + ".b");
        const std::string c = declare(mode + ".c");
        const std::string b_conv = declare(mode + ".bconv");
        const std::string c_conv = declare(mode + ".cconv");
        const std::string left = declare(mode + ".0");
        const std::string right = declare(mode + ".1");

        elements.push_back(CpcGate{Coupling::nondegenerate(mode, b, c), kPi / 2});
        ++cpc_gates;
        elements.push_back(CpcGate{Coupling::converter(b, b_conv), kPi / 2});
        ++cpc_gates;
        elements.push_back(Relabel{{{b_conv, left}}});
        elements.push_back(CpcGate{Coupling::converter(c, c_conv), kPi / 2});
        ++cpc_gates;
        elements.push_back(Relabel{{{c_conv, right}}});
        return {left, right};
    }

    // Method 2: split the input over two interferometer arms, run a
    // degenerate doubler in each, and separate the photon pair with a
    // reverse-HOM beam splitter. The lower arm's coupling phase (-i)
    // compensates the i picked up on reflection at the input splitter, so
    // the pair recombines deterministically.
    std::pair<std::string, std::string> double_method2(const std::string& mode) {
        const std::string arm = declare(mode + ".arm");
        const std::string top = declare(mode + ".0");
        const std::string bottom = declare(mode + ".1");

        elements.push_back(BeamSplitter{mode, arm, 0.5});
        elements.push_back(CpcGate{Coupling::degenerate(mode, top), degenerate_doubler_theta()});
        ++cpc_gates;
        elements.push_back(CpcGate{
            Coupling::degenerate(arm, bottom, complexd{0.0, -1.0}), degenerate_doubler_theta()});
        ++cpc_gates;
        elements.push_back(BeamSplitter{top, bottom, 0.5});
        return {top, bottom};
    }
};

}  // namespace

CascadeCircuit build_doubling_cascade(int depth, CascadeMethod method) {
    if (depth < 1) throw std::invalid_argument("build_doubling_cascade: depth must be >= 1");

    CascadeBuilder builder;
    CascadeCircuit result;
    result.input_mode = builder.declare("a");

    std::vector<std::string> level = {result.input_mode};
    for (int d = 0; d < depth; ++d) {
        std::vector<std::string> next;
        next.reserve(level.size() * 2);
        for (const auto& mode : level) {
            auto [left, right] = method == CascadeMethod::frequency_conversion
                                     ? builder.double_method1(mode)
                                     : builder.double_method2(mode);
            next.push_back(left);
            next.push_back(right);
        }
        level = std::move(next);
    }

    result.circuit.registry = make_registry(builder.mode_names);
    result.circuit.elements = std::move(builder.elements);
    result.output_modes = std::move(level);
    result.cpc_gate_count = builder.cpc_gates;
    return result;
}

namespace {

struct RailBuilder {
    std::vector<std::string> mode_names;
    std::vector<CircuitElement> elements;

    PolarizationRail declare_rail(const std::string& name) {
        mode_names.push_back(name + ".H");
        mode_names.push_back(name + ".V");
        return PolarizationRail{name + ".H", name + ".V"};
    }

    // Polarization-preserving photon doubler: one photon in `in` becomes one
    // photon in each of two fresh rails, same polarization branch.
    std::pair<PolarizationRail, PolarizationRail> double_rail(const PolarizationRail& in,
                                                              const std::string& out1,
                                                              const std::string& out2) {
        PolarizationRail r1 = declare_rail(out1);
        PolarizationRail r2 = declare_rail(out2);
        elements.push_back(CpcGate{Coupling::nondegenerate(in.h, r1.h, r2.h), kPi / 2});
        elements.push_back(CpcGate{Coupling::nondegenerate(in.v, r1.v, r2.v), kPi / 2});
        return {r1, r2};
    }

    // Exact polarization Hadamard: |H> -> (|H>+|V>)/sqrt(2),
    // |V> -> (|H>-|V>)/sqrt(2).
    void hadamard(const PolarizationRail& rail) {
        elements.push_back(PhaseShift{rail.v, -kPi / 2});
        elements.push_back(BeamSplitter{rail.h, rail.v, 0.5});
        elements.push_back(PhaseShift{rail.v, -kPi / 2});
    }

    // Maps |H> to alpha|H> + beta|V> on the rail.
    void prepare(const PolarizationRail& rail, complexd alpha, complexd beta) {
        if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
            throw std::invalid_argument("build_entanglement_circuit: input amplitudes must be normalized");
        elements.push_back(BeamSplitter{rail.h, rail.v, std::norm(alpha)});
        if (std::abs(alpha) > 0.0) elements.push_back(PhaseShift{rail.h, std::arg(alpha)});
        elements.push_back(PhaseShift{rail.v, std::arg(beta) - kPi / 2});
    }

    // Doubles a rail twice, GHZ-style, yielding three copies of the
    // polarization branch.
    std::array<PolarizationRail, 3> triple_rail(const PolarizationRail& in,
                                                const std::string& prefix) {
        auto [first, mid] = double_rail(in, prefix + "1", prefix + "t");
        auto [second, third] = double_rail(mid, prefix + "2", prefix + "3");
        return {first, second, third};
    }
};

}  // namespace

EntanglementCircuit build_entanglement_circuit(
    EntanglementKind kind, std::optional<std::pair<complexd, complexd>> input_amplitudes) {
    RailBuilder builder;
    EntanglementCircuit result;
    result.input = builder.declare_rail("in");
    if (input_amplitudes)
        builder.prepare(result.input, input_amplitudes->first, input_amplitudes->second);

    switch (kind) {
        case EntanglementKind::bell: {
            auto [r1, r2] = builder.double_rail(result.input, "out1", "out2");
            result.outputs = {r1, r2};
            break;
        }
        case EntanglementKind::ghz: {
            auto rails = builder.triple_rail(result.input, "out");
            result.outputs = {rails[0], rails[1], rails[2]};
            break;
        }
        case EntanglementKind::shor9: {
            // Block-level GHZ, a Hadamard per block, then a GHZ expansion of
            // each block: the standard nine-qubit encoder realized with
            // polarization-preserving doublers.
            auto blocks = builder.triple_rail(result.input, "blk");
            for (int i = 0; i < 3; ++i) {
                builder.hadamard(blocks[i]);
                auto rails = builder.triple_rail(blocks[i], "out" + std::to_string(i + 1) + "_");
                result.outputs.push_back(rails[0]);
                result.outputs.push_back(rails[1]);
                result.outputs.push_back(rails[2]);
            }
            break;
        }
    }
    result.circuit.registry = make_registry(builder.mode_names);
    result.circuit.elements = std::move(builder.elements);
    return result;
}

}  // namespace cpc

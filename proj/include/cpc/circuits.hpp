#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cpc/coupling.hpp"
#include "cpc/evolution.hpp"
#include "cpc/fock.hpp"

namespace cpc {

// ---------------------------------------------------------------------------
// Elements

struct CpcGate {
    Coupling coupling;
    double theta = 0.0;
};

// Symmetric beam splitter, i on reflection:
//   a+ -> sqrt(T) a+ + i sqrt(1-T) b+
//   b+ -> i sqrt(1-T) a+ + sqrt(T) b+
// At T = 1/2 this takes (|2,0>+|0,2>)/sqrt(2) to |1,1> up to phase.
struct BeamSplitter {
    std::string mode1;
    std::string mode2;
    double transmissivity = 0.5;
};

// Single-mode phase shifter: amplitude factor exp(i*phase*n).
struct PhaseShift {
    std::string mode;
    double phase = 0.0;
};

enum class FilterPolicy {
    keep_pattern,          // keep components matching the pattern exactly
    reject_on_occupation,  // keep components where every listed mode is empty
};

struct Filter {
    std::map<std::string, int> pattern;
    FilterPolicy policy = FilterPolicy::keep_pattern;
};

// Conditioning on a detection outcome in one mode.
struct Herald {
    std::string mode;
    int occupation = 1;
};

// Simultaneous mode renaming (swaps allowed).
struct Relabel {
    std::map<std::string, std::string> mapping;
};

using CircuitElement = std::variant<CpcGate, BeamSplitter, PhaseShift, Filter, Herald, Relabel>;

const char* element_kind(const CircuitElement& element);

struct Circuit {
    RegistryPtr registry;
    std::vector<CircuitElement> elements;
};

// Fock input over the circuit's registry.
QuantumState circuit_input(const Circuit& circuit, const std::map<std::string, int>& occupations);

// ---------------------------------------------------------------------------
// Running

struct ElementOutcome {
    std::size_t index = 0;
    std::string kind;
    double probability = 1.0;  // projection probability; 1 for unitaries
    bool failed = false;       // empty projection
};

struct CircuitRun {
    QuantumState final_state;
    double success_probability = 1.0;  // product of all projection/herald probabilities
    std::vector<ElementOutcome> event_log;
    bool failed = false;
};

// Applies elements in order. Unitaries preserve the norm; filters and heralds
// post-select and fold their probability into success_probability. An empty
// projection marks the run failed with zero probability.
CircuitRun run(const Circuit& circuit, const QuantumState& input);

// Standalone element applications (also used by run()).
QuantumState apply_beam_splitter(const QuantumState& state, const std::string& mode1,
                                 const std::string& mode2, double transmissivity);
QuantumState apply_phase_shift(const QuantumState& state, const std::string& mode, double phase);
QuantumState apply_relabel(const QuantumState& state,
                           const std::map<std::string, std::string>& mapping);

// ---------------------------------------------------------------------------
// CZ gate

// Two dual-rail qubits in four modes plus the CPC ancilla; the coupling
// attaches to the (rail1 of qubit 0, rail1 of qubit 1) pair.
struct DualRailEncoding {
    std::string q0_rail0 = "q0r0";
    std::string q0_rail1 = "q0r1";
    std::string q1_rail0 = "q1r0";
    std::string q1_rail1 = "q1r1";
    std::string ancilla = "anc";
};

// Matrix of the induced two-qubit operation in the computational basis
// (|00>,|01>,|10>,|11>), extracted by running all four basis inputs. At
// theta = pi this is diag(1,1,1,-1) up to global phase. Throws
// std::invalid_argument when encoding modes overlap.
Eigen::Matrix4cd cz_gate_matrix(const DualRailEncoding& encoding, double theta);

// Entanglement entropy (bits) of a two-qubit pure state given in the
// computational basis.
double entanglement_entropy_bits(const Eigen::Vector4cd& psi);

// ---------------------------------------------------------------------------
// Builders

enum class CascadeMethod {
    frequency_conversion = 1,       // nondegenerate doubler + two converter stages
    degenerate_interferometric = 2  // degenerate doublers + reverse-HOM beam splitters
};

struct CascadeCircuit {
    Circuit circuit;
    std::string input_mode;
    std::vector<std::string> output_modes;  // 2^depth leaves
    int cpc_gate_count = 0;
};

// Circuit mapping |1> in the input mode to 2^depth single photons in
// distinct modes with probability 1 at the ideal interaction angles.
CascadeCircuit build_doubling_cascade(int depth, CascadeMethod method);

// Full conversion angle of the single-photon degenerate doubler (coupling
// element sqrt(2), so a half oscillation is pi/(2*sqrt(2))).
double degenerate_doubler_theta();

enum class EntanglementKind { bell, ghz, shor9 };

struct PolarizationRail {
    std::string h;
    std::string v;
};

struct EntanglementCircuit {
    Circuit circuit;
    PolarizationRail input;
    std::vector<PolarizationRail> outputs;  // bell: 2, ghz: 3, shor9: 9
};

// Polarization-encoded source circuits built from CPC doublers. When
// input_amplitudes = (alpha, beta) is given, a preparation stage mapping
// |H> to alpha|H> + beta|V> is prepended, so feeding |1> in the input H mode
// produces the tuned (possibly non-maximally entangled) state; otherwise the
// circuit acts on whatever qubit state the caller supplies.
EntanglementCircuit build_entanglement_circuit(
    EntanglementKind kind,
    std::optional<std::pair<complexd, complexd>> input_amplitudes = std::nullopt);

}  // namespace cpc

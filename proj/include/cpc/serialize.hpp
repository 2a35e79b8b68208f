#pragma once

#include <stdexcept>
#include <string>

#include "cpc/circuits.hpp"
#include "cpc/coupling.hpp"
#include "cpc/fock.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace cpc {

using json = nlohmann::ordered_json;

// States serialize as {"modes": [...], "norm_weight": w,
// "amplitudes": [{"occupations": {...}, "re": x, "im": y}, ...]}.
// Doubles are emitted with shortest-round-trip precision, so the round trip
// is bit-faithful.
json state_to_json(const QuantumState& state);
QuantumState state_from_json(const json& j);

// {"basis": [occupations...], "entries": [[[re,im], ...], ...]} (row-major).
json coupling_matrix_to_json(const CouplingMatrix& matrix);

// Circuit files: {"modes": [...], "elements": [...]} with theta values in pi
// units carrying an explicit "pi" suffix (e.g. "0.5pi").
json circuit_to_json(const Circuit& circuit);

struct CircuitParseError : std::runtime_error {
    explicit CircuitParseError(const std::string& what) : std::runtime_error(what) {}
};

// Throws CircuitParseError naming the element index and offending mode/key.
Circuit circuit_from_json(const json& j);
Circuit load_circuit_file(const std::string& path);
void save_circuit_file(const Circuit& circuit, const std::string& path);

// "0.25pi" -> 0.25*pi. Circuit files require the suffix.
double parse_theta_pi_suffixed(const std::string& text);
// CLI flags accept either "0.25pi" or plain radians ("0.7853981633974483").
double parse_theta_flag(const std::string& text);
// theta -> "<theta/pi>pi" with shortest round-trip precision.
std::string format_theta_pi(double theta);

}  // namespace cpc

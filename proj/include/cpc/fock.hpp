#pragma once

#include <complex>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cpc {

using complexd = std::complex<double>;

// Amplitudes below this magnitude are dropped after every state operation.
inline constexpr double kAmplitudePruneThreshold = 1e-15;

// Tolerance used by internal normalization sanity checks.
inline constexpr double kNormTolerance = 1e-12;

// A named bosonic mode. The angular frequency is bookkeeping only (useful to
// record energy-conservation constraints); the dynamics are dimensionless and
// never read it.
struct ModeId {
    std::string name;
    std::optional<double> angular_frequency;
};

// Immutable set of modes with unique names. States, couplings and circuits
// that interoperate must share (or agree on) a registry so that "occupation
// zero" and "mode does not exist" stay distinguishable.
class ModeRegistry {
public:
    ModeRegistry() = default;
    explicit ModeRegistry(std::vector<ModeId> modes);

    bool contains(const std::string& name) const;
    const std::vector<ModeId>& modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }

private:
    std::vector<ModeId> modes_;
};

using RegistryPtr = std::shared_ptr<const ModeRegistry>;

RegistryPtr make_registry(const std::vector<std::string>& names);

// Occupation-number vector over named modes. Zero occupations are omitted,
// so equality and ordering are canonical.
class FockBasisVector {
public:
    FockBasisVector() = default;
    explicit FockBasisVector(std::map<std::string, int> occupations);

    int occupation(const std::string& mode) const;
    int total() const;

    // Copy with one mode's occupation replaced (erased when zero).
    FockBasisVector with(const std::string& mode, int occupation) const;

    const std::map<std::string, int>& occupations() const { return occ_; }

    auto operator<=>(const FockBasisVector&) const = default;

private:
    std::map<std::string, int> occ_;  // nonzero entries only
};

// Truncation policy for states built from infinite-support inputs (coherent
// states). The dynamics themselves stay in exact finite subspaces, so the
// cutoff only matters at construction time.
struct TruncationPolicy {
    std::map<std::string, int> per_mode_cutoff;  // empty = derive from tail_tolerance
    double tail_tolerance = 1e-12;
};

// Pure state as a sparse complex amplitude map. norm_weight tracks the
// probability mass retained across projective operations (and across the
// initial truncation of a coherent state); it multiplies under sequential
// projections. Amplitudes themselves always stay normalized to 1.
//
// States are immutable values: every operation returns a new state, so
// independent evaluations are trivially parallel-safe.
class QuantumState {
public:
    QuantumState() = default;
    QuantumState(RegistryPtr registry, std::map<FockBasisVector, complexd> amplitudes,
                 double norm_weight = 1.0);

    const std::map<FockBasisVector, complexd>& amplitudes() const { return amps_; }
    double norm_weight() const { return norm_weight_; }
    const RegistryPtr& registry() const { return registry_; }

    double norm_sq() const;
    complexd amplitude(const FockBasisVector& v) const;
    std::size_t support_size() const { return amps_.size(); }

    // Probability of a basis vector (within the normalized state).
    double probability(const FockBasisVector& v) const;

private:
    RegistryPtr registry_;
    std::map<FockBasisVector, complexd> amps_;
    double norm_weight_ = 1.0;
};

// |n_a n_b ...> with amplitude 1, norm_weight 1. Throws std::invalid_argument
// on negative occupations. The registry is derived from the occupation keys.
QuantumState make_fock(const std::map<std::string, int>& occupations);
QuantumState make_fock(RegistryPtr registry, const std::map<std::string, int>& occupations);

// Coherent state |alpha> in one mode, truncated at the policy cutoff (or, if
// no cutoff is given for the mode, at the smallest n whose Poisson tail is
// below tail_tolerance) and renormalized. The discarded Poisson tail is
// recorded by setting norm_weight to the kept mass, i.e. truncation is
// accounted for exactly like a projection of the ideal state.
// Throws std::runtime_error if the requested cutoff leaves more than
// tail_tolerance in the tail.
QuantumState make_coherent(complexd alpha, const std::string& mode,
                           const TruncationPolicy& policy = {},
                           RegistryPtr registry = nullptr);

// Keep only basis vectors whose occupations match `pattern` exactly on the
// listed modes, renormalize, and fold the projected probability into
// norm_weight. Returns nullopt when nothing survives (caller decides whether
// that is fatal). Throws std::invalid_argument for modes missing from the
// registry.
std::optional<QuantumState> project(const QuantumState& state,
                                    const std::map<std::string, int>& pattern);

// Photon-number distribution of one mode. Throws std::invalid_argument for
// unknown modes.
std::map<int, double> marginal_distribution(const QuantumState& state, const std::string& mode);

// |<reference|state>|^2 for pure states (norm_weight plays no role here).
double fidelity(const QuantumState& state, const QuantumState& reference);

// Mean photon number of one mode.
double mean_occupation(const QuantumState& state, const std::string& mode);

}  // namespace cpc

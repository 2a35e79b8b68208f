#include "cpc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cpc {

ModeRegistry::ModeRegistry(std::vector<ModeId> modes) : modes_(std::move(modes)) {
    std::set<std::string> seen;
    for (const auto& m : modes_) {
        if (!seen.insert(m.name).second)
            throw std::invalid_argument("ModeRegistry: duplicate mode name '" + m.name + "'");
    }
}

bool ModeRegistry::contains(const std::string& name) const {
    return std::any_of(modes_.begin(), modes_.end(),
                       [&](const ModeId& m) { return m.name == name; });
}

RegistryPtr make_registry(const std::vector<std::string>& names) {
    std::vector<ModeId> modes;
    modes.reserve(names.size());
    for (const auto& n : names) modes.push_back(ModeId{n, std::nullopt});
    return std::make_shared<const ModeRegistry>(std::move(modes));
}

FockBasisVector::FockBasisVector(std::map<std::string, int> occupations) {
    for (auto& [mode, n] : occupations) {
        if (n < 0)
            throw std::invalid_argument("FockBasisVector: negative occupation in mode '" + mode +
                                        "'");
        if (n > 0) occ_.emplace(mode, n);
    }
}

int FockBasisVector::occupation(const std::string& mode) const {
    auto it = occ_.find(mode);
    return it == occ_.end() ? 0 : it->second;
}

int FockBasisVector::total() const {
    int t = 0;
    for (const auto& [mode, n] : occ_) t += n;
    return t;
}

FockBasisVector FockBasisVector::with(const std::string& mode, int occupation) const {
    if (occupation < 0)
        throw std::invalid_argument("FockBasisVector::with: negative occupation");
    FockBasisVector out = *this;
    if (occupation == 0)
        out.occ_.erase(mode);
    else
        out.occ_[mode] = occupation;
    return out;
}

QuantumState::QuantumState(RegistryPtr registry, std::map<FockBasisVector, complexd> amplitudes,
                           double norm_weight)
    : registry_(std::move(registry)), norm_weight_(norm_weight) {
    for (auto& [v, a] : amplitudes) {
        if (std::abs(a) >= kAmplitudePruneThreshold) amps_.emplace(v, a);
    }
}

double QuantumState::norm_sq() const {
    double s = 0.0;
    for (const auto& [v, a] : amps_) s += std::norm(a);
    return s;
}

complexd QuantumState::amplitude(const FockBasisVector& v) const {
    auto it = amps_.find(v);
    return it == amps_.end() ? complexd{0.0, 0.0} : it->second;
}

double QuantumState::probability(const FockBasisVector& v) const { return std::norm(amplitude(v)); }

QuantumState make_fock(const std::map<std::string, int>& occupations) {
    std::vector<std::string> names;
    for (const auto& [mode, n] : occupations) names.push_back(mode);
    return make_fock(make_registry(names), occupations);
}

QuantumState make_fock(RegistryPtr registry, const std::map<std::string, int>& occupations) {
    for (const auto& [mode, n] : occupations) {
        if (n < 0)
            throw std::invalid_argument("make_fock: negative occupation in mode '" + mode + "'");
        if (!registry->contains(mode))
            throw std::invalid_argument("make_fock: mode '" + mode + "' not in registry");
    }
    std::map<FockBasisVector, complexd> amps;
    amps.emplace(FockBasisVector(occupations), complexd{1.0, 0.0});
    return QuantumState(std::move(registry), std::move(amps), 1.0);
}

namespace {

// Smallest cutoff whose Poisson tail mass is <= tol.
int default_coherent_cutoff(double mean, double tol) {
    double term = std::exp(-mean);  // P(0)
    double kept = term;
    int n = 0;
    while (1.0 - kept > tol && n < 4096) {
        ++n;
        term *= mean / n;
        kept += term;
    }
    return n;
}

}  // namespace

QuantumState make_coherent(complexd alpha, const std::string& mode,
                           const TruncationPolicy& policy, RegistryPtr registry) {
    if (!registry) registry = make_registry({mode});
    if (!registry->contains(mode))
        throw std::invalid_argument("make_coherent: mode '" + mode + "' not in registry");

    const double mean = std::norm(alpha);
    int cutoff;
    if (auto it = policy.per_mode_cutoff.find(mode); it != policy.per_mode_cutoff.end())
        cutoff = it->second;
    else
        cutoff = default_coherent_cutoff(mean, policy.tail_tolerance);
    if (cutoff < 0) throw std::invalid_argument("make_coherent: negative cutoff");

    // Unnormalized amplitudes alpha^n / sqrt(n!) and the kept Poisson mass.
    std::vector<complexd> amp(cutoff + 1);
    amp[0] = complexd{1.0, 0.0};
    double kept = std::exp(-mean);  // |amp[0]|^2 * e^{-mean}
    double pmf = kept;
    for (int n = 1; n <= cutoff; ++n) {
        amp[n] = amp[n - 1] * alpha / std::sqrt(static_cast<double>(n));
        pmf *= mean / n;
        kept += pmf;
    }
    const double discarded = 1.0 - kept;
    if (discarded > policy.tail_tolerance)
        throw std::runtime_error("make_coherent: cutoff " + std::to_string(cutoff) +
                                 " leaves Poisson tail " + std::to_string(discarded) +
                                 " above tail_tolerance");

    const double scale = std::exp(-mean / 2.0) / std::sqrt(kept);
    std::map<FockBasisVector, complexd> amps;
    for (int n = 0; n <= cutoff; ++n) {
        complexd a = amp[n] * scale;
        if (std::abs(a) >= kAmplitudePruneThreshold)
            amps.emplace(FockBasisVector{}.with(mode, n), a);
    }
    return QuantumState(std::move(registry), std::move(amps), kept);
}

std::optional<QuantumState> project(const QuantumState& state,
                                    const std::map<std::string, int>& pattern) {
    for (const auto& [mode, n] : pattern) {
        if (!state.registry() || !state.registry()->contains(mode))
            throw std::invalid_argument("project: mode '" + mode + "' not in registry");
    }
    std::map<FockBasisVector, complexd> kept;
    double p = 0.0;
    for (const auto& [v, a] : state.amplitudes()) {
        bool match = true;
        for (const auto& [mode, n] : pattern) {
            if (v.occupation(mode) != n) {
                match = false;
                break;
            }
        }
        if (match) {
            kept.emplace(v, a);
            p += std::norm(a);
        }
    }
    if (kept.empty() || p <= 0.0) return std::nullopt;
    const double inv = 1.0 / std::sqrt(p);
    for (auto& [v, a] : kept) a *= inv;
    return QuantumState(state.registry(), std::move(kept), state.norm_weight() * p);
}

std::map<int, double> marginal_distribution(const QuantumState& state, const std::string& mode) {
    if (!state.registry() || !state.registry()->contains(mode))
        throw std::invalid_argument("marginal_distribution: mode '" + mode + "' not in registry");
    std::map<int, double> dist;
    for (const auto& [v, a] : state.amplitudes()) dist[v.occupation(mode)] += std::norm(a);
    return dist;
}

double fidelity(const QuantumState& state, const QuantumState& reference) {
    // Overlap over the smaller support.
    const auto& small =
        state.support_size() <= reference.support_size() ? state : reference;
    const auto& big = (&small == &state) ? reference : state;
    complexd overlap{0.0, 0.0};
    for (const auto& [v, a] : small.amplitudes()) overlap += std::conj(big.amplitude(v)) * a;
    return std::norm(overlap);
}

double mean_occupation(const QuantumState& state, const std::string& mode) {
    double m = 0.0;
    for (const auto& [v, a] : state.amplitudes())
        m += v.occupation(mode) * std::norm(a);
    return m;
}

}  // namespace cpc

#include "cpc/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cpc/rng.hpp"

namespace cpc {

namespace {

void validate(const CascadeSpec& spec, const DetectorModel& model) {
    if (spec.depth < 0) throw std::invalid_argument("cascade: depth must be >= 0");
    if (spec.depth > 20) throw std::invalid_argument("cascade: depth too large");
    const int n = 1 << spec.depth;
    if (spec.k < 1) throw std::invalid_argument("cascade: k must be >= 1");
    if (spec.k > n) throw std::invalid_argument("cascade: k exceeds the number of leaves");
    for (double p : {spec.eta_dbl, model.eta, model.dark_prob}) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("cascade: probabilities must be in [0,1]");
    }
}

using Poly = std::vector<double>;  // Poly[j] = P(j clicks)

Poly multiply(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly add_scaled(Poly a, const Poly& b, double wa, double wb) {
    a.resize(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] *= wa;
        if (i < b.size()) a[i] += wb * b[i];
    }
    return a;
}

}  // namespace

std::vector<double> click_distribution(const CascadeSpec& spec, const DetectorModel& model) {
    validate(spec, model);
    const double p_click = 1.0 - (1.0 - model.eta) * (1.0 - model.dark_prob);
    const Poly leaf_photon = {1.0 - p_click, p_click};
    const Poly leaf_dark = {1.0 - model.dark_prob, model.dark_prob};
    const Poly residual = spec.detect_residual ? Poly{1.0 - model.eta, model.eta} : Poly{1.0};

    // dark[d]: clicks from the 2^d leaves of a photonless subtree
    // photon[d]: clicks from a depth-d subtree fed with one photon
    Poly dark = leaf_dark;
    Poly photon = leaf_photon;
    for (int d = 1; d <= spec.depth; ++d) {
        Poly success = multiply(photon, photon);
        Poly failure = multiply(residual, multiply(dark, dark));
        photon = add_scaled(std::move(success), failure, spec.eta_dbl, 1.0 - spec.eta_dbl);
        dark = multiply(dark, dark);
    }
    return photon;
}

double effective_efficiency(const CascadeSpec& spec, const DetectorModel& model) {
    const auto dist = click_distribution(spec, model);
    double p = 0.0;
    for (std::size_t j = static_cast<std::size_t>(spec.k); j < dist.size(); ++j) p += dist[j];
    return p;
}

double doubling_threshold(double eta) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::invalid_argument("doubling_threshold: eta must be in (0,1]");
    return 1.0 / (2.0 - eta);
}

double residual_efficiency(double eta, double eta_dbl) {
    if (!(eta >= 0.0 && eta <= 1.0) || !(eta_dbl >= 0.0 && eta_dbl <= 1.0))
        throw std::invalid_argument("residual_efficiency: arguments must be in [0,1]");
    return eta_dbl * eta * (2.0 - eta) + (1.0 - eta_dbl) * eta;
}

double dark_click_probability(const CascadeSpec& spec, const DetectorModel& model) {
    validate(spec, model);
    const int n = 1 << spec.depth;
    const double q = model.dark_prob;
    if (q == 0.0) return 0.0;
    if (q == 1.0) return 1.0;  // k <= n after validation
    // P(Binomial(n, q) >= k) = 1 - sum_{j<k} C(n,j) q^j (1-q)^(n-j)
    double below = 0.0;
    double term = std::pow(1.0 - q, n);
    for (int j = 0; j < spec.k; ++j) {
        below += term;
        term *= (q / (1.0 - q)) * double(n - j) / double(j + 1);
    }
    return std::max(0.0, 1.0 - below);
}

namespace {

// Samples the number of clicks in a depth-d subtree.
int sample_subtree(SplitMix64& rng, int depth, bool has_photon, const CascadeSpec& spec,
                   const DetectorModel& model) {
    if (depth == 0) {
        const double p = has_photon
                             ? 1.0 - (1.0 - model.eta) * (1.0 - model.dark_prob)
                             : model.dark_prob;
        return rng.bernoulli(p) ? 1 : 0;
    }
    if (!has_photon) {
        int clicks = 0;
        const int leaves = 1 << depth;
        for (int i = 0; i < leaves; ++i) clicks += rng.bernoulli(model.dark_prob) ? 1 : 0;
        return clicks;
    }
    if (rng.bernoulli(spec.eta_dbl)) {
        return sample_subtree(rng, depth - 1, true, spec, model) +
               sample_subtree(rng, depth - 1, true, spec, model);
    }
    int clicks = 0;
    if (spec.detect_residual && rng.bernoulli(model.eta)) ++clicks;
    clicks += sample_subtree(rng, depth - 1, false, spec, model);
    clicks += sample_subtree(rng, depth - 1, false, spec, model);
    return clicks;
}

}  // namespace

CountSummary simulate_counts(const CascadeSpec& spec, const DetectorModel& model,
                             std::uint64_t rep_rate, double photon_prob, std::uint64_t seed) {
    validate(spec, model);
    if (rep_rate < 1) throw std::invalid_argument("simulate_counts: rep_rate must be >= 1");
    if (!(photon_prob >= 0.0 && photon_prob <= 1.0))
        throw std::invalid_argument("simulate_counts: photon_prob must be in [0,1]");

    SplitMix64 rng(seed);
    CountSummary summary;
    summary.trials = rep_rate;
    summary.seed = seed;
    for (std::uint64_t t = 0; t < rep_rate; ++t) {
        const bool photon = rng.bernoulli(photon_prob);
        const int clicks = sample_subtree(rng, spec.depth, photon, spec, model);
        if (clicks >= spec.k) {
            if (photon)
                ++summary.signal_counts;
            else
                ++summary.noise_counts;
        }
    }
    summary.snr = summary.noise_counts == 0
                      ? (summary.signal_counts > 0 ? std::numeric_limits<double>::infinity() : 0.0)
                      : double(summary.signal_counts) / double(summary.noise_counts);
    return summary;
}

}  // namespace cpc

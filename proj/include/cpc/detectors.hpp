#pragma once

#include <cstdint>
#include <vector>

namespace cpc {

struct DetectorModel {
    double eta = 1.0;        // single-detector efficiency
    double dark_prob = 0.0;  // dark-count probability per detector per trial
};

// Binary photon-doubling cascade read out by leaf detectors. Each doubling
// succeeds with probability eta_dbl; on failure the branch photon is lost
// unless detect_residual is set, in which case the unconverted photon is
// detected at that stage with probability eta. Residual-stage detectors are
// modeled noiselessly, so dark clicks come from the 2^depth leaves only.
struct CascadeSpec {
    int depth = 0;            // n = 2^depth leaf detectors
    int k = 1;                // coincidence threshold
    double eta_dbl = 1.0;     // per-doubling success probability
    bool detect_residual = false;
};

// P(at least k detectors click | one photon enters the cascade), exact, via
// recursion over click-count generating polynomials. Throws
// std::invalid_argument for invalid spec/model (k > n, k < 1, probabilities
// outside [0,1]).
double effective_efficiency(const CascadeSpec& spec, const DetectorModel& model);

// Full click-count distribution given one photon at the root
// (index = number of clicks, size n+1 or n+2 with residual detectors).
std::vector<double> click_distribution(const CascadeSpec& spec, const DetectorModel& model);

// Doubling efficiency above which a depth-1 cascade beats the bare detector:
// 1/(2-eta). Throws std::invalid_argument for eta outside (0,1].
double doubling_threshold(double eta);

// Depth-1 efficiency when the residual mode is detected on doubling failure:
// eta_dbl*eta*(2-eta) + (1-eta_dbl)*eta, strictly above eta for
// eta_dbl in (0,1], eta in (0,1).
double residual_efficiency(double eta, double eta_dbl);

// P(at least k clicks | no photon) = P(Binomial(2^depth, dark_prob) >= k).
double dark_click_probability(const CascadeSpec& spec, const DetectorModel& model);

struct CountSummary {
    std::uint64_t trials = 0;
    std::uint64_t signal_counts = 0;  // >=k coincidences with a photon present
    std::uint64_t noise_counts = 0;   // >=k coincidences with no photon
    double snr = 0.0;                 // signal_counts / noise_counts
    std::uint64_t seed = 0;
};

// Seeded Monte Carlo counting experiment: per trial a photon is present with
// photon_prob, doubling branches and detector clicks are sampled
// independently, and >=k coincidences are tallied by photon presence.
// Bit-reproducible for a fixed seed (splitmix64).
CountSummary simulate_counts(const CascadeSpec& spec, const DetectorModel& model,
                             std::uint64_t rep_rate, double photon_prob, std::uint64_t seed);

}  // namespace cpc

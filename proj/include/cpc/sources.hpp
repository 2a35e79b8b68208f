#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cpc/evolution.hpp"
#include "cpc/fock.hpp"

namespace cpc {

// Report of the heralded single-photon pipeline.
//
// production_efficiency is the conditional single-photon yield: the
// probability that the final doubler herald fires with exactly one photon in
// the herald mode, given that every filtering step passed. The absolute
// per-pulse variant (multiplied by the filter pass probability) is reported
// alongside, as are the higher-order masses both before and after the
// heralding step, since either convention may be wanted downstream.
struct SourceReport {
    double production_efficiency = 0.0;
    std::map<int, double> output_distribution;  // heralded output photon number
    double single_photon_fidelity = 0.0;
    double higher_order_mass = 0.0;  // sum of output_distribution over n >= 2
    int steps = 0;

    double absolute_efficiency = 0.0;         // filter_pass_probability * conditional yield
    double filter_pass_probability = 1.0;     // probability of surviving all filter steps
    double pre_herald_higher_order_mass = 0.0;  // n >= 2 mass of the filtered state
    bool heralded = false;                    // final doubler + herald applied
    std::vector<std::map<int, double>> step_distributions;  // filtered state after each step
};

// Repeats [evolve theta; project dump modes to vacuum] n_steps times from a
// coherent input, then (optionally) applies a pi/2 doubling and heralds on
// exactly one photon in the doubled mode. theta defaults to pi per step; a
// per-step override is available since the steps need not share one angle.
SourceReport heralded_source(complexd alpha, int n_steps, double theta_per_step,
                             bool with_final_doubler, const TruncationPolicy& policy = {});
SourceReport heralded_source(complexd alpha, const std::vector<double>& thetas_per_step,
                             bool with_final_doubler, const TruncationPolicy& policy = {});

struct RevivalPeak {
    double theta_over_pi = 0.0;
    double transmission = 0.0;  // |return_amplitude(n, theta)|^2 at the peak
};

// Local maxima of |return_amplitude(n, theta)|^2 above transmission_floor,
// located on a coarse grid and sharpened by iterated three-point parabolic
// refinement to |theta error| <= 1e-4*pi. Sorted by theta.
std::vector<RevivalPeak> revival_scan(int n, double theta_max_over_pi,
                                      double coarse_grid_over_pi = 1e-3,
                                      double transmission_floor = 0.5);

// Input to the improved down-conversion protocol: either a coherent state or
// an incoherent Fock mixture {n: probability} (so a heralded-single-photon
// seed with higher-order contamination is expressible).
struct DcInput {
    static DcInput coherent(complexd alpha);
    static DcInput fock_mixture(std::map<int, double> weights);

    std::optional<complexd> alpha;
    std::map<int, double> mixture;
};

struct DcReference {
    double single_pair_probability = 0.0;
    double total_emission_probability = 0.0;
    double heralded_fidelity = 0.0;
};

// Down-conversion figures after evolving for theta = 2*m*pi/sqrt(6), the
// angle at which the two-photon component completes m full oscillations and
// therefore leaves no two-pair term. The reference is a standard thermal
// pair source, P(k pairs) = (1-lambda) lambda^k, with lambda matched to the
// same total emission probability.
struct DcReport {
    double single_pair_probability = 0.0;     // P(exactly |011>)
    double total_emission_probability = 0.0;  // P(any photons in b,c)
    double heralded_fidelity = 0.0;           // one-pair fidelity given a one-photon herald in b
    DcReference spdc_reference;
};

DcReport improved_dc(const DcInput& input, int m, const TruncationPolicy& policy = {});

}  // namespace cpc

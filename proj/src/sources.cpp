#include "cpc/sources.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpc {

namespace {

constexpr double kPi = std::numbers::pi;

SourceReport zero_report(int steps, bool heralded) {
    SourceReport report;
    report.steps = steps;
    report.heralded = heralded;
    return report;
}

// Output photon number of the heralded source: every photon outside the
// herald mode b (the leftover a photons plus the twin c photon).
std::map<int, double> non_herald_distribution(const QuantumState& state) {
    std::map<int, double> dist;
    for (const auto& [v, a] : state.amplitudes())
        dist[v.occupation("a") + v.occupation("c")] += std::norm(a);
    return dist;
}

double mass_at_least(const std::map<int, double>& dist, int n_min) {
    double mass = 0.0;
    for (const auto& [n, p] : dist)
        if (n >= n_min) mass += p;
    return mass;
}

}  // namespace

SourceReport heralded_source(complexd alpha, int n_steps, double theta_per_step,
                             bool with_final_doubler, const TruncationPolicy& policy) {
    if (n_steps < 1) throw std::invalid_argument("heralded_source: n_steps must be >= 1");
    return heralded_source(alpha, std::vector<double>(n_steps, theta_per_step),
                           with_final_doubler, policy);
}

SourceReport heralded_source(complexd alpha, const std::vector<double>& thetas_per_step,
                             bool with_final_doubler, const TruncationPolicy& policy) {
    if (thetas_per_step.empty())
        throw std::invalid_argument("heralded_source: at least one step required");

    const auto registry = make_registry({"a", "b", "c"});
    const auto coupling = Coupling::nondegenerate("a", "b", "c");

    QuantumState state = make_coherent(alpha, "a", policy, registry);

    SourceReport report;
    report.steps = static_cast<int>(thetas_per_step.size());
    report.heralded = with_final_doubler;
    report.step_distributions.push_back(marginal_distribution(state, "a"));

    for (double theta : thetas_per_step) {
        state = evolve(state, coupling, theta).state;
        auto projected = project(state, {{"b", 0}, {"c", 0}});
        if (!projected) return zero_report(report.steps, with_final_doubler);
        report.filter_pass_probability *= projected->norm_weight() / state.norm_weight();
        state = std::move(*projected);
        report.step_distributions.push_back(marginal_distribution(state, "a"));
    }
    const auto filtered = marginal_distribution(state, "a");
    report.pre_herald_higher_order_mass = mass_at_least(filtered, 2);

    if (!with_final_doubler) {
        report.output_distribution = filtered;
        auto it = filtered.find(1);
        report.production_efficiency = it == filtered.end() ? 0.0 : it->second;
        report.single_photon_fidelity = report.production_efficiency;
        report.higher_order_mass = report.pre_herald_higher_order_mass;
        report.absolute_efficiency =
            report.filter_pass_probability * report.production_efficiency;
        return report;
    }

    // Final doubling step; herald on exactly one photon in mode b.
    const QuantumState doubled = evolve(state, coupling, kPi / 2).state;
    auto heralded = project(doubled, {{"b", 1}});
    if (!heralded) {
        auto zero = zero_report(report.steps, true);
        zero.filter_pass_probability = report.filter_pass_probability;
        zero.pre_herald_higher_order_mass = report.pre_herald_higher_order_mass;
        zero.step_distributions = std::move(report.step_distributions);
        return zero;
    }
    report.production_efficiency = heralded->norm_weight() / doubled.norm_weight();
    report.absolute_efficiency = report.filter_pass_probability * report.production_efficiency;
    report.output_distribution = non_herald_distribution(*heralded);
    auto it = report.output_distribution.find(1);
    report.single_photon_fidelity = it == report.output_distribution.end() ? 0.0 : it->second;
    report.higher_order_mass = mass_at_least(report.output_distribution, 2);
    return report;
}

std::vector<RevivalPeak> revival_scan(int n, double theta_max_over_pi,
                                      double coarse_grid_over_pi, double transmission_floor) {
    if (n < 1) throw std::invalid_argument("revival_scan: n must be >= 1");
    if (!(theta_max_over_pi > 0.0) || !(coarse_grid_over_pi > 0.0))
        throw std::invalid_argument("revival_scan: scan range and grid must be positive");

    const ChainSpectrum spectrum(n);
    const auto transmission = [&](double theta) {
        return std::norm(spectrum.return_amplitude(theta));
    };

    const double step = coarse_grid_over_pi * kPi;
    const double theta_max = theta_max_over_pi * kPi;
    const std::size_t count = static_cast<std::size_t>(theta_max / step) + 1;

    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) values[i] = transmission(i * step);

    std::vector<RevivalPeak> peaks;
    for (std::size_t i = 1; i + 1 < count; ++i) {
        if (!(values[i] > values[i - 1] && values[i] >= values[i + 1])) continue;
        if (values[i] <= transmission_floor) continue;

        // Iterated three-point parabolic refinement; each step is clamped to
        // the bracket, whose width halves, so the position converges far
        // below the 1e-4*pi requirement.
        double x = i * step;
        double h = step;
        for (int iter = 0; iter < 48 && h > 1e-7; ++iter) {
            const double f0 = transmission(x - h);
            const double f1 = transmission(x);
            const double f2 = transmission(x + h);
            const double denom = f0 - 2.0 * f1 + f2;
            if (std::abs(denom) < 1e-300) break;
            double dx = 0.5 * h * (f0 - f2) / denom;
            dx = std::clamp(dx, -h, h);
            x += dx;
            h *= 0.5;
        }
        const double t = transmission(x);
        if (t <= transmission_floor) continue;
        if (!peaks.empty() && std::abs(peaks.back().theta_over_pi * kPi - x) < 5e-4 * kPi) {
            if (t > peaks.back().transmission) peaks.back() = RevivalPeak{x / kPi, t};
            continue;
        }
        peaks.push_back(RevivalPeak{x / kPi, t});
    }
    return peaks;
}

DcInput DcInput::coherent(complexd alpha) {
    DcInput input;
    input.alpha = alpha;
    return input;
}

DcInput DcInput::fock_mixture(std::map<int, double> weights) {
    DcInput input;
    input.mixture = std::move(weights);
    return input;
}

namespace {

DcReference spdc_reference_for(double total_emission) {
    DcReference ref;
    if (total_emission <= 0.0) return ref;
    const double lambda = total_emission;
    ref.single_pair_probability = (1.0 - lambda) * lambda;
    ref.total_emission_probability = lambda;
    ref.heralded_fidelity = 1.0 - lambda;
    return ref;
}

}  // namespace

DcReport improved_dc(const DcInput& input, int m, const TruncationPolicy& policy) {
    if (m < 1) throw std::invalid_argument("improved_dc: m must be >= 1");
    const double theta = 2.0 * m * kPi / std::sqrt(6.0);

    DcReport report;
    if (input.alpha) {
        const auto registry = make_registry({"a", "b", "c"});
        const auto coupling = Coupling::nondegenerate("a", "b", "c");
        QuantumState state = make_coherent(*input.alpha, "a", policy, registry);
        state = evolve(state, coupling, theta).state;

        const FockBasisVector one_pair({{"b", 1}, {"c", 1}});
        report.single_pair_probability = state.probability(one_pair);
        double vacuum_bc = 0.0;
        double herald_one_b = 0.0;
        for (const auto& [v, a] : state.amplitudes()) {
            const double p = std::norm(a);
            if (v.occupation("b") == 0 && v.occupation("c") == 0) vacuum_bc += p;
            if (v.occupation("b") == 1) herald_one_b += p;
        }
        report.total_emission_probability = std::max(0.0, 1.0 - vacuum_bc);
        report.heralded_fidelity =
            herald_one_b > 0.0 ? report.single_pair_probability / herald_one_b : 0.0;
    } else {
        double total_weight = 0.0;
        for (const auto& [n, w] : input.mixture) {
            if (n < 0 || w < 0.0)
                throw std::invalid_argument("improved_dc: invalid Fock mixture entry");
            total_weight += w;
        }
        if (total_weight <= 0.0)
            throw std::invalid_argument("improved_dc: empty Fock mixture");

        double herald_one_b = 0.0;
        for (const auto& [n, w] : input.mixture) {
            const double weight = w / total_weight;
            if (n == 0 || weight == 0.0) continue;
            const ChainSpectrum spectrum(n);
            const double survive = std::norm(spectrum.return_amplitude(theta));
            const double one_b = std::norm(spectrum.transfer_amplitude(1, theta));
            report.total_emission_probability += weight * (1.0 - survive);
            herald_one_b += weight * one_b;
            if (n == 1) report.single_pair_probability += weight * one_b;
        }
        report.heralded_fidelity =
            herald_one_b > 0.0 ? report.single_pair_probability / herald_one_b : 0.0;
    }
    report.spdc_reference = spdc_reference_for(report.total_emission_probability);
    return report;
}

}  // namespace cpc

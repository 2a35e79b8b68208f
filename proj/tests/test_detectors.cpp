#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cpc/detectors.hpp"
#include "cpc/rng.hpp"

using namespace cpc;
using doctest::Approx;

namespace {

// Exhaustive 2^n enumeration over leaf click patterns; valid when every leaf
// receives a photon (eta_dbl = 1).
double enumerate_full_tree(int depth, int k, double eta, double dark) {
    const int n = 1 << depth;
    const double p = 1.0 - (1.0 - eta) * (1.0 - dark);
    double total = 0.0;
    for (int pattern = 0; pattern < (1 << n); ++pattern) {
        const int clicks = __builtin_popcount(static_cast<unsigned>(pattern));
        if (clicks < k) continue;
        total += std::pow(p, clicks) * std::pow(1.0 - p, n - clicks);
    }
    return total;
}

// Binomial tail by direct term summation.
double binomial_tail(int n, int k, double q) {
    double total = 0.0;
    for (int j = k; j <= n; ++j) {
        double c = 1.0;
        for (int i = 1; i <= j; ++i) c = c * (n - j + i) / i;
        total += c * std::pow(q, j) * std::pow(1.0 - q, n - j);
    }
    return total;
}

}  // namespace

TEST_CASE("closed forms") {
    // depth 3, k=1, eta=0.5, perfect doubling: 1 - (1-eta)^8
    CHECK(effective_efficiency({3, 1, 1.0, false}, {0.5, 0.0}) ==
          Approx(1.0 - std::pow(0.5, 8)).epsilon(1e-14));
    CHECK(1.0 - std::pow(0.5, 8) == Approx(0.99609375));

    // depth 0: the bare detector.
    CHECK(effective_efficiency({0, 1, 1.0, false}, {0.37, 0.0}) == Approx(0.37).epsilon(1e-14));

    // depth 1, k=1, no residual: eta_dbl * eta * (2 - eta)
    for (double eta : {0.1, 0.5, 0.9}) {
        for (double dbl : {0.3, 0.7, 1.0}) {
            CHECK(effective_efficiency({1, 1, dbl, false}, {eta, 0.0}) ==
                  Approx(dbl * eta * (2.0 - eta)).epsilon(1e-13));
            CHECK(effective_efficiency({1, 1, dbl, true}, {eta, 0.0}) ==
                  Approx(residual_efficiency(eta, dbl)).epsilon(1e-13));
        }
    }
}

TEST_CASE("thresholds") {
    CHECK(doubling_threshold(0.5) == Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(doubling_threshold(1.0) == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(doubling_threshold(0.0), std::invalid_argument);

    CHECK(residual_efficiency(0.5, 0.5) == Approx(0.625).epsilon(1e-15));
    CHECK(residual_efficiency(0.5, 0.5) > 0.5);

    // Depth-1 enumeration cross-check of the residual formula.
    // Success: two leaves with photons; failure: residual detector only.
    const double eta = 0.37, dbl = 0.61;
    const double by_cases = dbl * (1.0 - (1.0 - eta) * (1.0 - eta)) + (1.0 - dbl) * eta;
    CHECK(residual_efficiency(eta, dbl) == Approx(by_cases).epsilon(1e-14));
}

TEST_CASE("dark click probability") {
    CHECK(dark_click_probability({3, 1, 1.0, false}, {0.5, 1e-2}) ==
          Approx(1.0 - std::pow(0.99, 8)).epsilon(1e-12));
    CHECK(1.0 - std::pow(0.99, 8) == Approx(0.0773).epsilon(1e-3));
    // The uncorrected cascade is noisier than a bare detector.
    CHECK(dark_click_probability({3, 1, 1.0, false}, {0.5, 1e-2}) > 1e-2);

    CHECK(dark_click_probability({3, 8, 1.0, false}, {0.5, 1e-2}) == Approx(1e-16).epsilon(1e-10));
    CHECK(dark_click_probability({3, 4, 1.0, false}, {0.5, 0.0}) == 0.0);

    for (int k : {1, 2, 5, 8})
        CHECK(dark_click_probability({3, k, 1.0, false}, {0.5, 0.013}) ==
              Approx(binomial_tail(8, k, 0.013)).epsilon(1e-12));
}

TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(effective_efficiency({3, 9, 1.0, false}, {0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(effective_efficiency({3, 0, 1.0, false}, {0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(effective_efficiency({3, 1, 1.5, false}, {0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(effective_efficiency({3, 1, 1.0, false}, {-0.1, 0.0}), std::invalid_argument);
}

TEST_CASE("exhaustive enumeration cross-check at full doubling efficiency") {
    SplitMix64 rng(13);
    for (int depth : {1, 2, 3}) {
        const int n = 1 << depth;
        for (int trial = 0; trial < 5; ++trial) {
            const double eta = rng.next_double();
            const double dark = 0.05 * rng.next_double();
            for (int k = 1; k <= n; ++k) {
                CHECK(effective_efficiency({depth, k, 1.0, false}, {eta, dark}) ==
                      Approx(enumerate_full_tree(depth, k, eta, dark)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("monotonicity") {
    const DetectorModel model{0.4, 5e-3};
    double previous = 1.1;
    for (int k = 1; k <= 8; ++k) {
        const double eff = effective_efficiency({3, k, 0.8, true}, model);
        CHECK(eff <= previous + 1e-15);
        previous = eff;
    }
    for (int k : {1, 3}) {
        double prev_eta = -1.0;
        for (double eta = 0.0; eta <= 1.0; eta += 0.05) {
            const double eff = effective_efficiency({3, k, 0.8, true}, {eta, 5e-3});
            CHECK(eff >= prev_eta - 1e-15);
            prev_eta = eff;
        }
        double prev_dbl = -1.0;
        for (double dbl = 0.0; dbl <= 1.0; dbl += 0.05) {
            const double eff = effective_efficiency({3, k, dbl, true}, {0.4, 5e-3});
            CHECK(eff >= prev_dbl - 1e-15);
            prev_dbl = eff;
        }
    }
}

TEST_CASE("depth-1 crossover happens exactly at the threshold") {
    for (int i = 0; i < 50; ++i) {
        const double eta = (i + 0.5) / 50.0;
        const double threshold = doubling_threshold(eta);
        for (int j = 0; j < 50; ++j) {
            const double dbl = (j + 0.5) / 50.0;
            const double eff = effective_efficiency({1, 1, dbl, false}, {eta, 0.0});
            if (std::abs(dbl - threshold) < 1e-12) continue;
            CHECK((eff > eta) == (dbl > threshold));
        }
    }
}

TEST_CASE("residual detection beats the bare detector everywhere") {
    for (int i = 1; i < 40; ++i) {
        const double eta = i / 40.0;
        for (int j = 1; j <= 40; ++j) {
            const double dbl = j / 40.0;
            CHECK(residual_efficiency(eta, dbl) > eta);
        }
    }
    CHECK(residual_efficiency(0.5, 0.0) == Approx(0.5).epsilon(1e-15));
    CHECK(residual_efficiency(1.0, 0.7) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Monte Carlo agrees with the analytics") {
    SplitMix64 rng(987654321);
    for (int draw = 0; draw < 10; ++draw) {
        CascadeSpec spec;
        spec.depth = 1 + static_cast<int>(rng.next_u64() % 3);
        spec.k = 1 + static_cast<int>(rng.next_u64() % (1u << spec.depth));
        spec.eta_dbl = 0.5 + 0.5 * rng.next_double();
        spec.detect_residual = (rng.next_u64() & 1) != 0;
        DetectorModel model{0.2 + 0.8 * rng.next_double(), 0.05 * rng.next_double()};

        const std::uint64_t trials = 1000000;
        const double photon_prob = 0.5;
        const auto counts = simulate_counts(spec, model, trials, photon_prob, rng.next_u64());

        const double p_signal = photon_prob * effective_efficiency(spec, model);
        const double p_noise = (1.0 - photon_prob) * dark_click_probability(spec, model);
        const double sigma_signal = std::sqrt(trials * p_signal * (1.0 - p_signal));
        const double sigma_noise = std::sqrt(trials * p_noise * (1.0 - p_noise));
        CHECK(std::abs(double(counts.signal_counts) - trials * p_signal) <=
              4.0 * sigma_signal + 1.0);
        CHECK(std::abs(double(counts.noise_counts) - trials * p_noise) <= 4.0 * sigma_noise + 1.0);
    }
}

TEST_CASE("simulation edge cases and reproducibility") {
    const auto zero = simulate_counts({3, 1, 1.0, false}, {0.8, 0.0}, 10000, 0.0, 5);
    CHECK(zero.signal_counts == 0);
    CHECK(zero.noise_counts == 0);

    const auto a = simulate_counts({3, 2, 0.9, true}, {0.5, 1e-2}, 50000, 1e-2, 1234);
    const auto b = simulate_counts({3, 2, 0.9, true}, {0.5, 1e-2}, 50000, 1e-2, 1234);
    CHECK(a.signal_counts == b.signal_counts);
    CHECK(a.noise_counts == b.noise_counts);
    CHECK(a.seed == 1234);
}

TEST_CASE("coincidence threshold rescues the noisy-detector experiment") {
    // 1e6 trials, 1e-2 photons, 1e-2 dark counts; k=1 drowns in cascade dark
    // counts, k=2 already recovers the signal.
    const DetectorModel model{0.5, 1e-2};
    const auto k1 = simulate_counts({3, 1, 1.0, false}, model, 1000000, 1e-2, 99);
    const auto k2 = simulate_counts({3, 2, 1.0, false}, model, 1000000, 1e-2, 99);
    CHECK(k1.snr < 1.0);
    CHECK(k2.snr > 1.0);
}

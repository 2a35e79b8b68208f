#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cpc/evolution.hpp"
#include "helpers.hpp"

using namespace cpc;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const Coupling kAbc = Coupling::nondegenerate("a", "b", "c");
const auto kRegistry = make_registry({"a", "b", "c"});

QuantumState fock3(int na, int nb, int nc) {
    return make_fock(kRegistry, {{"a", na}, {"b", nb}, {"c", nc}});
}

}  // namespace

TEST_CASE("half oscillation converts |100> to i|011>") {
    auto result = evolve(fock3(1, 0, 0), kAbc, kPi / 2);
    FockBasisVector converted({{"b", 1}, {"c", 1}});
    CHECK(std::abs(result.state.amplitude(converted) - complexd{0.0, 1.0}) < 1e-12);
    CHECK(result.state.probability(converted) == Approx(1.0).epsilon(1e-12));
    CHECK(result.subspace_dims == std::vector<int>{2});
}

TEST_CASE("full oscillation flips the sign of |011>") {
    auto result = evolve(fock3(0, 1, 1), kAbc, kPi);
    FockBasisVector v011({{"b", 1}, {"c", 1}});
    CHECK(std::abs(result.state.amplitude(v011) - complexd{-1.0, 0.0}) < 1e-12);
}

TEST_CASE("|200> revives exactly at theta = 2pi/sqrt(6)") {
    auto result = evolve(fock3(2, 0, 0), kAbc, 2.0 * kPi / std::sqrt(6.0));
    FockBasisVector v200({{"a", 2}});
    CHECK(std::abs(result.state.amplitude(v200) - complexd{1.0, 0.0}) < 1e-10);
}

TEST_CASE("return amplitudes") {
    SplitMix64 rng(111);
    for (int trial = 0; trial < 1000; ++trial) {
        const double theta = 100.0 * rng.next_double();
        CHECK(std::abs(return_amplitude(1, theta) - complexd{std::cos(theta), 0.0}) < 1e-12);
    }
    // n=2 at pi: closed form from the {0, +-sqrt(6)} spectrum with weights
    // {2/3, 1/6, 1/6}.
    const double expected = 2.0 / 3.0 + std::cos(std::sqrt(6.0) * kPi) / 3.0;
    CHECK(expected == Approx(0.7193391826176497).epsilon(1e-12));
    CHECK(return_amplitude(2, kPi).real() == Approx(expected).epsilon(1e-12));
    CHECK(std::abs(return_amplitude(2, kPi).imag()) < 1e-12);
    CHECK(return_amplitude(0, 17.3) == complexd{1.0, 0.0});
}

TEST_CASE("return amplitude matches the matrix-exponential oracle") {
    SplitMix64 rng(222);
    for (int n = 1; n <= 5; ++n) {
        auto basis = reachable_basis({FockBasisVector({{"a", n}})}, kAbc);
        auto cm = build_matrix(kAbc, basis);
        ChainSpectrum spectrum(n);
        for (int trial = 0; trial < 40; ++trial) {
            const double theta = 30.0 * rng.next_double();
            const Eigen::MatrixXcd u =
                oracle::matrix_exponential(complexd{0.0, -theta} * cm.entries);
            for (int j = 0; j <= n; ++j)
                CHECK(std::abs(spectrum.transfer_amplitude(j, theta) - u(j, 0)) < 1e-10);
        }
    }
}

TEST_CASE("evolve matches the matrix-exponential oracle on random states") {
    SplitMix64 rng(333);
    for (int trial = 0; trial < 100; ++trial) {
        // Random state inside the |300> chain (4-dim invariant subspace).
        auto basis = reachable_basis({FockBasisVector({{"a", 3}})}, kAbc);
        auto cm = build_matrix(kAbc, basis);
        Eigen::Vector4cd psi;
        for (int i = 0; i < 4; ++i)
            psi(i) = complexd{rng.next_double() - 0.5, rng.next_double() - 0.5};
        psi.normalize();

        std::map<FockBasisVector, complexd> amps;
        for (int i = 0; i < 4; ++i) amps[basis[i]] = psi(i);
        QuantumState state(kRegistry, amps);

        const double theta = 20.0 * rng.next_double();
        auto evolved = evolve(state, kAbc, theta).state;
        const Eigen::MatrixXcd u = oracle::matrix_exponential(complexd{0.0, -theta} * cm.entries);
        Eigen::Vector4cd expected = u * psi;
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(evolved.amplitude(basis[i]) - expected(i)) < 1e-10);
    }
}

TEST_CASE("unitarity for random states and angles") {
    SplitMix64 rng(444);
    for (int trial = 0; trial < 1000; ++trial) {
        auto psi = oracle::random_state(rng, {"a", "b", "c"}, 3, 5);
        const double theta = 100.0 * rng.next_double();
        auto evolved = evolve(psi, kAbc, theta).state;
        CHECK(evolved.norm_sq() == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("group property") {
    SplitMix64 rng(555);
    for (int trial = 0; trial < 200; ++trial) {
        auto psi = oracle::random_state(rng, {"a", "b", "c"}, 3, 4);
        const double t1 = 10.0 * rng.next_double();
        const double t2 = 10.0 * rng.next_double();
        auto two_step = evolve(evolve(psi, kAbc, t1).state, kAbc, t2).state;
        auto one_step = evolve(psi, kAbc, t1 + t2).state;
        for (const auto& [v, a] : one_step.amplitudes())
            CHECK(std::abs(two_step.amplitude(v) - a) < 1e-10);
    }
}

TEST_CASE("conserved mode sums under nondegenerate evolution") {
    SplitMix64 rng(666);
    for (int trial = 0; trial < 300; ++trial) {
        auto psi = oracle::random_state(rng, {"a", "b", "c"}, 3, 4);
        const double theta = 50.0 * rng.next_double();
        auto evolved = evolve(psi, kAbc, theta).state;
        const double ab_before = mean_occupation(psi, "a") + mean_occupation(psi, "b");
        const double ab_after = mean_occupation(evolved, "a") + mean_occupation(evolved, "b");
        const double ac_before = mean_occupation(psi, "a") + mean_occupation(psi, "c");
        const double ac_after = mean_occupation(evolved, "a") + mean_occupation(evolved, "c");
        CHECK(ab_after == Approx(ab_before).epsilon(1e-10));
        CHECK(ac_after == Approx(ac_before).epsilon(1e-10));
    }
}

TEST_CASE("coherent input shows no full revival while |100> does") {
    auto coherent = make_coherent(std::sqrt(1.5), "a", {}, kRegistry);
    const double before = mean_occupation(coherent, "a");
    auto evolved = evolve(coherent, kAbc, kPi).state;
    const double after = mean_occupation(evolved, "a");
    CHECK(after < before - 1e-3);  // strictly not restored

    auto fock = evolve(fock3(1, 0, 0), kAbc, kPi).state;
    CHECK(fock.probability(FockBasisVector({{"a", 1}})) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("population traces") {
    auto trace = population_trace(1, 2.0 * kPi, 201);
    REQUIRE(trace.size() == 201);
    CHECK(trace.front().first == 0.0);
    CHECK(trace.back().first == Approx(2.0 * kPi));
    for (const auto& [theta, p] : trace)
        CHECK(p == Approx(std::cos(theta) * std::cos(theta)).epsilon(1e-10));

    // All traces start at 1.
    for (int n = 1; n <= 4; ++n) CHECK(population_trace(n, 1.0, 2).front().second == Approx(1.0));

    // n=3 is not pi-periodic (incommensurate eigenfrequencies).
    auto t3 = population_trace(3, 2.0 * kPi, 400);
    double max_shift = 0.0;
    for (std::size_t i = 0; i + 200 < t3.size(); ++i)
        max_shift = std::max(max_shift, std::abs(t3[i].second - t3[i + 200].second));
    CHECK(max_shift > 0.1);

    CHECK_THROWS_AS(population_trace(1, 1.0, 1), std::invalid_argument);
}

TEST_CASE("disjoint subspaces evolve independently") {
    // Superposition of |100> and |300> seeds: two invariant subspaces.
    std::map<FockBasisVector, complexd> amps;
    amps[FockBasisVector({{"a", 1}})] = std::sqrt(0.5);
    amps[FockBasisVector({{"a", 3}})] = std::sqrt(0.5);
    QuantumState psi(kRegistry, amps);
    auto result = evolve(psi, kAbc, 0.3);
    REQUIRE(result.subspace_dims.size() == 2);
    CHECK(result.subspace_dims[0] + result.subspace_dims[1] == 6);
    CHECK(result.state.norm_sq() == Approx(1.0).epsilon(1e-12));
}

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "cpc/fock.hpp"
#include "cpc/rng.hpp"

// Test-side oracles, kept independent of the library's evolution path.
namespace oracle {

// Scaling-and-squaring Taylor exponential. The library evolves through an
// eigendecomposition; this is the independent route used to cross-check it.
inline Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& m) {
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::pow(2.0, squarings) > 0.5) ++squarings;

    const Eigen::MatrixXcd scaled = m / std::pow(2.0, squarings);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k <= 32; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

// Poisson pmf via the same ascending recurrence the truncation honesty
// property is stated against.
inline std::vector<double> poisson_pmf(double mean, int cutoff) {
    std::vector<double> pmf(cutoff + 1);
    pmf[0] = std::exp(-mean);
    for (int n = 1; n <= cutoff; ++n) pmf[n] = pmf[n - 1] * mean / n;
    return pmf;
}

// Random normalized state over the given modes with occupations < max_occ.
inline cpc::QuantumState random_state(cpc::SplitMix64& rng,
                                      const std::vector<std::string>& modes, int max_occ,
                                      int support) {
    auto registry = cpc::make_registry(modes);
    std::map<cpc::FockBasisVector, cpc::complexd> amps;
    for (int s = 0; s < support; ++s) {
        std::map<std::string, int> occ;
        for (const auto& m : modes)
            occ[m] = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_occ));
        amps[cpc::FockBasisVector(occ)] =
            cpc::complexd{rng.next_double() - 0.5, rng.next_double() - 0.5};
    }
    double norm = 0.0;
    for (const auto& [v, a] : amps) norm += std::norm(a);
    const double inv = 1.0 / std::sqrt(norm);
    for (auto& [v, a] : amps) a *= inv;
    return cpc::QuantumState(registry, std::move(amps), 1.0);
}

}  // namespace oracle

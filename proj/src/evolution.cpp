#include "cpc/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace cpc {

void fix_eigenvector_signs(Eigen::MatrixXcd& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
            const double mag = std::abs(vectors(r, c));
            if (mag > best) {
                best = mag;
                imax = r;
            }
        }
        const complexd pivot = vectors(imax, c);
        if (std::abs(pivot) > 0.0) vectors.col(c) *= std::conj(pivot) / std::abs(pivot);
    }
}

namespace {

// Connected components of the support under the coupling; each component is
// returned as its full reachable basis.
std::vector<std::vector<FockBasisVector>> support_components(
    const std::vector<FockBasisVector>& support, const Coupling& coupling) {
    std::vector<std::vector<FockBasisVector>> components;
    std::set<FockBasisVector> assigned;
    for (const auto& v : support) {
        if (assigned.count(v)) continue;
        auto basis = reachable_basis({v}, coupling);
        for (const auto& b : basis) assigned.insert(b);
        components.push_back(std::move(basis));
    }
    return components;
}

}  // namespace

EvolutionResult evolve(const QuantumState& state, const Coupling& coupling, double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("evolve: theta must be finite");

    std::vector<FockBasisVector> support;
    support.reserve(state.support_size());
    for (const auto& [v, a] : state.amplitudes()) support.push_back(v);

    std::map<FockBasisVector, complexd> out;
    std::vector<int> dims;
    for (const auto& basis : support_components(support, coupling)) {
        const auto cm = build_matrix(coupling, basis);
        const Eigen::Index dim = cm.entries.rows();
        dims.push_back(static_cast<int>(dim));

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(cm.entries);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("evolve: eigensolver failed on a " + std::to_string(dim) +
                                     "-dim coupling matrix");
        Eigen::MatrixXcd vectors = solver.eigenvectors();
        fix_eigenvector_signs(vectors);

        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        for (Eigen::Index i = 0; i < dim; ++i) psi(i) = state.amplitude(basis[i]);

        Eigen::VectorXcd phases(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            phases(i) = std::exp(complexd(0.0, -theta * solver.eigenvalues()(i)));
        Eigen::VectorXcd evolved = vectors * phases.asDiagonal() * (vectors.adjoint() * psi);

        for (Eigen::Index i = 0; i < dim; ++i) {
            if (std::abs(evolved(i)) >= kAmplitudePruneThreshold) out[basis[i]] += evolved(i);
        }
    }
    return EvolutionResult{QuantumState(state.registry(), std::move(out), state.norm_weight()),
                           theta, std::move(dims)};
}

ChainSpectrum::ChainSpectrum(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("ChainSpectrum: n must be >= 0");
    const auto coupling = Coupling::nondegenerate("a", "b", "c");
    FockBasisVector seed = FockBasisVector{}.with("a", n);
    const auto basis = reachable_basis({seed}, coupling);
    const auto cm = build_matrix(coupling, basis);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(cm.entries);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("ChainSpectrum: eigensolver failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
    fix_eigenvector_signs(eigenvectors_);
}

complexd ChainSpectrum::return_amplitude(double theta) const { return transfer_amplitude(0, theta); }

complexd ChainSpectrum::transfer_amplitude(int j, double theta) const {
    if (j < 0 || j > n_) throw std::invalid_argument("ChainSpectrum: j out of range");
    complexd amp{0.0, 0.0};
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
        amp += eigenvectors_(j, k) * std::conj(eigenvectors_(0, k)) *
               std::exp(complexd(0.0, -theta * eigenvalues_(k)));
    }
    return amp;
}

complexd return_amplitude(int n, double theta) {
    if (n < 0) throw std::invalid_argument("return_amplitude: n must be >= 0");
    if (n == 0) return {1.0, 0.0};
    return ChainSpectrum(n).return_amplitude(theta);
}

std::vector<std::pair<double, double>> population_trace(int n, double theta_max, int samples) {
    if (samples < 2) throw std::invalid_argument("population_trace: samples must be >= 2");
    ChainSpectrum spectrum(n);
    std::vector<std::pair<double, double>> trace;
    trace.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double theta = theta_max * i / (samples - 1);
        trace.emplace_back(theta, std::norm(spectrum.return_amplitude(theta)));
    }
    return trace;
}

}  // namespace cpc

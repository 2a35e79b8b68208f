#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "cpc/coupling.hpp"
#include "cpc/fock.hpp"

namespace cpc {

struct EvolutionResult {
    QuantumState state;
    double theta = 0.0;
    std::vector<int> subspace_dims;  // dimensions of the invariant subspaces touched
};

// Exact unitary evolution |psi_out> = exp(-i*theta*M)|psi_in>, with M the
// coupling matrix on each invariant subspace reachable from the input
// support. The subspaces these couplings generate are tiny, so a dense
// eigendecomposition is exact and cheap; there is no step-size to tune.
EvolutionResult evolve(const QuantumState& state, const Coupling& coupling, double theta);

// Spectral data of the |n00> nondegenerate chain (basis |n-j, j, j>,
// j = 0..n), precomputed once so amplitude evaluations along a theta scan are
// O(n) each.
class ChainSpectrum {
public:
    explicit ChainSpectrum(int n);

    int n() const { return n_; }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

    // <n00| U(theta) |n00>
    complexd return_amplitude(double theta) const;
    // <n-j, j, j| U(theta) |n00>
    complexd transfer_amplitude(int j, double theta) const;

private:
    int n_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;  // columns, sign-fixed
};

// <n00|U(theta)|n00>. For n=1 this is cos(theta).
complexd return_amplitude(int n, double theta);

// Uniform samples of |return_amplitude(n, theta)|^2 over [0, theta_max],
// endpoints included. Throws std::invalid_argument for samples < 2.
std::vector<std::pair<double, double>> population_trace(int n, double theta_max, int samples);

// Deterministic eigenvector sign fix: the largest-magnitude component of each
// column is made real positive.
void fix_eigenvector_signs(Eigen::MatrixXcd& vectors);

}  // namespace cpc

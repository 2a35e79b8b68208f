#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpc/fock.hpp"

namespace cpc {

// The three pumped interaction shapes. In each case one classical pump has
// been absorbed into the coupling, leaving an effective interaction whose
// only dynamical knob is the dimensionless angle theta = Gamma*t supplied at
// evolution time. `strength_phase` is the unit-modulus phase of the coupling
// constant.
//
//   Nondegenerate(a,b,c): one a-photon <-> one b-photon + one c-photon
//   Degenerate(a,b):      one a-photon <-> two b-photons
//   Converter(a,c):       one a-photon <-> one c-photon (beamsplitter-like)
enum class CouplingKind { nondegenerate, degenerate, converter };

struct Coupling {
    CouplingKind kind = CouplingKind::nondegenerate;
    std::string mode_a;  // source mode (loses one photon in the forward direction)
    std::string mode_b;  // gains photons (both for degenerate; first for nondegenerate)
    std::string mode_c;  // second target (nondegenerate) / conversion target (converter)
    complexd strength_phase{1.0, 0.0};

    static Coupling nondegenerate(std::string a, std::string b, std::string c,
                                  complexd phase = {1.0, 0.0});
    static Coupling degenerate(std::string a, std::string b, complexd phase = {1.0, 0.0});
    static Coupling converter(std::string source, std::string target,
                              complexd phase = {1.0, 0.0});

    std::vector<std::string> modes() const;
};

// Hermitian generator restricted to a finite basis, in units of Gamma.
// Zero diagonal; entries connect only vectors one interaction apart.
//
// Sign convention: the stored generator is the negative of the raw
// three-wave-mixing matrix, so that exp(-i*theta*M) carries the converted
// branch with amplitude +i*strength_phase*sin(theta). With the default real
// positive phase, |100> evolves to cos(theta)|100> + i sin(theta)|011>.
struct CouplingMatrix {
    std::vector<FockBasisVector> basis;
    Eigen::MatrixXcd entries;
};

// One forward application of the interaction (a loses a photon). Returns the
// target vector and the matrix-element magnitude, or nullopt if the source
// mode is empty.
std::optional<std::pair<FockBasisVector, double>> apply_forward(const Coupling& coupling,
                                                                const FockBasisVector& v);
// One backward application (a gains a photon).
std::optional<std::pair<FockBasisVector, double>> apply_backward(const Coupling& coupling,
                                                                 const FockBasisVector& v);

// Closure of the seed support under repeated interaction application,
// ordered by decreasing occupation of the source mode (ties broken
// lexicographically) so serialized results are reproducible.
std::vector<FockBasisVector> reachable_basis(const std::vector<FockBasisVector>& seed,
                                             const Coupling& coupling);

// Hermitian matrix of the coupling on a closed basis. Throws
// std::invalid_argument if the basis is not closed under the coupling.
CouplingMatrix build_matrix(const Coupling& coupling,
                            const std::vector<FockBasisVector>& basis);

}  // namespace cpc

#include "cpc/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace cpc {

namespace {

void require_unit_phase(complexd phase) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-12)
        throw std::invalid_argument("Coupling: strength_phase must have unit modulus");
}

}  // namespace

Coupling Coupling::nondegenerate(std::string a, std::string b, std::string c, complexd phase) {
    if (a == b || a == c || b == c)
        throw std::invalid_argument("Coupling::nondegenerate: mode roles must be distinct");
    require_unit_phase(phase);
    return Coupling{CouplingKind::nondegenerate, std::move(a), std::move(b), std::move(c), phase};
}

Coupling Coupling::degenerate(std::string a, std::string b, complexd phase) {
    if (a == b) throw std::invalid_argument("Coupling::degenerate: mode roles must be distinct");
    require_unit_phase(phase);
    return Coupling{CouplingKind::degenerate, std::move(a), std::move(b), "", phase};
}

Coupling Coupling::converter(std::string source, std::string target, complexd phase) {
    if (source == target)
        throw std::invalid_argument("Coupling::converter: mode roles must be distinct");
    require_unit_phase(phase);
    return Coupling{CouplingKind::converter, std::move(source), "", std::move(target), phase};
}

std::vector<std::string> Coupling::modes() const {
    switch (kind) {
        case CouplingKind::nondegenerate: return {mode_a, mode_b, mode_c};
        case CouplingKind::degenerate: return {mode_a, mode_b};
        case CouplingKind::converter: return {mode_a, mode_c};
    }
    return {};
}

std::optional<std::pair<FockBasisVector, double>> apply_forward(const Coupling& coupling,
                                                                const FockBasisVector& v) {
    const int na = v.occupation(coupling.mode_a);
    if (na == 0) return std::nullopt;
    switch (coupling.kind) {
        case CouplingKind::nondegenerate: {
            const int nb = v.occupation(coupling.mode_b);
            const int nc = v.occupation(coupling.mode_c);
            FockBasisVector out = v.with(coupling.mode_a, na - 1)
                                      .with(coupling.mode_b, nb + 1)
                                      .with(coupling.mode_c, nc + 1);
            return std::make_pair(out, std::sqrt(double(na) * (nb + 1) * (nc + 1)));
        }
        case CouplingKind::degenerate: {
            const int nb = v.occupation(coupling.mode_b);
            FockBasisVector out =
                v.with(coupling.mode_a, na - 1).with(coupling.mode_b, nb + 2);
            return std::make_pair(out, std::sqrt(double(na) * (nb + 1) * (nb + 2)));
        }
        case CouplingKind::converter: {
            const int nc = v.occupation(coupling.mode_c);
            FockBasisVector out =
                v.with(coupling.mode_a, na - 1).with(coupling.mode_c, nc + 1);
            return std::make_pair(out, std::sqrt(double(na) * (nc + 1)));
        }
    }
    return std::nullopt;
}

std::optional<std::pair<FockBasisVector, double>> apply_backward(const Coupling& coupling,
                                                                 const FockBasisVector& v) {
    const int na = v.occupation(coupling.mode_a);
    switch (coupling.kind) {
        case CouplingKind::nondegenerate: {
            const int nb = v.occupation(coupling.mode_b);
            const int nc = v.occupation(coupling.mode_c);
            if (nb == 0 || nc == 0) return std::nullopt;
            FockBasisVector out = v.with(coupling.mode_a, na + 1)
                                      .with(coupling.mode_b, nb - 1)
                                      .with(coupling.mode_c, nc - 1);
            return std::make_pair(out, std::sqrt(double(na + 1) * nb * nc));
        }
        case CouplingKind::degenerate: {
            const int nb = v.occupation(coupling.mode_b);
            if (nb < 2) return std::nullopt;
            FockBasisVector out =
                v.with(coupling.mode_a, na + 1).with(coupling.mode_b, nb - 2);
            return std::make_pair(out, std::sqrt(double(na + 1) * nb * (nb - 1)));
        }
        case CouplingKind::converter: {
            const int nc = v.occupation(coupling.mode_c);
            if (nc == 0) return std::nullopt;
            FockBasisVector out =
                v.with(coupling.mode_a, na + 1).with(coupling.mode_c, nc - 1);
            return std::make_pair(out, std::sqrt(double(na + 1) * nc));
        }
    }
    return std::nullopt;
}

std::vector<FockBasisVector> reachable_basis(const std::vector<FockBasisVector>& seed,
                                             const Coupling& coupling) {
    std::set<FockBasisVector> seen(seed.begin(), seed.end());
    std::deque<FockBasisVector> frontier(seed.begin(), seed.end());
    while (!frontier.empty()) {
        FockBasisVector v = frontier.front();
        frontier.pop_front();
        for (auto step : {apply_forward(coupling, v), apply_backward(coupling, v)}) {
            if (step && seen.insert(step->first).second) frontier.push_back(step->first);
        }
    }
    std::vector<FockBasisVector> basis(seen.begin(), seen.end());
    const std::string& src = coupling.mode_a;
    std::sort(basis.begin(), basis.end(), [&](const FockBasisVector& x, const FockBasisVector& y) {
        const int xa = x.occupation(src), ya = y.occupation(src);
        if (xa != ya) return xa > ya;
        return x < y;
    });
    return basis;
}

CouplingMatrix build_matrix(const Coupling& coupling, const std::vector<FockBasisVector>& basis) {
    std::map<FockBasisVector, Eigen::Index> index;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(basis.size()); ++i)
        index.emplace(basis[i], i);

    const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        auto step = apply_forward(coupling, basis[i]);
        if (!step) continue;
        auto it = index.find(step->first);
        if (it == index.end())
            throw std::invalid_argument("build_matrix: inconsistent-basis (not closed under coupling)");
        // Negative sign: see CouplingMatrix docs.
        const complexd element = -coupling.strength_phase * step->second;
        m(it->second, i) = element;
        m(i, it->second) = std::conj(element);
    }
    // Closure must also hold backwards.
    for (Eigen::Index i = 0; i < dim; ++i) {
        auto step = apply_backward(coupling, basis[i]);
        if (step && index.find(step->first) == index.end())
            throw std::invalid_argument("build_matrix: inconsistent-basis (not closed under coupling)");
    }
    return CouplingMatrix{basis, std::move(m)};
}

}  // namespace cpc

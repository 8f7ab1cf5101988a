#include "dicke/angular_momentum.hpp"

#include "dicke/errors.hpp"
#include "dicke/master_equation.hpp"

#include <string>

namespace dicke {

std::map<int, BlockSteadyState> dicke_point_blocks(int n_qubits, double gamma) {
    const DegeneracyTable table = degeneracy(n_qubits);
    std::map<int, BlockSteadyState> blocks;
    for (const auto& [twice_s, d] : table.d_s) {
        if (d == 0) continue;
        blocks.emplace(twice_s, block_steady_state(twice_s, 2.0 * n_qubits * gamma, 0.0, gamma));
    }
    return blocks;
}

SubspaceProjection build_subspace(const AMBasis& basis, const std::map<int, BlockSteadyState>& blocks) {
    SubspaceProjection proj;
    proj.n_qubits = basis.n_qubits;
    for (const auto& [twice_s, d] : basis.degeneracy.d_s) {
        if (d == 0) continue;
        const auto it = blocks.find(twice_s);
        if (it == blocks.end()) {
            throw ConfigError("no block steady state supplied for 2S=" + std::to_string(twice_s));
        }
        const ComplexMatrix& coeffs = it->second.rho;
        if (coeffs.rows() != twice_s + 1 || coeffs.cols() != twice_s + 1) {
            throw ConfigError("block steady state for 2S=" + std::to_string(twice_s) +
                              " has the wrong size");
        }
        std::vector<DenseOperator> towers;
        for (std::uint64_t a = 0; a < d; ++a) {
            towers.push_back(basis.tower(twice_s, static_cast<int>(a)));
        }
        for (std::uint64_t a = 0; a < d; ++a) {
            for (std::uint64_t b = 0; b < d; ++b) {
                proj.eta.push_back({twice_s, static_cast<int>(a), static_cast<int>(b)});
                proj.basis_ops.push_back(towers[a] * coeffs * towers[b].adjoint());
                proj.left_ops.push_back(towers[b] * towers[a].adjoint());
            }
        }
    }
    return proj;
}

DenseOperator SubspaceProjection::expand(const ComplexVector& r) const {
    if (r.size() != size() || basis_ops.empty()) {
        throw DimensionError("coefficient vector does not match the subspace size");
    }
    DenseOperator out = DenseOperator::Zero(basis_ops[0].rows(), basis_ops[0].cols());
    for (Index k = 0; k < size(); ++k) out += r(k) * basis_ops[k];
    return out;
}

SubspaceProjection coupling_matrix(SubspaceProjection proj, const PerturbationSpec& perturbation,
                                   const SystemConfig& base) {
    if (base.n_qubits != proj.n_qubits) {
        throw ConfigError("subspace and configuration disagree on n_qubits");
    }
    const MasterEquation reference(realize({PerturbationKind::None, 0.0}, base));
    const MasterEquation perturbed(realize(perturbation, base));

    const Index n = proj.size();
    proj.coupling = ComplexMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        const DenseOperator delta = perturbed.apply(proj.basis_ops[j]) - reference.apply(proj.basis_ops[j]);
        for (Index i = 0; i < n; ++i) {
            // Tr(A B) = sum_{kl} A_kl B_lk
            proj.coupling(i, j) = proj.left_ops[i].cwiseProduct(delta.transpose()).sum();
        }
    }
    proj.perturbation = perturbation;
    proj.overlap.reset();
    if (perturbation.kind == PerturbationKind::Dephasing && perturbation.strength != 0.0) {
        proj.overlap = 4.0 / perturbation.strength * proj.coupling +
                       static_cast<double>(proj.n_qubits) * ComplexMatrix::Identity(n, n);
    }
    return proj;
}

}  // namespace dicke

// master_equation.hpp: Hamiltonian + waveguide Lindbladian + local dephasing for
// an N-qubit array, and the right-hand side d rho / dt applied to dense operators.

#pragma once

#include "dicke/system_model.hpp"
#include "dicke/types.hpp"
#include "dicke/waveguide.hpp"

#include <Eigen/SparseCore>

#include <vector>

namespace dicke {

/// rate * L rho L^dagger - (rate/2) {L^dagger L, rho}; the anticommutator part is
/// folded into MasterEquation::decay_generator().
struct JumpChannel {
    double rate = 0.0;
    DenseOperator op;
};

/// sigma_m^+ sigma_n^- (a number operator when m == n).
DenseOperator hop_operator(int n_qubits, int m, int n);

class MasterEquation {
public:
    explicit MasterEquation(const SystemConfig& config);

    const SystemConfig& config() const { return config_; }
    const CouplingTables& couplings() const { return tables_; }
    int n_qubits() const { return config_.n_qubits; }
    Index dim() const { return hamiltonian_.rows(); }

    const DenseOperator& hamiltonian() const { return hamiltonian_; }
    /// J = sum_{n,m} Gamma_nm sigma_m^+ sigma_n^-, Hermitian.
    const DenseOperator& decay_generator() const { return decay_generator_; }
    /// Diagonalized correlated-decay channels: sum_k rate_k L_k rho L_k^dagger
    /// reproduces sum_{n,m} Gamma_nm sigma_n^- rho sigma_m^+.
    const std::vector<JumpChannel>& jumps() const { return jumps_; }
    double dephasing_rate() const { return config_.dephasing_rate; }

    /// drho = -i[H, rho] + L[rho] + dephasing[rho]. `drho` is resized as needed.
    void apply(const DenseOperator& rho, DenseOperator& drho) const;
    DenseOperator apply(const DenseOperator& rho) const;

private:
    using Sparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

    SystemConfig config_;
    CouplingTables tables_;
    DenseOperator hamiltonian_;
    DenseOperator decay_generator_;
    std::vector<JumpChannel> jumps_;

    // Cached for apply(): K = H - (i/2) J and the jump operators, sparse.
    Sparse effective_sparse_;
    std::vector<Sparse> jump_sparse_;
    RealMatrix dephasing_mask_;
};

MasterEquation build_master_equation(const SystemConfig& config);

DenseOperator apply_rhs(const MasterEquation& me, const DenseOperator& rho);

}  // namespace dicke

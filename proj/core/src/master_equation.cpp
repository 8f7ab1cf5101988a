#include "dicke/master_equation.hpp"

#include "dicke/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace dicke {

DenseOperator hop_operator(int n_qubits, int m, int n) {
    if (m < 0 || m >= n_qubits || n < 0 || n >= n_qubits) {
        throw std::out_of_range("hop_operator: site index out of range");
    }
    const Index dim = Index{1} << n_qubits;
    const Index mask_m = Index{1} << (n_qubits - 1 - m);
    const Index mask_n = Index{1} << (n_qubits - 1 - n);
    DenseOperator op = DenseOperator::Zero(dim, dim);
    for (Index j = 0; j < dim; ++j) {
        if (m == n) {
            if (j & mask_n) op(j, j) = 1.0;
        } else if ((j & mask_n) && !(j & mask_m)) {
            op((j & ~mask_n) | mask_m, j) = 1.0;
        }
    }
    return op;
}

MasterEquation::MasterEquation(const SystemConfig& config)
    : config_(config), tables_(green_function_tables(config)) {
    config_.validate();
    const int n_qubits = config_.n_qubits;
    const Index dim = Index{1} << n_qubits;

    hamiltonian_ = DenseOperator::Zero(dim, dim);
    for (int n = 0; n < n_qubits; ++n) {
        const Complex drive = config_.rabi_amplitude * std::polar(1.0, config_.drive_phases[n]);
        hamiltonian_ += 0.5 * drive * site_operator(n_qubits, n, SpinOp::Raise);
        hamiltonian_ += 0.5 * std::conj(drive) * site_operator(n_qubits, n, SpinOp::Lower);
        hamiltonian_ -= 0.5 * config_.detunings[n] * site_operator(n_qubits, n, SpinOp::Z);
    }

    decay_generator_ = DenseOperator::Zero(dim, dim);
    for (int n = 0; n < n_qubits; ++n) {
        for (int m = 0; m < n_qubits; ++m) {
            const double exchange = tables_.exchange(n, m);
            const double decay = tables_.decay(n, m);
            if (exchange == 0.0 && decay == 0.0) continue;
            const DenseOperator hop = hop_operator(n_qubits, m, n);
            if (n != m && exchange != 0.0) hamiltonian_ += exchange * hop;
            if (decay != 0.0) decay_generator_ += decay * hop;
        }
    }

    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(tables_.decay);
    const double scale = eig.eigenvalues().cwiseAbs().maxCoeff();
    for (int k = 0; k < n_qubits; ++k) {
        const double rate = eig.eigenvalues()(k);
        if (std::abs(rate) <= 1e-12 * scale) continue;
        DenseOperator op = DenseOperator::Zero(dim, dim);
        for (int n = 0; n < n_qubits; ++n) {
            const double weight = eig.eigenvectors()(n, k);
            if (weight != 0.0) op += weight * site_operator(n_qubits, n, SpinOp::Lower);
        }
        jumps_.push_back({rate, std::move(op)});
    }

    const DenseOperator effective = hamiltonian_ - 0.5 * kI * decay_generator_;
    effective_sparse_ = effective.sparseView();
    for (const auto& jump : jumps_) {
        jump_sparse_.push_back(jump.op.sparseView());
    }
    if (config_.dephasing_rate > 0.0) {
        dephasing_mask_.resize(dim, dim);
        for (Index i = 0; i < dim; ++i) {
            for (Index j = 0; j < dim; ++j) {
                dephasing_mask_(i, j) = -0.5 * config_.dephasing_rate * excitation_count(i ^ j);
            }
        }
    }
}

void MasterEquation::apply(const DenseOperator& rho, DenseOperator& drho) const {
    const Index d = dim();
    if (rho.rows() != d || rho.cols() != d) {
        throw DimensionError("apply_rhs: rho is " + std::to_string(rho.rows()) + "x" +
                             std::to_string(rho.cols()) + ", expected " + std::to_string(d));
    }
    // -i (K rho - rho K^dagger) with rho K^dagger = (K rho^dagger)^dagger.
    DenseOperator left = effective_sparse_ * rho;
    DenseOperator right_adj = effective_sparse_ * rho.adjoint();
    drho = -kI * (left - right_adj.adjoint());

    // L rho L^dagger = (L (L rho)^dagger)^dagger.
    DenseOperator tmp(d, d);
    DenseOperator tmp2(d, d);
    for (std::size_t k = 0; k < jumps_.size(); ++k) {
        tmp.noalias() = jump_sparse_[k] * rho;
        tmp2.noalias() = jump_sparse_[k] * tmp.adjoint();
        drho += jumps_[k].rate * tmp2.adjoint();
    }
    if (dephasing_mask_.size() != 0) {
        drho += dephasing_mask_.cast<Complex>().cwiseProduct(rho);
    }
}

DenseOperator MasterEquation::apply(const DenseOperator& rho) const {
    DenseOperator out;
    apply(rho, out);
    return out;
}

MasterEquation build_master_equation(const SystemConfig& config) {
    return MasterEquation(config);
}

DenseOperator apply_rhs(const MasterEquation& me, const DenseOperator& rho) {
    return me.apply(rho);
}

}  // namespace dicke

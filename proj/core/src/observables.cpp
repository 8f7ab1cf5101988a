#include "dicke/observables.hpp"

#include "dicke/angular_momentum.hpp"
#include "dicke/errors.hpp"
#include "dicke/waveguide.hpp"

namespace dicke {

ObservableEvaluator::ObservableEvaluator(const SystemConfig& config) : config_(config) {
    config_.validate();
    const int n_qubits = config_.n_qubits;
    const Index dim = Index{1} << n_qubits;

    excitations_.resize(dim);
    for (Index i = 0; i < dim; ++i) excitations_(i) = config_.gamma * excitation_count(i);

    const CouplingTables tables = green_function_tables(config_);
    DenseOperator correlated = DenseOperator::Zero(dim, dim);
    for (int n = 0; n < n_qubits; ++n) {
        for (int m = 0; m < n_qubits; ++m) {
            if (n != m && tables.decay(n, m) != 0.0) {
                correlated += tables.decay(n, m) * hop_operator(n_qubits, m, n);
            }
        }
    }
    correlated_ = correlated.sparseView();
    projector_ = smax_projector(build_basis(n_qubits));
}

Observables ObservableEvaluator::operator()(const DenseOperator& rho) const {
    const Index dim = excitations_.size();
    if (rho.rows() != dim || rho.cols() != dim) {
        throw DimensionError("observables: rho has the wrong dimension");
    }
    Observables o;
    o.gamma0 = (excitations_.array() * rho.diagonal().real().array()).sum();
    // Tr(rho A) = sum_{ij} A_ij rho_ji
    Complex sr = 0.0;
    for (Index i = 0; i < correlated_.outerSize(); ++i) {
        for (decltype(correlated_)::InnerIterator it(correlated_, i); it; ++it) {
            sr += it.value() * rho(it.col(), it.row());
        }
    }
    o.gamma_sr = sr.real();
    o.gamma_tot = o.gamma0 + o.gamma_sr;
    o.pop_smax = projector_.transpose().cwiseProduct(rho).sum().real();
    return o;
}

Observables observables(const SystemConfig& config, const DenseOperator& rho) {
    return ObservableEvaluator(config)(rho);
}

}  // namespace dicke

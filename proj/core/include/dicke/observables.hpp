// observables.hpp: Photon-emission rates and the S = N/2 population.

#pragma once

#include "dicke/master_equation.hpp"
#include "dicke/system_model.hpp"
#include "dicke/types.hpp"

#include <Eigen/SparseCore>

namespace dicke {

/// Raw rates (not divided by N Gamma).
struct Observables {
    double gamma0 = 0.0;     // sum_n Gamma <s_n^+ s_n^->
    double gamma_sr = 0.0;   // sum_{n != m} Gamma_nm <s_m^+ s_n^->
    double gamma_tot = 0.0;  // gamma0 + gamma_sr
    double pop_smax = 0.0;   // Tr(P_{S=N/2} rho)
};

/// Caches the operators so repeated evaluation along a trajectory is cheap.
class ObservableEvaluator {
public:
    explicit ObservableEvaluator(const SystemConfig& config);
    explicit ObservableEvaluator(const MasterEquation& me) : ObservableEvaluator(me.config()) {}

    Observables operator()(const DenseOperator& rho) const;

private:
    SystemConfig config_;
    RealVector excitations_;  // Gamma * popcount(i)
    Eigen::SparseMatrix<Complex, Eigen::RowMajor> correlated_;
    DenseOperator projector_;
};

Observables observables(const SystemConfig& config, const DenseOperator& rho);

}  // namespace dicke

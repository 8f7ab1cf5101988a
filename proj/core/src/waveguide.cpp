#include "dicke/waveguide.hpp"

#include <cmath>

namespace dicke {

CouplingTables green_function_tables(const SystemConfig& config) {
    const int n = config.n_qubits;
    CouplingTables t{RealMatrix::Zero(n, n), RealMatrix::Zero(n, n)};
    for (int i = 0; i < n; ++i) {
        t.decay(i, i) = config.gamma;
        for (int j = i + 1; j < n; ++j) {
            const double phase =
                config.wave_number * std::abs(config.positions[i] - config.positions[j]);
            // -i (Gamma/2) e^{i phase} = (Gamma/2) sin(phase) - i (Gamma/2) cos(phase)
            const double omega = 0.5 * config.gamma * std::sin(phase);
            const double decay = config.gamma * std::cos(phase);
            t.exchange(i, j) = t.exchange(j, i) = omega;
            t.decay(i, j) = t.decay(j, i) = decay;
        }
    }
    return t;
}

CouplingDeltas coupling_deltas(double delta_d, const SystemConfig& base) {
    if (delta_d == 0.0) {
        const int n = base.n_qubits;
        return {RealMatrix::Zero(n, n), RealMatrix::Zero(n, n)};
    }
    const SystemConfig perturbed = realize({PerturbationKind::Separation, delta_d}, base);
    const CouplingTables a = green_function_tables(base);
    const CouplingTables b = green_function_tables(perturbed);
    return {b.exchange - a.exchange, b.decay - a.decay};
}

}  // namespace dicke

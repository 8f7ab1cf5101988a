// waveguide.hpp: Exchange and correlated-decay tables from the bidirectional
// 1D waveguide Green's function, Omega_nm - i Gamma_nm / 2 = -i (Gamma/2) e^{ik|z_n - z_m|}.

#pragma once

#include "dicke/system_model.hpp"
#include "dicke/types.hpp"

namespace dicke {

struct CouplingTables {
    RealMatrix exchange;  // Omega_nm, zero on the diagonal
    RealMatrix decay;     // Gamma_nm, Gamma on the diagonal
};

struct CouplingDeltas {
    RealMatrix d_exchange;
    RealMatrix d_decay;
};

CouplingTables green_function_tables(const SystemConfig& config);

/// Exact change of both tables when the lattice constant of `base` grows by
/// `delta_d` wavelengths.
CouplingDeltas coupling_deltas(double delta_d, const SystemConfig& base);

}  // namespace dicke

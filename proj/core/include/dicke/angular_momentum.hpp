// angular_momentum.hpp: Sequential spin-1/2 coupling basis |a, S, M>, Dicke
// degeneracy counting, S-block steady states and the degenerate-subspace
// projection of a perturbation superoperator.
//
// Spins are stored doubled (twice_s = 2S, twice_m = 2M) so half-integers stay
// exact. M counts excitations: M = (#excited - #ground) / 2, so the all-ground
// product state is |S = N/2, M = -N/2>.

#pragma once

#include "dicke/system_model.hpp"
#include "dicke/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace dicke {

struct AMBasisState {
    std::vector<int> intermediate_twice;  // 2 S_12, 2 S_123, ..., 2 S_1..N-1
    int twice_s = 0;
    int twice_m = 0;
    int coupling_index = 0;  // a

    double total_spin() const { return twice_s / 2.0; }
    double projection() const { return twice_m / 2.0; }
};

struct DegeneracyTable {
    int n_qubits = 0;
    std::map<int, std::uint64_t> d_s;  // keyed by 2S
    std::uint64_t n_ss = 0;
};

struct AMBasis {
    int n_qubits = 0;
    std::vector<AMBasisState> states;  // S asc, a asc, M asc
    // Row k is <state_k| in the product basis: coupled = transform * product.
    DenseOperator transform;
    DegeneracyTable degeneracy;

    /// Position of |a, S, M> in `states`; throws std::out_of_range if absent.
    Index index_of(int twice_s, int a, int twice_m) const;
    /// Product-basis columns |a, S, M> for M = -S..S.
    DenseOperator tower(int twice_s, int a) const;
};

/// Closed-form D_S = (2S+1) N! / ((N/2+S+1)! (N/2-S)!) and N_ss = (2N)! / (N! (N+1)!).
DegeneracyTable degeneracy(int n_qubits);

/// D_S obtained by enumerating intermediate-spin paths.
DegeneracyTable count_coupling_paths(int n_qubits);

/// 1 <= n_qubits <= 8.
AMBasis build_basis(int n_qubits);

DenseOperator smax_projector(const AMBasis& basis);

struct BlockSteadyState {
    int twice_s = 0;
    ComplexMatrix rho;     // rho^S_{M,M'}, M ascending
    RealVector ladder;     // A_M for M = -S..S

    double total_spin() const { return twice_s / 2.0; }
};

/// Ladder factors A_M = sqrt(S(S+1) - M(M+1)), M = -S..S.
RealVector ladder_factors(int twice_s);

/// Steady state of the collective S-block equations
/// d rho/dt = -i[Omega/2 (J+ + J-) + Delta J_z, rho] + Gamma (J- rho J+ - {J+ J-, rho}/2).
/// Throws BlockDegeneracyError if the null space is not one-dimensional.
BlockSteadyState block_steady_state(int twice_s, double omega, double delta, double gamma);

struct EtaIndex {
    int twice_s = 0;
    int a = 0;
    int b = 0;
    bool operator==(const EtaIndex&) const = default;
};

struct SubspaceProjection {
    int n_qubits = 0;
    std::vector<EtaIndex> eta;                 // S asc, a asc, b asc
    std::vector<DenseOperator> basis_ops;      // rho_eta
    std::vector<DenseOperator> left_ops;       // rho_eta^L
    ComplexMatrix coupling;                    // C, empty until coupling_matrix()
    std::optional<ComplexMatrix> overlap;      // O, dephasing only
    PerturbationSpec perturbation;

    Index size() const { return static_cast<Index>(eta.size()); }
    /// Operator sum_eta r_eta rho_eta for a coefficient vector r.
    DenseOperator expand(const ComplexVector& r) const;
};

/// Throws ConfigError when a block with D_S > 0 is missing from `blocks`.
SubspaceProjection build_subspace(const AMBasis& basis, const std::map<int, BlockSteadyState>& blocks);

/// Unperturbed drive Omega = 2 N Gamma, Delta = 0, for every S with D_S > 0.
std::map<int, BlockSteadyState> dicke_point_blocks(int n_qubits, double gamma = 1.0);

/// C_{eta eta'} = Tr(rho_eta^L P[rho_eta']) where P is the difference of the
/// perturbed and unperturbed right-hand sides (both realized from `base`).
SubspaceProjection coupling_matrix(SubspaceProjection proj, const PerturbationSpec& perturbation,
                                   const SystemConfig& base);

}  // namespace dicke

// liouville.hpp: Column-stacked Liouvillian matrix, its non-Hermitian
// eigendecomposition with biorthogonal left/right vectors, steady states and
// propagation oracles.

#pragma once

#include "dicke/master_equation.hpp"
#include "dicke/observables.hpp"
#include "dicke/types.hpp"

#include <optional>
#include <vector>

namespace dicke {

struct LiouvillianMatrix {
    Index hilbert_dim = 0;
    ComplexMatrix entries;  // hilbert_dim^2 x hilbert_dim^2

    Index dim() const { return entries.rows(); }
    double max_abs() const { return entries.cwiseAbs().maxCoeff(); }
};

/// vec(A rho B) = (B^T kron A) vec(rho): columns of rho stacked.
ComplexVector vectorize(const DenseOperator& rho);
DenseOperator unvectorize(const ComplexVector& v, Index hilbert_dim);

LiouvillianMatrix build_liouvillian(const MasterEquation& me);

struct SpectralDecomposition {
    Index hilbert_dim = 0;
    // Sorted by Re descending; near-equal Re (within 1e-10 ||L||_max) by Im ascending.
    ComplexVector eigenvalues;
    ComplexMatrix right_vectors;  // columns, unit 2-norm
    ComplexMatrix left_vectors;   // columns, left_i^dagger right_j = delta_ij
    double norm_max = 0.0;        // ||L||_max
    double tol_zero = 0.0;        // 1e-9 ||L||_max dim
    Index null_dim = 0;
    bool has_vectors = false;

    std::vector<Index> null_indices() const;
    /// max |left^dagger right - I|
    double biorthogonality_error() const;
};

struct SpectrumOptions {
    bool vectors = true;
};

/// Dense LAPACK zgeev with balancing. Throws SpectralError on non-convergence.
SpectralDecomposition spectrum(const LiouvillianMatrix& L, const SpectrumOptions& options = {});

struct SteadyStateSet {
    Index null_dim = 0;
    std::vector<DenseOperator> states;
    std::optional<DenseOperator> unique_steady;
    std::optional<Observables> unique_observables;
};

/// Throws InconsistencyError when null_dim == 1 and the null vector is traceless,
/// or when no null vector exists.
SteadyStateSet steady_states(const SpectralDecomposition& sd);
/// Same, and evaluates the emission observables of the unique steady state.
SteadyStateSet steady_states(const SpectralDecomposition& sd, const MasterEquation& me);

/// exp(L t) vec(rho0) via the matrix exponential.
ComplexVector propagate(const LiouvillianMatrix& L, const ComplexVector& rho0, double t);

/// sum_n c_n e^{mu_n t} rho_n with c_n = left_n^dagger vec(rho0).
ComplexVector reconstruct(const SpectralDecomposition& sd, const ComplexVector& rho0, double t);

/// Oblique projection of v onto the null right vectors along the left null vectors.
ComplexVector project_null(const SpectralDecomposition& sd, const ComplexVector& v);

/// Indices of the `count` eigenvalues of smallest modulus, returned in the
/// decomposition's sort order.
std::vector<Index> smallest_modulus(const ComplexVector& sorted_eigenvalues, Index count);

/// Sort order used by SpectralDecomposition.
std::vector<Index> spectral_order(const ComplexVector& eigenvalues, double tie_tolerance);

/// Groups consecutive values whose relative gap stays below rel_tol.
std::vector<std::vector<Index>> cluster_consecutive(const std::vector<double>& sorted_values, double rel_tol);

}  // namespace dicke

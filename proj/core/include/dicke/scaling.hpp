// scaling.hpp: Continuity tracking of the near-null Liouvillian cluster across
// perturbation strengths and log-log fits of |Re mu| against strength.

#pragma once

#include "dicke/system_model.hpp"
#include "dicke/types.hpp"

#include <vector>

namespace dicke {

struct ScalingTrack {
    Index rank = 0;              // position in the sorted cluster at the smallest strength
    std::vector<Complex> values; // one per requested strength
    double slope = 0.0;          // d log|Re mu| / d log(strength)
};

struct ScalingFit {
    PerturbationKind kind = PerturbationKind::None;
    int n_qubits = 0;
    std::vector<double> strengths;  // ascending
    std::vector<ScalingTrack> tracks;
};

struct ScalingOptions {
    int n_qubits = 4;
    // Extra geometric strengths inserted between consecutive requested ones so
    // continuity matching never has to jump far.
    int substeps = 2;
};

/// The N_ss eigenvalues of smallest modulus of the perturbed Liouvillian of the
/// unit lattice, in spectral sort order.
ComplexVector near_null_cluster(const PerturbationSpec& perturbation, int n_qubits);

/// Matches each cluster to its predecessor by nearest neighbour in the complex
/// plane, greedily by global minimum distance. Each cluster is first divided,
/// axis by axis, by its own largest magnitude so that uniform power-law growth
/// does not move points onto their neighbours. Result row k is cluster k reordered so that column j
/// continues column j of cluster 0. Throws TrackingError when two distinct
/// candidates are equidistant within 1e-12.
std::vector<std::vector<Complex>> track_eigenvalues(const std::vector<ComplexVector>& clusters);

/// Least-squares slope of log y against log x; y is taken in absolute value.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Requires >= 3 positive strengths spanning at least one decade. `which` holds
/// ranks in the cluster at the smallest strength (rank 0 is the null
/// eigenvalue); empty means every nonzero member.
ScalingFit scaling_fit(PerturbationKind kind, std::vector<double> strengths, const std::vector<Index>& which,
                       const ScalingOptions& options = {});

}  // namespace dicke

#include "dicke/liouville.hpp"

#include "dicke/errors.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dicke {

ComplexVector vectorize(const DenseOperator& rho) {
    return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

DenseOperator unvectorize(const ComplexVector& v, Index hilbert_dim) {
    if (v.size() != hilbert_dim * hilbert_dim) {
        throw DimensionError("unvectorize: length " + std::to_string(v.size()) +
                             " is not " + std::to_string(hilbert_dim) + "^2");
    }
    return Eigen::Map<const DenseOperator>(v.data(), hilbert_dim, hilbert_dim);
}

namespace {

// out += scale * (A kron B)
void add_kron(ComplexMatrix& out, const ComplexMatrix& a, const ComplexMatrix& b, Complex scale) {
    const Index br = b.rows();
    const Index bc = b.cols();
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            const Complex f = scale * a(i, j);
            if (f == Complex{}) continue;
            out.block(i * br, j * bc, br, bc) += f * b;
        }
    }
}

}  // namespace

LiouvillianMatrix build_liouvillian(const MasterEquation& me) {
    const Index d = me.dim();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    // d rho = -i (K rho - rho K^dagger) + sum_k g_k L_k rho L_k^dagger + D o rho
    const ComplexMatrix k = me.hamiltonian() - 0.5 * kI * me.decay_generator();

    LiouvillianMatrix L;
    L.hilbert_dim = d;
    L.entries = ComplexMatrix::Zero(d * d, d * d);
    add_kron(L.entries, id, k, -kI);
    add_kron(L.entries, k.conjugate(), id, kI);
    for (const auto& jump : me.jumps()) {
        add_kron(L.entries, jump.op.conjugate(), jump.op, jump.rate);
    }
    if (me.dephasing_rate() > 0.0) {
        for (Index j = 0; j < d; ++j) {
            for (Index i = 0; i < d; ++i) {
                L.entries(j * d + i, j * d + i) +=
                    -0.5 * me.dephasing_rate() * excitation_count(i ^ j);
            }
        }
    }
    return L;
}

std::vector<Index> spectral_order(const ComplexVector& eigenvalues, double tie_tolerance) {
    std::vector<Index> order(static_cast<std::size_t>(eigenvalues.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return eigenvalues(a).real() > eigenvalues(b).real();
    });
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() &&
               eigenvalues(order[end - 1]).real() - eigenvalues(order[end]).real() <= tie_tolerance) {
            ++end;
        }
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](Index a, Index b) { return eigenvalues(a).imag() < eigenvalues(b).imag(); });
        start = end;
    }
    return order;
}

SpectralDecomposition spectrum(const LiouvillianMatrix& L, const SpectrumOptions& options) {
    const Index n = L.dim();
    if (n == 0 || L.entries.cols() != n) throw DimensionError("spectrum: Liouvillian must be square and non-empty");

    ComplexMatrix a = L.entries;
    ComplexVector w(n);
    ComplexMatrix vl;
    ComplexMatrix vr;
    const char job = options.vectors ? 'V' : 'N';
    if (options.vectors) {
        vl.resize(n, n);
        vr.resize(n, n);
    } else {
        vl.resize(1, 1);
        vr.resize(1, 1);
    }
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, job, job, static_cast<lapack_int>(n), a.data(),
                                          static_cast<lapack_int>(n), w.data(), vl.data(),
                                          static_cast<lapack_int>(vl.rows()), vr.data(),
                                          static_cast<lapack_int>(vr.rows()));
    if (info != 0) {
        throw SpectralError("zgeev failed with info=" + std::to_string(info));
    }

    SpectralDecomposition sd;
    sd.hilbert_dim = L.hilbert_dim;
    sd.norm_max = L.max_abs();
    sd.tol_zero = 1e-9 * sd.norm_max * static_cast<double>(n);
    sd.has_vectors = options.vectors;

    const std::vector<Index> order = spectral_order(w, 1e-10 * sd.norm_max);
    sd.eigenvalues.resize(n);
    for (Index i = 0; i < n; ++i) sd.eigenvalues(i) = w(order[i]);
    for (Index i = 0; i < n; ++i) {
        if (std::abs(sd.eigenvalues(i)) < sd.tol_zero) ++sd.null_dim;
    }
    if (!options.vectors) return sd;

    sd.right_vectors.resize(n, n);
    sd.left_vectors.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        sd.right_vectors.col(i) = vr.col(order[i]);
        sd.left_vectors.col(i) = vl.col(order[i]);
    }

    // Biorthogonalize within clusters of (numerically) equal eigenvalues.
    const double cluster_tol = 1e-7 * sd.norm_max;
    std::vector<Index> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (std::abs(sd.eigenvalues(i) - sd.eigenvalues(j)) < cluster_tol) {
                parent[find(j)] = find(i);
            }
        }
    }
    std::vector<std::vector<Index>> groups(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) groups[find(i)].push_back(i);
    for (const auto& g : groups) {
        if (g.empty()) continue;
        const auto k = static_cast<Index>(g.size());
        ComplexMatrix wg(n, k);
        ComplexMatrix rg(n, k);
        for (Index c = 0; c < k; ++c) {
            wg.col(c) = sd.left_vectors.col(g[c]);
            rg.col(c) = sd.right_vectors.col(g[c]);
        }
        const ComplexMatrix m = wg.adjoint() * rg;
        Eigen::FullPivLU<ComplexMatrix> lu(m);
        if (!lu.isInvertible()) {
            throw SpectralError("left/right eigenvectors of a degenerate cluster are not biorthogonalizable");
        }
        const ComplexMatrix fixed = wg * lu.inverse().adjoint();
        for (Index c = 0; c < k; ++c) sd.left_vectors.col(g[c]) = fixed.col(c);
    }
    return sd;
}

std::vector<Index> SpectralDecomposition::null_indices() const {
    std::vector<Index> idx;
    for (Index i = 0; i < eigenvalues.size(); ++i) {
        if (std::abs(eigenvalues(i)) < tol_zero) idx.push_back(i);
    }
    return idx;
}

double SpectralDecomposition::biorthogonality_error() const {
    if (!has_vectors) throw SpectralError("decomposition was computed without eigenvectors");
    const ComplexMatrix b = left_vectors.adjoint() * right_vectors;
    return (b - ComplexMatrix::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff();
}

SteadyStateSet steady_states(const SpectralDecomposition& sd) {
    if (!sd.has_vectors) throw SpectralError("steady states need eigenvectors");
    SteadyStateSet set;
    const std::vector<Index> null = sd.null_indices();
    set.null_dim = static_cast<Index>(null.size());
    if (null.empty()) {
        throw InconsistencyError("Liouvillian has no zero eigenvalue");
    }
    for (Index i : null) {
        set.states.push_back(unvectorize(sd.right_vectors.col(i), sd.hilbert_dim));
    }
    if (set.null_dim == 1) {
        DenseOperator rho = set.states.front();
        const Complex tr = rho.trace();
        if (std::abs(tr) < 1e-10) {
            throw InconsistencyError("the only null eigenvector is traceless");
        }
        rho /= tr;
        rho = 0.5 * (rho + rho.adjoint()).eval();
        set.unique_steady = rho;
    }
    return set;
}

SteadyStateSet steady_states(const SpectralDecomposition& sd, const MasterEquation& me) {
    SteadyStateSet set = steady_states(sd);
    if (set.unique_steady) set.unique_observables = observables(me.config(), *set.unique_steady);
    return set;
}

ComplexVector propagate(const LiouvillianMatrix& L, const ComplexVector& rho0, double t) {
    if (rho0.size() != L.dim()) throw DimensionError("propagate: vector length mismatch");
    const ComplexMatrix generator = L.entries * t;
    const ComplexMatrix e = generator.exp();
    return e * rho0;
}

ComplexVector reconstruct(const SpectralDecomposition& sd, const ComplexVector& rho0, double t) {
    if (!sd.has_vectors) throw SpectralError("reconstruction needs eigenvectors");
    if (rho0.size() != sd.eigenvalues.size()) throw DimensionError("reconstruct: vector length mismatch");
    ComplexVector c = sd.left_vectors.adjoint() * rho0;
    for (Index i = 0; i < c.size(); ++i) c(i) *= std::exp(sd.eigenvalues(i) * t);
    return sd.right_vectors * c;
}

ComplexVector project_null(const SpectralDecomposition& sd, const ComplexVector& v) {
    if (!sd.has_vectors) throw SpectralError("projection needs eigenvectors");
    ComplexVector out = ComplexVector::Zero(v.size());
    for (Index i : sd.null_indices()) {
        out += sd.right_vectors.col(i) * sd.left_vectors.col(i).dot(v);
    }
    return out;
}

std::vector<Index> smallest_modulus(const ComplexVector& sorted_eigenvalues, Index count) {
    std::vector<Index> idx(static_cast<std::size_t>(sorted_eigenvalues.size()));
    std::iota(idx.begin(), idx.end(), Index{0});
    count = std::min(count, sorted_eigenvalues.size());
    std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
        return std::abs(sorted_eigenvalues(a)) < std::abs(sorted_eigenvalues(b));
    });
    idx.resize(static_cast<std::size_t>(count));
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<std::vector<Index>> cluster_consecutive(const std::vector<double>& sorted_values, double rel_tol) {
    std::vector<std::vector<Index>> groups;
    for (std::size_t i = 0; i < sorted_values.size(); ++i) {
        const double v = sorted_values[i];
        if (!groups.empty()) {
            const double prev = sorted_values[i - 1];
            const double scale = std::max(std::abs(v), std::abs(prev));
            if (std::abs(v - prev) <= rel_tol * scale) {
                groups.back().push_back(static_cast<Index>(i));
                continue;
            }
        }
        groups.push_back({static_cast<Index>(i)});
    }
    return groups;
}

}  // namespace dicke

// Shared helpers for unit and acceptance tests.

#pragma once

#include "dicke/types.hpp"

#include <Eigen/Eigenvalues>

#include <random>

namespace dicke::testing {

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_error(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

inline double min_eigenvalue(const ComplexMatrix& rho) {
    const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

inline ComplexMatrix random_matrix(Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (Index j = 0; j < dim; ++j)
        for (Index i = 0; i < dim; ++i) m(i, j) = Complex(n(rng), n(rng));
    return m;
}

/// Random Hermitian, positive, unit-trace matrix.
inline ComplexMatrix random_density(Index dim, std::mt19937_64& rng) {
    const ComplexMatrix a = random_matrix(dim, rng);
    ComplexMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

/// Random Hermitian unit-trace matrix (not necessarily positive).
inline ComplexMatrix random_hermitian(Index dim, std::mt19937_64& rng) {
    const ComplexMatrix a = random_matrix(dim, rng);
    ComplexMatrix h = 0.5 * (a + a.adjoint());
    const Complex tr = h.trace();
    if (std::abs(tr) > 1e-3) h /= tr.real();
    return h;
}

inline Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace dicke::testing

#include "dicke/angular_momentum.hpp"
#include "dicke/errors.hpp"
#include "dicke/liouville.hpp"
#include "dicke/master_equation.hpp"

#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>

using namespace dicke;
using dicke::testing::max_abs;
using dicke::testing::trace_product;

namespace {

SubspaceProjection projection(int n) { return build_subspace(build_basis(n), dicke_point_blocks(n)); }

ComplexVector coupling_eigenvalues(const SubspaceProjection& p) {
    return Eigen::ComplexEigenSolver<ComplexMatrix>(p.coupling, false).eigenvalues();
}

int zero_count(const ComplexVector& v, double tol) {
    int k = 0;
    for (Index i = 0; i < v.size(); ++i) k += std::abs(v(i)) < tol ? 1 : 0;
    return k;
}

}  // namespace

TEST(Subspace, SizesFollowDegeneracies) {
    EXPECT_EQ(projection(2).size(), 2);
    EXPECT_EQ(projection(3).size(), 5);
    EXPECT_EQ(projection(4).size(), 14);
}

TEST(Subspace, DualBasisIsBiorthonormal) {
    for (int n = 1; n <= 5; ++n) {
        const SubspaceProjection p = projection(n);
        for (Index i = 0; i < p.size(); ++i) {
            for (Index j = 0; j < p.size(); ++j) {
                const Complex v = trace_product(p.left_ops[i], p.basis_ops[j]);
                EXPECT_NEAR(std::abs(v - Complex(i == j ? 1.0 : 0.0)), 0.0, 1e-10) << "N=" << n;
            }
            const Complex tr = p.basis_ops[i].trace();
            EXPECT_NEAR(std::abs(tr - Complex(p.eta[i].a == p.eta[i].b ? 1.0 : 0.0)), 0.0, 1e-12);
        }
    }
}

TEST(Subspace, BasisOperatorsAreUnperturbedSteadyStates) {
    const int n = 4;
    const SubspaceProjection p = projection(n);
    const MasterEquation me(realize({}, SystemConfig::lattice(n)));
    for (const DenseOperator& op : p.basis_ops) EXPECT_LT(max_abs(me.apply(op)), 1e-9);
}

TEST(Subspace, MissingBlockIsConfigError) {
    auto blocks = dicke_point_blocks(4);
    blocks.erase(2);
    EXPECT_THROW(build_subspace(build_basis(4), blocks), ConfigError);
}

TEST(CouplingMatrix, VanishesAtZeroStrength) {
    const SubspaceProjection base = projection(3);
    for (auto kind : {PerturbationKind::Dephasing, PerturbationKind::DrivingPhase, PerturbationKind::Separation,
                      PerturbationKind::LinearDetuning}) {
        const SubspaceProjection p = coupling_matrix(base, {kind, 0.0}, SystemConfig::lattice(3));
        EXPECT_EQ(p.coupling.cwiseAbs().maxCoeff(), 0.0);
        EXPECT_FALSE(p.overlap.has_value());
    }
}

TEST(CouplingMatrix, DephasingIsLinearInRate) {
    const SubspaceProjection base = projection(4);
    const auto a = coupling_matrix(base, {PerturbationKind::Dephasing, 1e-3}, SystemConfig::lattice(4));
    const auto b = coupling_matrix(base, {PerturbationKind::Dephasing, 2e-3}, SystemConfig::lattice(4));
    EXPECT_LT(max_abs(b.coupling - 2.0 * a.coupling), 1e-12 * max_abs(b.coupling));
}

TEST(CouplingMatrix, DephasingOverlapMatchesSigmaZSum) {
    const int n = 4;
    const auto p = coupling_matrix(projection(n), {PerturbationKind::Dephasing, 0.01}, SystemConfig::lattice(n));
    ASSERT_TRUE(p.overlap.has_value());
    for (Index i = 0; i < p.size(); ++i) {
        for (Index j = 0; j < p.size(); ++j) {
            Complex o = 0.0;
            for (int q = 0; q < n; ++q) {
                const DenseOperator z = site_operator(n, q, SpinOp::Z);
                o += trace_product(p.left_ops[i], z * p.basis_ops[j] * z);
            }
            EXPECT_NEAR(std::abs((*p.overlap)(i, j) - o), 0.0, 1e-10);
        }
    }
}

TEST(CouplingMatrix, DephasingSpectrum) {
    const auto p = coupling_matrix(projection(4), {PerturbationKind::Dephasing, 1.0 / 200}, SystemConfig::lattice(4));
    const ComplexVector mu = coupling_eigenvalues(p);
    EXPECT_EQ(zero_count(mu, 1e-10), 1);
    std::vector<double> decay;
    for (Index i = 0; i < mu.size(); ++i) {
        EXPECT_LT(std::abs(mu(i).imag()), 1e-10);
        EXPECT_LE(mu(i).real(), 1e-10);
        decay.push_back(-mu(i).real());
    }
    std::sort(decay.begin(), decay.end());
    const auto groups = cluster_consecutive(decay, 0.05);
    ASSERT_EQ(groups.size(), 4u);
    EXPECT_EQ(groups[1].size(), 6u);
    EXPECT_EQ(groups[2].size(), 4u);
    EXPECT_EQ(groups[3].size(), 3u);

    // The zero mode expands to a unit-trace state.
    Eigen::ComplexEigenSolver<ComplexMatrix> es(p.coupling);
    Index k0 = 0;
    es.eigenvalues().cwiseAbs().minCoeff(&k0);
    DenseOperator rho = p.expand(es.eigenvectors().col(k0));
    rho /= rho.trace();
    EXPECT_LT(dicke::testing::hermiticity_error(rho), 1e-10);
    EXPECT_GT(dicke::testing::min_eigenvalue(rho), -1e-10);
}

TEST(CouplingMatrix, DrivingPhaseMatchesCommutatorWithHamiltonianChange) {
    const int n = 4;
    const SystemConfig base = SystemConfig::lattice(n);
    const PerturbationSpec spec{PerturbationKind::DrivingPhase, 1.0 / 400};
    const auto p = coupling_matrix(projection(n), spec, base);
    const DenseOperator dh = MasterEquation(realize(spec, base)).hamiltonian() -
                             MasterEquation(realize({}, base)).hamiltonian();
    for (Index i = 0; i < p.size(); ++i) {
        for (Index j = 0; j < p.size(); ++j) {
            const DenseOperator& r = p.basis_ops[j];
            const Complex expected = -kI * trace_product(p.left_ops[i], dh * r - r * dh);
            EXPECT_NEAR(std::abs(p.coupling(i, j) - expected), 0.0, 1e-10);
        }
    }
    const ComplexVector mu = coupling_eigenvalues(p);
    EXPECT_LE(mu.real().maxCoeff(), 1e-10);
    EXPECT_GE(mu.real().minCoeff(), -1e-10);
    // A Hamiltonian perturbation acts as a commutator on the a index of each S
    // block, so the zero modes are the pairs (a, b) with equal dH levels: the D_S
    // diagonal ones (2 + 3 + 1) plus one degenerate pair in the S = 1 block.
    // The full cluster has the same 8 real members.
    EXPECT_EQ(zero_count(mu, 1e-10), 8);
}

TEST(CouplingMatrix, SeparationAndDetuningAreNonzeroAndStable) {
    for (auto kind : {PerturbationKind::Separation, PerturbationKind::LinearDetuning}) {
        const auto p = coupling_matrix(projection(4), {kind, 0.01}, SystemConfig::lattice(4));
        EXPECT_GT(p.coupling.cwiseAbs().maxCoeff(), 1e-6);
        EXPECT_LE(coupling_eigenvalues(p).real().maxCoeff(), 1e-10);
    }
}

TEST(CouplingMatrix, QubitCountMismatchThrows) {
    EXPECT_THROW(coupling_matrix(projection(3), {PerturbationKind::Dephasing, 0.01}, SystemConfig::lattice(4)),
                 ConfigError);
}

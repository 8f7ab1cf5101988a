#include "dicke/errors.hpp"
#include "dicke/evolve.hpp"

#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace dicke;

TEST(Evolve, SingleQubitExponentialDecay) {
    const MasterEquation me(SystemConfig::lattice(1));
    DenseOperator rho0 = DenseOperator::Zero(2, 2);
    rho0(1, 1) = 1.0;
    const Trajectory t = evolve(me, rho0, 2.0, {0.0, 0.5, 1.0, 2.0});
    ASSERT_EQ(t.times.size(), 4u);
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        EXPECT_NEAR(t.gamma0[i], std::exp(-t.times[i]), 1e-6) << "tau=" << t.times[i];
    }
    EXPECT_NEAR(t.final_rho(1, 1).real(), std::exp(-2.0), 1e-6);
}

TEST(Evolve, TrajectoryInvariants) {
    const MasterEquation me(realize({PerturbationKind::Dephasing, 0.05}, SystemConfig::lattice(3)));
    double worst_trace = 0, worst_herm = 0, worst_min = 0;
    EvolveOptions opt;
    opt.observer = [&](double, const DenseOperator& rho) {
        worst_trace = std::max(worst_trace, std::abs(rho.trace() - 1.0));
        worst_herm = std::max(worst_herm, dicke::testing::hermiticity_error(rho));
        worst_min = std::min(worst_min, dicke::testing::min_eigenvalue(rho));
    };
    const Trajectory t = evolve(me, ground_state(3), 20.0, linear_grid(0, 20, 101), opt);
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        EXPECT_NEAR(t.gamma_tot[i], t.gamma0[i] + t.gamma_sr[i], 1e-10);
        EXPECT_GE(t.gamma0[i], 0.0);
        EXPECT_LE(t.gamma0[i], 1.0);
        EXPECT_GE(t.pop_smax[i], -1e-10);
        EXPECT_LE(t.pop_smax[i], 1.0 + 1e-10);
    }
    EXPECT_LT(worst_trace, 1e-10);
    EXPECT_LT(worst_herm, 1e-12);
    EXPECT_GT(worst_min, -1e-8);
}

TEST(Evolve, DickePointOscillatesThenSettles) {
    const MasterEquation me(realize({}, SystemConfig::lattice(4)));
    const Trajectory t = evolve(me, ground_state(4), 30.0, linear_grid(0, 30, 301));
    const double final_value = t.gamma_sr.back();
    double early_min = 1e9, early_max = -1e9, late_dev = 0;
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        if (t.times[i] <= 5.0) {
            early_min = std::min(early_min, t.gamma_sr[i]);
            early_max = std::max(early_max, t.gamma_sr[i]);
        }
        if (t.times[i] >= 10.0) late_dev = std::max(late_dev, std::abs(t.gamma_sr[i] - final_value));
    }
    EXPECT_GT(early_max - early_min, 0.1);
    EXPECT_LT(late_dev, 1e-3);
    EXPECT_GT(final_value, 0.4);
}

TEST(Evolve, EarlyTimesInsensitiveToWeakDephasing) {
    const std::vector<double> grid = linear_grid(0, 5, 51);
    std::vector<Trajectory> runs;
    for (double g : {0.0, 1e-3, 1e-2}) {
        runs.push_back(evolve(MasterEquation(realize({PerturbationKind::Dephasing, g}, SystemConfig::lattice(4))),
                              ground_state(4), 5.0, grid));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_LT(std::abs(runs[0].gamma_sr[i] - runs[1].gamma_sr[i]), 0.05);
        EXPECT_LT(std::abs(runs[0].gamma_sr[i] - runs[2].gamma_sr[i]), 0.05);
    }
}

TEST(Evolve, SteadyStateStopFillsRemainingSamples) {
    const MasterEquation me(realize({}, SystemConfig::lattice(2)));
    EvolveOptions opt;
    opt.stop_when_steady = true;
    const Trajectory t = evolve(me, ground_state(2), 1000.0, linear_grid(0, 1000, 11), opt);
    ASSERT_TRUE(t.steady_at.has_value());
    EXPECT_LT(*t.steady_at, 1000.0);
    ASSERT_EQ(t.times.size(), 11u);
    EXPECT_EQ(t.gamma_sr[9], t.gamma_sr[10]);
    EXPECT_LT(me.apply(t.final_rho).norm(), 1e-9 * t.final_rho.norm());
}

// The symmetric-tower gap is about 0.52 Gamma, so a residual of 1e-9 is reached
// near tau = 40 unless integrator noise holds it up.
TEST(Evolve, SteadyStateStopFiresAtDickePointDrive) {
    const MasterEquation me(realize({}, SystemConfig::lattice(4)));
    EvolveOptions opt;
    opt.stop_when_steady = true;
    const Trajectory t = evolve(me, ground_state(4), 100.0, {100.0}, opt);
    ASSERT_TRUE(t.steady_at.has_value());
    EXPECT_LT(*t.steady_at, 60.0);
    EXPECT_LT(me.apply(t.final_rho).norm(), 1e-9 * t.final_rho.norm());
}

TEST(Evolve, DeterministicBitForBit) {
    const MasterEquation me(realize({PerturbationKind::DrivingPhase, 0.01}, SystemConfig::lattice(3)));
    const auto grid = linear_grid(0, 10, 21);
    const Trajectory a = evolve(me, ground_state(3), 10.0, grid);
    const Trajectory b = evolve(me, ground_state(3), 10.0, grid);
    EXPECT_EQ(a.gamma_sr, b.gamma_sr);
    EXPECT_EQ(a.pop_smax, b.pop_smax);
}

TEST(Evolve, RejectsBadSamplesAndShapes) {
    const MasterEquation me(SystemConfig::lattice(2));
    EXPECT_THROW(evolve(me, ground_state(2), 1.0, {0.5, 0.2}), ConfigError);
    EXPECT_THROW(evolve(me, ground_state(2), 1.0, {2.0}), ConfigError);
    EXPECT_THROW(evolve(me, ground_state(3), 1.0, {0.5}), DimensionError);
}

TEST(Evolve, StepUnderflowReportsLastTau) {
    const MasterEquation me(realize({}, SystemConfig::lattice(2)));
    EvolveOptions opt;
    opt.rtol = 0.0;
    opt.atol = 1e-300;
    try {
        evolve(me, ground_state(2), 1.0, {1.0}, opt);
        FAIL() << "expected IntegrationError";
    } catch (const IntegrationError& e) {
        EXPECT_GE(e.last_tau(), 0.0);
        EXPECT_LT(e.last_tau(), 1.0);
    }
}

TEST(Grids, LinearAndLog) {
    const auto lin = linear_grid(0, 1, 5);
    EXPECT_EQ(lin.front(), 0.0);
    EXPECT_EQ(lin.back(), 1.0);
    EXPECT_NEAR(lin[2], 0.5, 1e-15);
    const auto lg = log_grid(1, 1000, 4);
    EXPECT_NEAR(lg[1], 10.0, 1e-12);
    EXPECT_EQ(lg.back(), 1000.0);
    EXPECT_THROW(log_grid(0, 1, 3), ConfigError);
}

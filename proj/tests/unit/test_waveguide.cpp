#include "dicke/waveguide.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

using namespace dicke;

namespace {

SystemConfig pair_at(double separation) {
    SystemConfig c = SystemConfig::lattice(2);
    c.positions = {0.0, separation};
    return c;
}

// Independent evaluation of -i (Gamma/2) e^{ik|dz|} split into (real, -2 imag).
std::pair<double, double> green_element(double dz, double gamma = 1.0) {
    const std::complex<double> g = std::complex<double>(0.0, -0.5 * gamma) *
                                   std::exp(std::complex<double>(0.0, kTwoPi * std::abs(dz)));
    return {g.real(), -2.0 * g.imag()};
}

}  // namespace

TEST(GreenFunctionTables, UnitLatticeHasNoExchangeAndFullDecay) {
    const CouplingTables t = green_function_tables(SystemConfig::lattice(5));
    for (int n = 0; n < 5; ++n) {
        for (int m = 0; m < 5; ++m) {
            EXPECT_NEAR(t.exchange(n, m), 0.0, 1e-14);
            EXPECT_NEAR(t.decay(n, m), 1.0, 1e-14);
        }
    }
}

TEST(GreenFunctionTables, QuarterWavelength) {
    const CouplingTables t = green_function_tables(pair_at(0.25));
    EXPECT_NEAR(t.exchange(0, 1), 0.5, 1e-15);
    EXPECT_NEAR(t.decay(0, 1), 0.0, 1e-15);
}

TEST(GreenFunctionTables, HalfWavelength) {
    const CouplingTables t = green_function_tables(pair_at(0.5));
    EXPECT_NEAR(t.exchange(0, 1), 0.0, 1e-15);
    EXPECT_NEAR(t.decay(0, 1), -1.0, 1e-15);
}

TEST(GreenFunctionTables, MatchesComplexGreenElement) {
    for (double dz : {0.1, 0.37, 1.01, 2.6, 3.03}) {
        const auto [omega, gamma] = green_element(dz, 1.7);
        SystemConfig c = pair_at(dz);
        c.gamma = 1.7;
        const CouplingTables t = green_function_tables(c);
        EXPECT_NEAR(t.exchange(0, 1), omega, 1e-14);
        EXPECT_NEAR(t.decay(0, 1), gamma, 1e-14);
        EXPECT_NEAR(t.exchange(0, 1) * t.exchange(0, 1) + 0.25 * t.decay(0, 1) * t.decay(0, 1),
                    0.25 * 1.7 * 1.7, 1e-13);
    }
}

TEST(GreenFunctionTables, SymmetricWithUnitDiagonalAndTranslationInvariant) {
    SystemConfig c = SystemConfig::lattice(4);
    c.positions = {0.0, 0.3, 1.7, 2.2};
    const CouplingTables a = green_function_tables(c);
    for (double& z : c.positions) z += 12.345;
    const CouplingTables b = green_function_tables(c);
    EXPECT_LT((a.exchange - a.exchange.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((a.decay - a.decay.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((a.exchange - b.exchange).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_LT((a.decay - b.decay).cwiseAbs().maxCoeff(), 1e-11);
    for (int n = 0; n < 4; ++n) {
        EXPECT_EQ(a.decay(n, n), 1.0);
        EXPECT_EQ(a.exchange(n, n), 0.0);
    }
}

TEST(CouplingDeltas, ZeroSeparationChangeGivesZero) {
    const CouplingDeltas d = coupling_deltas(0.0, SystemConfig::lattice(4));
    EXPECT_EQ(d.d_exchange.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(d.d_decay.cwiseAbs().maxCoeff(), 0.0);
}

TEST(CouplingDeltas, NeighbourValuesAtQuarterPercent) {
    const CouplingDeltas d = coupling_deltas(1.0 / 400, SystemConfig::lattice(4));
    EXPECT_NEAR(d.d_exchange(0, 1), 0.5 * std::sin(kTwoPi / 400), 1e-15);
    EXPECT_NEAR(d.d_exchange(0, 1), 7.854e-3, 1e-6);
    EXPECT_NEAR(d.d_decay(0, 1), std::cos(kTwoPi / 400) - 1.0, 1e-14);
    EXPECT_NEAR(d.d_decay(0, 1), -1.2337e-4, 1e-8);
}

TEST(CouplingDeltas, TaylorScalingSlopes) {
    std::vector<double> lx, lo, lg;
    for (double dd : {1.0 / 1600, 1.0 / 800, 1.0 / 400}) {
        const CouplingDeltas d = coupling_deltas(dd, SystemConfig::lattice(3));
        lx.push_back(std::log(dd));
        lo.push_back(std::log(std::abs(d.d_exchange(0, 1))));
        lg.push_back(std::log(std::abs(d.d_decay(0, 1))));
    }
    auto slope = [&](const std::vector<double>& y) {
        const double mx = (lx[0] + lx[1] + lx[2]) / 3;
        const double my = (y[0] + y[1] + y[2]) / 3;
        double num = 0, den = 0;
        for (int i = 0; i < 3; ++i) {
            num += (lx[i] - mx) * (y[i] - my);
            den += (lx[i] - mx) * (lx[i] - mx);
        }
        return num / den;
    };
    EXPECT_NEAR(slope(lo), 1.0, 0.01);
    EXPECT_NEAR(slope(lg), 2.0, 0.02);
}

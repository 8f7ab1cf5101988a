#include "dicke/errors.hpp"
#include "dicke/scaling.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dicke;

namespace {

ComplexVector vec(std::initializer_list<Complex> v) {
    ComplexVector out(static_cast<Index>(v.size()));
    Index i = 0;
    for (Complex c : v) out(i++) = c;
    return out;
}

}  // namespace

TEST(LogLogSlope, ExactPowerLaws) {
    std::vector<double> x{0.01, 0.03, 0.1, 0.5}, y1, y4;
    for (double v : x) {
        y1.push_back(-3.0 * v);
        y4.push_back(7.0 * std::pow(v, 4));
    }
    EXPECT_NEAR(loglog_slope(x, y1), 1.0, 1e-12);
    EXPECT_NEAR(loglog_slope(x, y4), 4.0, 1e-12);
    EXPECT_THROW(loglog_slope({1.0}, {1.0}), ConfigError);
}

TEST(TrackEigenvalues, FollowsReorderedClusters) {
    std::vector<ComplexVector> clusters{
        vec({0.0, Complex(-1.0, 0.0), Complex(-2.0, 0.5)}),
        vec({Complex(-2.1, 0.52), 0.0, Complex(-1.05, 0.0)}),
        vec({Complex(-1.1, 0.0), Complex(-2.2, 0.55), 0.0}),
    };
    const auto t = track_eigenvalues(clusters);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[1][1], Complex(-1.05, 0.0));
    EXPECT_EQ(t[2][2], Complex(-2.2, 0.55));
    EXPECT_EQ(t[2][0], Complex(0.0));
}

TEST(TrackEigenvalues, CoincidentCandidatesAreNotAmbiguous) {
    const auto t = track_eigenvalues({vec({-1.0, -1.0}), vec({-1.1, -1.1})});
    EXPECT_EQ(t[1][0], Complex(-1.1));
    EXPECT_EQ(t[1][1], Complex(-1.1));
}

TEST(TrackEigenvalues, EquidistantDistinctCandidatesThrow) {
    // After per-axis normalization every pairing is at distance sqrt(2).
    EXPECT_THROW(track_eigenvalues({vec({Complex(0.0, 1.0), Complex(0.0, -1.0)}),
                                    vec({Complex(-1.0, 0.0), Complex(1.0, 0.0)})}),
                 TrackingError);
    EXPECT_THROW(track_eigenvalues({vec({-1.0}), vec({-1.0, -2.0})}), TrackingError);
}

TEST(ScalingFit, ArgumentValidation) {
    EXPECT_THROW(scaling_fit(PerturbationKind::Dephasing, {0.01, 0.1}, {}), ConfigError);
    EXPECT_THROW(scaling_fit(PerturbationKind::Dephasing, {0.01, 0.02, 0.05}, {}), ConfigError);
    EXPECT_THROW(scaling_fit(PerturbationKind::Dephasing, {0.0, 0.01, 0.1}, {}), ConfigError);
    EXPECT_THROW(scaling_fit(PerturbationKind::Dephasing, {0.01, 0.01, 0.1}, {}), ConfigError);
}

TEST(ScalingFit, ThreeQubitDephasingIsLinear) {
    ScalingOptions opt;
    opt.n_qubits = 3;
    const ScalingFit fit = scaling_fit(PerturbationKind::Dephasing, {1e-3, 3e-3, 1e-2}, {}, opt);
    ASSERT_EQ(fit.tracks.size(), 4u);
    for (const auto& track : fit.tracks) {
        EXPECT_NEAR(track.slope, 1.0, 0.02) << "rank " << track.rank;
        EXPECT_EQ(track.values.size(), 3u);
    }
}

TEST(ScalingFit, ThreeQubitDrivingPhaseIsQuadratic) {
    ScalingOptions opt;
    opt.n_qubits = 3;
    const ScalingFit fit = scaling_fit(PerturbationKind::DrivingPhase, {1.0 / 1600, 1.0 / 400, 1.0 / 100}, {}, opt);
    for (const auto& track : fit.tracks) EXPECT_NEAR(track.slope, 2.0, 0.1) << "rank " << track.rank;
}

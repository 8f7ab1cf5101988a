#include "dicke/scaling.hpp"

#include "dicke/angular_momentum.hpp"
#include "dicke/errors.hpp"
#include "dicke/liouville.hpp"
#include "dicke/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace dicke {

ComplexVector near_null_cluster(const PerturbationSpec& perturbation, int n_qubits) {
    const MasterEquation me(realize(perturbation, SystemConfig::lattice(n_qubits)));
    const SpectralDecomposition sd = spectrum(build_liouvillian(me), {.vectors = false});
    const auto count = static_cast<Index>(degeneracy(n_qubits).n_ss);
    const std::vector<Index> idx = smallest_modulus(sd.eigenvalues, count);
    ComplexVector out(static_cast<Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Index>(i)) = sd.eigenvalues(idx[i]);
    return out;
}

std::vector<std::vector<Complex>> track_eigenvalues(const std::vector<ComplexVector>& clusters) {
    std::vector<std::vector<Complex>> tracked;
    if (clusters.empty()) return tracked;
    const Index n = clusters.front().size();
    tracked.emplace_back(clusters.front().data(), clusters.front().data() + n);

    constexpr double kTie = 1e-12;
    // Degenerate eigenvalues of a non-normal matrix split at about sqrt(eps).
    constexpr double kCoincident = 1e-7;
    for (std::size_t step = 1; step < clusters.size(); ++step) {
        const std::vector<Complex>& prev = tracked.back();
        const ComplexVector& next = clusters[step];
        if (next.size() != n) throw TrackingError("cluster size changed between strengths");

        // Each cluster is scaled by its own per-axis extent, so a cluster that
        // grows as a power of the strength keeps its shape. Axes below 1e-6 of
        // the modulus are noise and are not stretched.
        auto axis_scales = [](auto&& at, Index count) {
            double re = 0.0, im = 0.0, mod = 0.0;
            for (Index i = 0; i < count; ++i) {
                re = std::max(re, std::abs(at(i).real()));
                im = std::max(im, std::abs(at(i).imag()));
                mod = std::max(mod, std::abs(at(i)));
            }
            const double floor = mod > 0.0 ? 1e-6 * mod : 1.0;
            return std::pair{std::max(re, floor), std::max(im, floor)};
        };
        const auto [prev_re, prev_im] = axis_scales([&](Index i) { return prev[i]; }, n);
        const auto [next_re, next_im] = axis_scales([&](Index i) { return next(i); }, n);
        auto dist = [&](Complex a, Complex b) {
            return std::hypot(a.real() / prev_re - b.real() / next_re, a.imag() / prev_im - b.imag() / next_im);
        };
        auto same = [&](Complex a, Complex b) {
            return std::hypot((a.real() - b.real()) / next_re, (a.imag() - b.imag()) / next_im);
        };

        std::vector<std::tuple<double, Index, Index>> pairs;
        pairs.reserve(static_cast<std::size_t>(n * n));
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) pairs.emplace_back(dist(prev[i], next(j)), i, j);
        }
        std::sort(pairs.begin(), pairs.end());

        std::vector<bool> prev_used(static_cast<std::size_t>(n), false);
        std::vector<bool> next_used(static_cast<std::size_t>(n), false);
        std::vector<Complex> row(static_cast<std::size_t>(n));
        for (const auto& [d, i, j] : pairs) {
            if (prev_used[i] || next_used[j]) continue;
            // Another free candidate at the same distance that is not the same point.
            for (Index c = 0; c < n; ++c) {
                if (c == j || next_used[c]) continue;
                if (std::abs(dist(prev[i], next(c)) - d) <= kTie && same(next(j), next(c)) > kCoincident) {
                    throw TrackingError("ambiguous continuation for eigenvalue " + std::to_string(i) +
                                        " at step " + std::to_string(step));
                }
            }
            prev_used[i] = true;
            next_used[j] = true;
            row[i] = next(j);
        }
        tracked.push_back(std::move(row));
    }
    return tracked;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("slope fit needs >= 2 matching points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw ConfigError("slope fit needs distinct abscissae");
    return (n * sxy - sx * sy) / denom;
}

ScalingFit scaling_fit(PerturbationKind kind, std::vector<double> strengths, const std::vector<Index>& which,
                       const ScalingOptions& options) {
    if (kind == PerturbationKind::None) throw ConfigError("scaling fit needs a perturbation kind");
    std::sort(strengths.begin(), strengths.end());
    strengths.erase(std::unique(strengths.begin(), strengths.end()), strengths.end());
    if (strengths.size() < 3) throw ConfigError("scaling fit needs at least 3 distinct strengths");
    if (!(strengths.front() > 0.0)) throw ConfigError("scaling fit strengths must be > 0");
    if (strengths.back() < 10.0 * strengths.front() * (1.0 - 1e-12)) {
        throw ConfigError("scaling fit strengths must span at least one decade");
    }

    // Requested strengths plus geometric substeps; remember where the requested ones sit.
    std::vector<double> path;
    std::vector<std::size_t> requested;
    for (std::size_t i = 0; i < strengths.size(); ++i) {
        if (i > 0) {
            const double ratio = strengths[i] / strengths[i - 1];
            for (int k = 1; k <= options.substeps; ++k) {
                path.push_back(strengths[i - 1] * std::pow(ratio, double(k) / (options.substeps + 1)));
            }
        }
        requested.push_back(path.size());
        path.push_back(strengths[i]);
    }

    std::vector<ComplexVector> clusters;
    clusters.reserve(path.size());
    for (double s : path) clusters.push_back(near_null_cluster({kind, s}, options.n_qubits));
    const auto tracked = track_eigenvalues(clusters);

    const auto cluster_size = static_cast<Index>(tracked.front().size());
    std::vector<Index> ranks = which;
    if (ranks.empty()) {
        for (Index r = 1; r < cluster_size; ++r) ranks.push_back(r);
    }

    ScalingFit fit;
    fit.kind = kind;
    fit.n_qubits = options.n_qubits;
    fit.strengths = strengths;
    for (Index r : ranks) {
        if (r < 0 || r >= cluster_size) {
            throw ConfigError("eigenvalue rank " + std::to_string(r) + " outside the cluster");
        }
        ScalingTrack track;
        track.rank = r;
        std::vector<double> re;
        for (std::size_t pos : requested) {
            track.values.push_back(tracked[pos][r]);
            re.push_back(tracked[pos][r].real());
        }
        track.slope = loglog_slope(strengths, re);
        fit.tracks.push_back(std::move(track));
    }
    return fit;
}

}  // namespace dicke

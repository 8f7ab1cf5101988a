#include "csv.hpp"

#include "dicke/angular_momentum.hpp"
#include "dicke/errors.hpp"
#include "dicke/experiment.hpp"
#include "dicke/liouville.hpp"
#include "dicke/scaling.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace dicke {

namespace {

using detail::CsvRow;
using detail::write_csv;
namespace fs = std::filesystem;

// Runs task(i) for i in [0, count) on up to `jobs` threads. Tasks must not throw.
template <class Task>
void parallel_for(std::size_t count, int jobs, Task&& task) {
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) task(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<double> sorted_strengths(const Scenario& s) {
    std::vector<double> v = s.strengths;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

StrengthError classify(int n, double strength, const std::exception& e) {
    StrengthError err{n, strength, "error", e.what(), std::nullopt};
    if (const auto* ie = dynamic_cast<const IntegrationError*>(&e)) {
        err.kind = "integration_error";
        err.last_tau = ie->last_tau();
    } else if (dynamic_cast<const ConfigError*>(&e)) {
        err.kind = "config_error";
    } else if (dynamic_cast<const SpectralError*>(&e)) {
        err.kind = "spectral_error";
    } else if (dynamic_cast<const TrackingError*>(&e)) {
        err.kind = "tracking_error";
    } else if (dynamic_cast<const InconsistencyError*>(&e)) {
        err.kind = "inconsistency_error";
    } else if (dynamic_cast<const BlockDegeneracyError*>(&e)) {
        err.kind = "block_degeneracy_error";
    }
    return err;
}

std::string stem(const std::string& what, int n, PerturbationKind kind, std::optional<double> strength) {
    std::string out = what + "_N" + std::to_string(n);
    if (kind != PerturbationKind::None) {
        out += "_" + std::string(to_string(kind));
        if (strength) out += "_" + format_number(*strength);
    }
    return out;
}

fs::path scenario_dir(const Scenario& s, const RunOptions& opt) {
    return opt.out_dir / s.name;
}

void merge(RunReport& into, RunReport&& from) {
    into.files.insert(into.files.end(), from.files.begin(), from.files.end());
    into.errors.insert(into.errors.end(), from.errors.begin(), from.errors.end());
    into.collapse.insert(into.collapse.end(), from.collapse.begin(), from.collapse.end());
}

}  // namespace

const std::vector<double>& observable_series(const Trajectory& t, Observable obs) {
    switch (obs) {
        case Observable::Gamma0: return t.gamma0;
        case Observable::GammaSR: return t.gamma_sr;
        case Observable::GammaTot: return t.gamma_tot;
        case Observable::PopSmax: return t.pop_smax;
    }
    throw ConfigError("unknown observable");
}

ScenarioTrajectory run_one_trajectory(const Scenario& s, int n_qubits, double strength) {
    const SystemConfig config = realize({s.kind, strength}, SystemConfig::lattice(n_qubits));
    const MasterEquation me(config);
    double t_max = 0.0;
    const std::vector<double> samples = scenario_samples(s, strength, t_max);
    EvolveOptions options;
    options.stop_when_steady = s.stop_when_steady;
    ScenarioTrajectory out;
    out.n_qubits = n_qubits;
    out.strength = strength;
    out.factor = rescale_factor(s.rescaling, strength, config.gamma);
    out.trajectory = evolve(me, ground_state(n_qubits), t_max, samples, options);
    return out;
}

CollapseReport collapse_check(const std::vector<ScenarioTrajectory>& runs, Observable obs,
                              std::pair<double, double> window) {
    CollapseReport report;
    report.observable = obs;
    report.window = window;
    if (runs.empty()) return report;
    report.n_qubits = runs.front().n_qubits;
    for (const auto& r : runs) report.strengths.push_back(r.strength);
    const std::size_t points = runs.front().trajectory.times.size();
    for (const auto& r : runs) {
        if (r.trajectory.times.size() != points) {
            throw InconsistencyError("collapse check needs trajectories on a common grid");
        }
    }
    for (std::size_t a = 0; a < runs.size(); ++a) {
        for (std::size_t b = a + 1; b < runs.size(); ++b) {
            const auto& ta = runs[a].trajectory;
            const auto& tb = runs[b].trajectory;
            const auto& ya = observable_series(ta, obs);
            const auto& yb = observable_series(tb, obs);
            for (std::size_t i = 0; i < points; ++i) {
                const double xa = ta.times[i] * runs[a].factor;
                const double xb = tb.times[i] * runs[b].factor;
                if (std::abs(xa - xb) > 1e-9 * std::max(1.0, std::abs(xa))) {
                    throw InconsistencyError("trajectories do not share the tau' grid");
                }
                if (xa < window.first || xa > window.second) continue;
                const double dev = std::abs(ya[i] - yb[i]);
                if (dev > report.max_deviation) {
                    report.max_deviation = dev;
                    report.worst_tau_prime = xa;
                    report.worst_pair = {runs[a].strength, runs[b].strength};
                }
            }
        }
    }
    return report;
}

RunReport run_trajectories(const Scenario& s, const RunOptions& opt) {
    const std::vector<double> strengths = sorted_strengths(s);
    struct Task {
        int n;
        double strength;
    };
    std::vector<Task> tasks;
    for (int n : s.n_qubits)
        for (double x : strengths) tasks.push_back({n, x});

    std::vector<std::optional<ScenarioTrajectory>> results(tasks.size());
    std::vector<std::optional<StrengthError>> failures(tasks.size());
    parallel_for(tasks.size(), opt.jobs, [&](std::size_t i) {
        try {
            results[i] = run_one_trajectory(s, tasks[i].n, tasks[i].strength);
        } catch (const std::exception& e) {
            failures[i] = classify(tasks[i].n, tasks[i].strength, e);
        }
    });

    RunReport report;
    const fs::path dir = scenario_dir(s, opt);
    const bool rescaled = s.rescaling != Rescaling::None;
    std::vector<CsvRow> joined;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (failures[i]) {
            report.errors.push_back(*failures[i]);
            continue;
        }
        const ScenarioTrajectory& r = *results[i];
        const Trajectory& t = r.trajectory;
        CsvRow header{"tau", "gamma0", "gammaSR", "gammaTot", "popSmax"};
        if (rescaled) header.push_back("tauPrime");
        std::vector<CsvRow> rows;
        for (std::size_t k = 0; k < t.times.size(); ++k) {
            CsvRow row{format_number(t.times[k]), format_number(t.gamma0[k]), format_number(t.gamma_sr[k]),
                       format_number(t.gamma_tot[k]), format_number(t.pop_smax[k])};
            if (rescaled) row.push_back(format_number(t.times[k] * r.factor));
            if (opt.joined) {
                joined.push_back({std::to_string(r.n_qubits), format_number(r.strength), row[0],
                                  format_number(t.times[k] * r.factor), row[1], row[2], row[3], row[4]});
            }
            rows.push_back(std::move(row));
        }
        const fs::path file = dir / (stem("trajectory", r.n_qubits, s.kind, r.strength) + ".csv");
        write_csv(file, header, rows);
        report.files.push_back(file);
    }
    if (opt.joined) {
        const fs::path file = dir / (s.name + "_joined.csv");
        write_csv(file, {"n_qubits", "strength", "tau", "tauPrime", "gamma0", "gammaSR", "gammaTot", "popSmax"},
                  joined);
        report.files.push_back(file);
    }

    if (s.collapse_window) {
        for (int n : s.n_qubits) {
            std::vector<ScenarioTrajectory> runs;
            for (std::size_t i = 0; i < tasks.size(); ++i) {
                if (tasks[i].n == n && results[i] && tasks[i].strength > 0.0) runs.push_back(*results[i]);
            }
            if (runs.size() < 2) continue;
            const CollapseReport c = collapse_check(runs, s.collapse_observable, *s.collapse_window);
            nlohmann::json j;
            j["n_qubits"] = c.n_qubits;
            j["observable"] = std::string(to_string(c.observable));
            j["window"] = {c.window.first, c.window.second};
            j["strengths"] = c.strengths;
            j["max_deviation"] = c.max_deviation;
            j["worst_tau_prime"] = c.worst_tau_prime;
            j["worst_pair"] = {c.worst_pair.first, c.worst_pair.second};
            const fs::path file = dir / ("collapse_N" + std::to_string(n) + ".json");
            detail::write_text(file, j.dump(2) + "\n");
            report.files.push_back(file);
            report.collapse.push_back(c);
        }
    }
    return report;
}

RunReport run_spectrum(const Scenario& s, const RunOptions& opt) {
    const std::vector<double> strengths = sorted_strengths(s);
    RunReport report;
    const fs::path dir = scenario_dir(s, opt);
    const std::string kind(to_string(s.kind));
    for (int n : s.n_qubits) {
        std::vector<std::optional<SpectralDecomposition>> spectra(strengths.size());
        std::vector<std::optional<StrengthError>> failures(strengths.size());
        parallel_for(strengths.size(), opt.jobs, [&](std::size_t i) {
            try {
                const MasterEquation me(realize({s.kind, strengths[i]}, SystemConfig::lattice(n)));
                spectra[i] = spectrum(build_liouvillian(me), {.vectors = false});
            } catch (const std::exception& e) {
                failures[i] = classify(n, strengths[i], e);
            }
        });

        const auto n_ss = static_cast<Index>(degeneracy(n).n_ss);
        std::vector<CsvRow> full;
        std::vector<CsvRow> cluster;
        std::vector<CsvRow> summary;
        for (std::size_t i = 0; i < strengths.size(); ++i) {
            if (failures[i]) {
                report.errors.push_back(*failures[i]);
                continue;
            }
            const SpectralDecomposition& sd = *spectra[i];
            const std::string st = format_number(strengths[i]);
            for (Index k = 0; k < sd.eigenvalues.size(); ++k) {
                full.push_back({std::to_string(k), format_number(sd.eigenvalues(k).real()),
                                format_number(sd.eigenvalues(k).imag()), st, kind});
            }
            const auto idx = smallest_modulus(sd.eigenvalues, n_ss);
            for (std::size_t k = 0; k < idx.size(); ++k) {
                const Complex mu = sd.eigenvalues(idx[k]);
                cluster.push_back({std::to_string(k), format_number(mu.real()), format_number(mu.imag()), st, kind});
            }
            summary.push_back({st, std::to_string(sd.null_dim), format_number(sd.tol_zero),
                               format_number(sd.norm_max)});
        }
        const CsvRow header{"index", "re", "im", "strength", "kind"};
        const fs::path base = dir / stem("spectrum", n, s.kind, std::nullopt);
        write_csv(base.string() + ".csv", header, full);
        write_csv(base.string() + "_cluster.csv", header, cluster);
        write_csv(base.string() + "_summary.csv", {"strength", "null_dim", "tol_zero", "norm_max"}, summary);
        report.files.push_back(base.string() + ".csv");
        report.files.push_back(base.string() + "_cluster.csv");
        report.files.push_back(base.string() + "_summary.csv");

        std::vector<double> positive;
        for (double x : strengths)
            if (x > 0.0) positive.push_back(x);
        if (s.kind != PerturbationKind::None && positive.size() >= 3 && positive.back() >= 10.0 * positive.front()) {
            try {
                const ScalingFit fit = scaling_fit(s.kind, positive, {}, {.n_qubits = n});
                std::vector<CsvRow> rows;
                for (const auto& t : fit.tracks) {
                    rows.push_back({std::to_string(t.rank), format_number(t.slope),
                                    format_number(t.values.front().real()), format_number(t.values.front().imag()),
                                    format_number(t.values.back().real()), format_number(t.values.back().imag())});
                }
                const fs::path file = base.string() + "_scaling.csv";
                write_csv(file, {"rank", "slope", "re_min", "im_min", "re_max", "im_max"}, rows);
                report.files.push_back(file);
            } catch (const std::exception& e) {
                report.errors.push_back(classify(n, positive.front(), e));
            }
        }
    }
    return report;
}

RunReport run_degeneracy(const Scenario& s, const RunOptions& opt) {
    RunReport report;
    const fs::path dir = scenario_dir(s, opt);
    std::vector<int> sizes = s.n_qubits;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    if (s.wants(OutputKind::Degeneracy) || (!s.wants(OutputKind::Table1) && !s.wants(OutputKind::NullCount))) {
        std::vector<CsvRow> rows;
        for (int n : sizes) {
            const DegeneracyTable t = degeneracy(n);
            for (const auto& [twice_s, d] : t.d_s) {
                rows.push_back({std::to_string(n), format_number(twice_s / 2.0), std::to_string(d),
                                std::to_string(t.n_ss)});
            }
        }
        write_csv(dir / "degeneracy.csv", {"N", "S", "D_S", "N_ss"}, rows);
        report.files.push_back(dir / "degeneracy.csv");
    }
    if (s.wants(OutputKind::Table1)) {
        std::vector<CsvRow> rows;
        for (int n : sizes) rows.push_back({std::to_string(n), std::to_string(degeneracy(n).n_ss)});
        write_csv(dir / "table1.csv", {"N", "N_ss"}, rows);
        report.files.push_back(dir / "table1.csv");
    }
    if (s.wants(OutputKind::NullCount)) {
        std::vector<std::optional<Index>> counts(sizes.size());
        std::vector<std::optional<StrengthError>> failures(sizes.size());
        parallel_for(sizes.size(), opt.jobs, [&](std::size_t i) {
            try {
                const MasterEquation me(realize({}, SystemConfig::lattice(sizes[i])));
                counts[i] = spectrum(build_liouvillian(me), {.vectors = false}).null_dim;
            } catch (const std::exception& e) {
                failures[i] = classify(sizes[i], 0.0, e);
            }
        });
        std::vector<CsvRow> rows;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (failures[i]) {
                report.errors.push_back(*failures[i]);
                continue;
            }
            rows.push_back({std::to_string(sizes[i]), std::to_string(degeneracy(sizes[i]).n_ss),
                            std::to_string(*counts[i])});
        }
        write_csv(dir / "null_count.csv", {"N", "N_ss", "null_dim"}, rows);
        report.files.push_back(dir / "null_count.csv");
    }
    return report;
}

RunReport run_projection(const Scenario& s, const RunOptions& opt) {
    RunReport report;
    const fs::path dir = scenario_dir(s, opt);
    const std::vector<double> strengths = sorted_strengths(s);
    for (int n : s.n_qubits) {
        SubspaceProjection base;
        try {
            base = build_subspace(build_basis(n), dicke_point_blocks(n));
        } catch (const std::exception& e) {
            report.errors.push_back(classify(n, 0.0, e));
            continue;
        }
        std::vector<std::optional<SubspaceProjection>> results(strengths.size());
        std::vector<std::optional<StrengthError>> failures(strengths.size());
        parallel_for(strengths.size(), opt.jobs, [&](std::size_t i) {
            try {
                results[i] = coupling_matrix(base, {s.kind, strengths[i]}, SystemConfig::lattice(n));
            } catch (const std::exception& e) {
                failures[i] = classify(n, strengths[i], e);
            }
        });
        for (std::size_t i = 0; i < strengths.size(); ++i) {
            if (failures[i]) {
                report.errors.push_back(*failures[i]);
                continue;
            }
            const SubspaceProjection& p = *results[i];
            std::vector<CsvRow> entries;
            for (Index r = 0; r < p.size(); ++r) {
                for (Index c = 0; c < p.size(); ++c) {
                    const auto& er = p.eta[r];
                    const auto& ec = p.eta[c];
                    entries.push_back({std::to_string(r), std::to_string(c), format_number(er.twice_s / 2.0),
                                       std::to_string(er.a), std::to_string(er.b), format_number(ec.twice_s / 2.0),
                                       std::to_string(ec.a), std::to_string(ec.b),
                                       format_number(p.coupling(r, c).real()), format_number(p.coupling(r, c).imag())});
                }
            }
            const std::string name = stem("coupling", n, s.kind, strengths[i]);
            write_csv(dir / (name + ".csv"),
                      {"row", "col", "S_row", "a_row", "b_row", "S_col", "a_col", "b_col", "re", "im"}, entries);
            report.files.push_back(dir / (name + ".csv"));

            Eigen::ComplexEigenSolver<ComplexMatrix> eig(p.coupling, false);
            const ComplexVector values = eig.eigenvalues();
            const double scale = std::max(1.0, p.coupling.cwiseAbs().maxCoeff());
            std::vector<CsvRow> rows;
            const auto order = spectral_order(values, 1e-10 * scale);
            for (std::size_t k = 0; k < order.size(); ++k) {
                const Complex mu = values(order[k]);
                rows.push_back({std::to_string(k), format_number(mu.real()), format_number(mu.imag()),
                                format_number(strengths[i]), std::string(to_string(s.kind))});
            }
            write_csv(dir / (name + "_eigenvalues.csv"), {"index", "re", "im", "strength", "kind"}, rows);
            report.files.push_back(dir / (name + "_eigenvalues.csv"));
        }
    }
    return report;
}

RunReport run_scenario(const Scenario& s, const RunOptions& opt) {
    RunReport report;
    if (s.wants(OutputKind::Trajectory)) merge(report, run_trajectories(s, opt));
    if (s.wants(OutputKind::Spectrum)) merge(report, run_spectrum(s, opt));
    if (s.wants(OutputKind::Degeneracy) || s.wants(OutputKind::Table1) || s.wants(OutputKind::NullCount)) {
        merge(report, run_degeneracy(s, opt));
    }
    if (s.wants(OutputKind::CouplingMatrix)) merge(report, run_projection(s, opt));
    return report;
}

}  // namespace dicke

// experiment.hpp: Scenario files, sweep execution and CSV/JSON emission.

#pragma once

#include "dicke/evolve.hpp"
#include "dicke/system_model.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dicke {

/// tau' = factor * tau with the figure-caption factors; tau' = tau at zero strength.
enum class Rescaling { None, Dephasing, DrivingPhase, Separation, Detuning };

std::string_view to_string(Rescaling r);
Rescaling parse_rescaling(std::string_view name);
double rescale_factor(Rescaling r, double strength, double gamma = 1.0);

enum class OutputKind { Trajectory, Spectrum, Degeneracy, CouplingMatrix, Table1, NullCount };

std::string_view to_string(OutputKind k);
OutputKind parse_output_kind(std::string_view name);

enum class Observable { Gamma0, GammaSR, GammaTot, PopSmax };

std::string_view to_string(Observable o);
Observable parse_observable(std::string_view name);

struct GridSpec {
    std::size_t points = 301;
    bool log_spacing = false;
    double start = 0.0;  // first sample; must be > 0 for log spacing
};

struct Scenario {
    static constexpr int kSchemaVersion = 1;

    std::string name;
    std::vector<int> n_qubits;
    PerturbationKind kind = PerturbationKind::None;
    std::vector<double> strengths{0.0};
    // Horizon in tau; when tau_prime_max is set, each strength runs to
    // tau_prime_max / factor instead and the grid lives in tau'.
    double t_max = 30.0;
    std::optional<double> tau_prime_max;
    GridSpec grid;
    Rescaling rescaling = Rescaling::None;
    std::vector<OutputKind> outputs{OutputKind::Trajectory};
    std::optional<std::pair<double, double>> collapse_window;
    Observable collapse_observable = Observable::GammaSR;
    bool stop_when_steady = false;

    /// Throws ConfigError.
    void validate() const;
    bool wants(OutputKind k) const;
};

/// Parses and validates a scenario document (JSON text).
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& path);

struct StrengthError {
    int n_qubits = 0;
    double strength = 0.0;
    std::string kind;     // error class
    std::string message;
    std::optional<double> last_tau;
};

struct CollapseReport {
    int n_qubits = 0;
    Observable observable = Observable::GammaSR;
    std::pair<double, double> window{0.0, 0.0};
    std::vector<double> strengths;
    double max_deviation = 0.0;
    double worst_tau_prime = 0.0;
    std::pair<double, double> worst_pair{0.0, 0.0};
};

struct RunOptions {
    std::filesystem::path out_dir = "out";
    int jobs = 1;
    bool joined = false;  // sweep: also write the strength-keyed joined file
};

struct RunReport {
    std::vector<std::filesystem::path> files;
    std::vector<StrengthError> errors;
    std::vector<CollapseReport> collapse;
    bool ok() const { return errors.empty(); }
};

/// One rescaled trajectory: the tau samples that realize the scenario grid.
struct ScenarioTrajectory {
    int n_qubits = 0;
    double strength = 0.0;
    double factor = 1.0;
    Trajectory trajectory;
};

/// Sample times in tau for one strength (grid in tau' when rescaled).
std::vector<double> scenario_samples(const Scenario& s, double strength, double& t_max);

ScenarioTrajectory run_one_trajectory(const Scenario& s, int n_qubits, double strength);

/// Maximum pairwise |difference| of an observable across trajectories sampled on
/// the same tau' grid, restricted to the window.
CollapseReport collapse_check(const std::vector<ScenarioTrajectory>& runs, Observable obs,
                              std::pair<double, double> window);

const std::vector<double>& observable_series(const Trajectory& t, Observable obs);

RunReport run_trajectories(const Scenario& s, const RunOptions& opt);
RunReport run_spectrum(const Scenario& s, const RunOptions& opt);
RunReport run_degeneracy(const Scenario& s, const RunOptions& opt);
RunReport run_projection(const Scenario& s, const RunOptions& opt);
/// Everything listed in s.outputs.
RunReport run_scenario(const Scenario& s, const RunOptions& opt);

/// %.12g, the single number format of every emitted file.
std::string format_number(double x);

/// Output directory: explicit flag, else $DICKE_OUT_DIR, else ./out.
std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag);

}  // namespace dicke

#include "dicke/errors.hpp"
#include "dicke/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dicke {

using nlohmann::json;

std::string_view to_string(Rescaling r) {
    switch (r) {
        case Rescaling::None: return "none";
        case Rescaling::Dephasing: return "dephasing";
        case Rescaling::DrivingPhase: return "driving_phase";
        case Rescaling::Separation: return "separation";
        case Rescaling::Detuning: return "linear_detuning";
    }
    throw ConfigError("unknown rescaling");
}

Rescaling parse_rescaling(std::string_view name) {
    if (name == "none") return Rescaling::None;
    if (name == "dephasing") return Rescaling::Dephasing;
    if (name == "driving_phase" || name == "phase") return Rescaling::DrivingPhase;
    if (name == "separation") return Rescaling::Separation;
    if (name == "linear_detuning" || name == "detuning") return Rescaling::Detuning;
    throw ConfigError("unknown rescaling '" + std::string(name) + "'");
}

double rescale_factor(Rescaling r, double strength, double gamma) {
    if (strength == 0.0) return 1.0;
    switch (r) {
        case Rescaling::None: return 1.0;
        case Rescaling::Dephasing: return 1000.0 * strength / gamma;
        case Rescaling::DrivingPhase: return (400.0 * strength) * (400.0 * strength);
        case Rescaling::Separation: return (400.0 * strength) * (400.0 * strength);
        case Rescaling::Detuning: return (strength / 0.05) * (strength / 0.05);
    }
    throw ConfigError("unknown rescaling");
}

std::string_view to_string(OutputKind k) {
    switch (k) {
        case OutputKind::Trajectory: return "trajectory";
        case OutputKind::Spectrum: return "spectrum";
        case OutputKind::Degeneracy: return "degeneracy";
        case OutputKind::CouplingMatrix: return "coupling_matrix";
        case OutputKind::Table1: return "table1";
        case OutputKind::NullCount: return "null_count";
    }
    throw ConfigError("unknown output kind");
}

OutputKind parse_output_kind(std::string_view name) {
    for (auto k : {OutputKind::Trajectory, OutputKind::Spectrum, OutputKind::Degeneracy,
                   OutputKind::CouplingMatrix, OutputKind::Table1, OutputKind::NullCount}) {
        if (name == to_string(k)) return k;
    }
    throw ConfigError("unknown output '" + std::string(name) + "'");
}

std::string_view to_string(Observable o) {
    switch (o) {
        case Observable::Gamma0: return "gamma0";
        case Observable::GammaSR: return "gammaSR";
        case Observable::GammaTot: return "gammaTot";
        case Observable::PopSmax: return "popSmax";
    }
    throw ConfigError("unknown observable");
}

Observable parse_observable(std::string_view name) {
    for (auto o : {Observable::Gamma0, Observable::GammaSR, Observable::GammaTot, Observable::PopSmax}) {
        if (name == to_string(o)) return o;
    }
    throw ConfigError("unknown observable '" + std::string(name) + "'");
}

bool Scenario::wants(OutputKind k) const {
    return std::find(outputs.begin(), outputs.end(), k) != outputs.end();
}

namespace {

bool rescaling_matches(Rescaling r, PerturbationKind k) {
    switch (r) {
        case Rescaling::None: return true;
        case Rescaling::Dephasing: return k == PerturbationKind::Dephasing;
        case Rescaling::DrivingPhase: return k == PerturbationKind::DrivingPhase;
        case Rescaling::Separation: return k == PerturbationKind::Separation;
        case Rescaling::Detuning: return k == PerturbationKind::LinearDetuning;
    }
    return false;
}

}  // namespace

void Scenario::validate() const {
    if (name.empty()) throw ConfigError("scenario name must not be empty");
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) {
            throw ConfigError("scenario name may only contain letters, digits, '_' and '-'");
        }
    }
    if (n_qubits.empty()) throw ConfigError("n_qubits must list at least one size");
    if (outputs.empty()) throw ConfigError("outputs must not be empty");
    if (strengths.empty()) throw ConfigError("perturbation.strengths must not be empty");
    for (double s : strengths) {
        if (!std::isfinite(s) || s < 0.0) throw ConfigError("perturbation strengths must be finite and >= 0");
        if (kind == PerturbationKind::None && s != 0.0) {
            throw ConfigError("perturbation kind 'none' only admits strength 0");
        }
    }
    if (!rescaling_matches(rescaling, kind)) {
        throw ConfigError("rescaling '" + std::string(to_string(rescaling)) +
                          "' does not match perturbation kind '" + std::string(to_string(kind)) + "'");
    }
    const bool dynamics = wants(OutputKind::Trajectory);
    const bool spectral = wants(OutputKind::Spectrum) || wants(OutputKind::NullCount);
    const bool projection = wants(OutputKind::CouplingMatrix);
    for (int n : n_qubits) {
        if (n < 1 || n > 30) throw ConfigError("n_qubits entries must be in [1, 30]");
        if ((dynamics || projection) && n > 8) throw ConfigError("trajectories and projections support N <= 8");
        if (spectral && n > 6) throw ConfigError("dense Liouvillian spectra support N <= 6");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be > 0");
    if (tau_prime_max) {
        if (rescaling == Rescaling::None) throw ConfigError("tau_prime_max needs a rescaling rule");
        if (!(*tau_prime_max > 0.0) || !std::isfinite(*tau_prime_max)) {
            throw ConfigError("tau_prime_max must be > 0");
        }
    }
    const double horizon = tau_prime_max.value_or(t_max);
    if (grid.points < 1) throw ConfigError("grid.points must be >= 1");
    if (grid.start < 0.0 || grid.start > horizon) throw ConfigError("grid.start must lie in [0, horizon]");
    if (grid.log_spacing && !(grid.start > 0.0)) throw ConfigError("log grid needs grid.start > 0");
    if (collapse_window && !(collapse_window->first < collapse_window->second)) {
        throw ConfigError("collapse_window must be [low, high] with low < high");
    }
    if (collapse_window && !tau_prime_max) {
        throw ConfigError("collapse_window needs tau_prime_max so every strength shares the tau' grid");
    }
}

namespace {

template <class T>
T get_as(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown field '" + key + "' in " + where);
    }
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
    reject_unknown(doc,
                   {"schema_version", "name", "description", "n_qubits", "perturbation", "t_max",
                    "tau_prime_max", "grid", "rescaling", "outputs", "collapse_window",
                    "collapse_observable", "stop_when_steady"},
                   "scenario");

    if (!doc.contains("schema_version")) throw ConfigError("missing schema_version");
    const int version = get_as<int>(doc, "schema_version");
    if (version != Scenario::kSchemaVersion) {
        throw ConfigError("unsupported schema_version " + std::to_string(version));
    }

    Scenario s;
    if (!doc.contains("name")) throw ConfigError("missing name");
    s.name = get_as<std::string>(doc, "name");
    if (!doc.contains("n_qubits")) throw ConfigError("missing n_qubits");
    const json& nq = doc.at("n_qubits");
    if (nq.is_array()) {
        s.n_qubits = get_as<std::vector<int>>(doc, "n_qubits");
    } else {
        s.n_qubits = {get_as<int>(doc, "n_qubits")};
    }
    if (doc.contains("perturbation")) {
        const json& p = doc.at("perturbation");
        if (!p.is_object()) throw ConfigError("perturbation must be an object");
        reject_unknown(p, {"kind", "strengths"}, "perturbation");
        s.kind = parse_perturbation_kind(get_as<std::string>(p, "kind"));
        s.strengths = p.contains("strengths") ? get_as<std::vector<double>>(p, "strengths")
                                              : std::vector<double>{0.0};
    }
    if (doc.contains("t_max")) s.t_max = get_as<double>(doc, "t_max");
    if (doc.contains("tau_prime_max")) s.tau_prime_max = get_as<double>(doc, "tau_prime_max");
    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        reject_unknown(g, {"points", "spacing", "start"}, "grid");
        if (g.contains("points")) {
            const long long points = get_as<long long>(g, "points");
            if (points < 1) throw ConfigError("grid.points must be >= 1");
            s.grid.points = static_cast<std::size_t>(points);
        }
        if (g.contains("spacing")) {
            const auto spacing = get_as<std::string>(g, "spacing");
            if (spacing != "linear" && spacing != "log") throw ConfigError("grid.spacing must be linear or log");
            s.grid.log_spacing = spacing == "log";
        }
        if (g.contains("start")) s.grid.start = get_as<double>(g, "start");
    }
    if (doc.contains("rescaling")) s.rescaling = parse_rescaling(get_as<std::string>(doc, "rescaling"));
    if (doc.contains("outputs")) {
        s.outputs.clear();
        for (const auto& name : get_as<std::vector<std::string>>(doc, "outputs")) {
            s.outputs.push_back(parse_output_kind(name));
        }
    }
    if (doc.contains("collapse_window")) {
        const auto w = get_as<std::vector<double>>(doc, "collapse_window");
        if (w.size() != 2) throw ConfigError("collapse_window must have two entries");
        s.collapse_window = std::make_pair(w[0], w[1]);
    }
    if (doc.contains("collapse_observable")) {
        s.collapse_observable = parse_observable(get_as<std::string>(doc, "collapse_observable"));
    }
    if (doc.contains("stop_when_steady")) s.stop_when_steady = get_as<bool>(doc, "stop_when_steady");
    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read scenario file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::vector<double> scenario_samples(const Scenario& s, double strength, double& t_max) {
    const double factor = rescale_factor(s.rescaling, strength);
    const double horizon = s.tau_prime_max.value_or(s.t_max);
    // Grid lives in tau' when rescaled; tau = tau' / factor.
    std::vector<double> grid = s.grid.log_spacing ? log_grid(s.grid.start, horizon, s.grid.points)
                                                  : linear_grid(s.grid.start, horizon, s.grid.points);
    if (s.tau_prime_max) {
        t_max = horizon / factor;
        for (double& x : grid) x /= factor;
        if (!grid.empty()) grid.back() = t_max;
    } else {
        t_max = horizon;
    }
    return grid;
}

}  // namespace dicke

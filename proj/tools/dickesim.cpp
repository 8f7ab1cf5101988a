// dickesim: run bundled or custom scenarios and emit CSV/JSON results.
//
// Exit codes: 0 success, 1 runtime failure (integration, spectral, partial
// sweep), 2 invalid configuration or usage.

#include "dicke/errors.hpp"
#include "dicke/experiment.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

void emit_error(const std::string& kind, const std::string& message, const std::string& scenario = {}) {
    nlohmann::json j;
    j["error"] = kind;
    j["message"] = message;
    if (!scenario.empty()) j["scenario"] = scenario;
    std::cerr << j.dump() << "\n";
}

int report(const dicke::Scenario& s, const dicke::RunReport& r) {
    for (const auto& f : r.files) std::cout << f.string() << "\n";
    for (const auto& c : r.collapse) {
        std::cout << "collapse N=" << c.n_qubits << " " << dicke::to_string(c.observable) << " window=["
                  << dicke::format_number(c.window.first) << ", " << dicke::format_number(c.window.second)
                  << "] max_deviation=" << dicke::format_number(c.max_deviation) << "\n";
    }
    for (const auto& e : r.errors) {
        nlohmann::json j;
        j["error"] = e.kind;
        j["message"] = e.message;
        j["scenario"] = s.name;
        j["n_qubits"] = e.n_qubits;
        j["strength"] = e.strength;
        if (e.last_tau) j["last_tau"] = *e.last_tau;
        std::cerr << j.dump() << "\n";
    }
    return r.ok() ? 0 : 1;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw dicke::ConfigError("cannot parse strength '" + item + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven Dicke superradiance under perturbations: trajectories, spectra, degeneracy"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_flag;
    int jobs = 1;
    long long seed = 0;
    std::optional<std::string> strengths_flag;
    int n_max = 7;

    auto common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "Scenario JSON file");
        if (config_required) opt->required();
        sub->add_option("--out", out_flag, "Output directory (default: $DICKE_OUT_DIR, else ./out)");
        sub->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "Reserved; every computation is deterministic");
    };
    auto* run = app.add_subcommand("run", "Run every output listed in a scenario");
    common(run, true);
    auto* sweep = app.add_subcommand("sweep", "Run the trajectory sweep with a joined file and collapse report");
    common(sweep, true);
    sweep->add_option("--strengths", strengths_flag, "Comma-separated strengths overriding the scenario");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Liouvillian spectra, near-null clusters and scaling fits");
    common(spectrum_cmd, true);
    spectrum_cmd->add_option("--strengths", strengths_flag, "Comma-separated strengths overriding the scenario");
    auto* deg = app.add_subcommand("degeneracy", "Steady-state degeneracy table D_S and N_ss");
    common(deg, false);
    deg->add_option("--n-max", n_max, "Largest N when no scenario is given")->check(CLI::Range(1, 30));
    auto* proj = app.add_subcommand("project", "Coupling matrix of the perturbation in the degenerate subspace");
    common(proj, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        emit_error("usage_error", e.what());
        return 2;
    }
    (void)seed;

    dicke::Scenario scenario;
    try {
        if (!config_path.empty()) {
            scenario = dicke::load_scenario(config_path);
        } else {
            scenario.name = "degeneracy";
            scenario.outputs = {dicke::OutputKind::Degeneracy, dicke::OutputKind::Table1};
            for (int n = 1; n <= n_max; ++n) scenario.n_qubits.push_back(n);
            scenario.validate();
        }
        if (strengths_flag) {
            scenario.strengths = parse_list(*strengths_flag);
            scenario.validate();
        }
    } catch (const dicke::ConfigError& e) {
        emit_error("config_error", e.what(), scenario.name);
        return 2;
    }

    dicke::RunOptions options;
    options.out_dir = dicke::resolve_out_dir(out_flag);
    options.jobs = jobs;

    try {
        if (*run) return report(scenario, dicke::run_scenario(scenario, options));
        if (*sweep) {
            options.joined = true;
            return report(scenario, dicke::run_trajectories(scenario, options));
        }
        if (*spectrum_cmd) return report(scenario, dicke::run_spectrum(scenario, options));
        if (*deg) {
            if (!scenario.wants(dicke::OutputKind::Degeneracy) && !scenario.wants(dicke::OutputKind::Table1) &&
                !scenario.wants(dicke::OutputKind::NullCount)) {
                scenario.outputs.push_back(dicke::OutputKind::Degeneracy);
            }
            return report(scenario, dicke::run_degeneracy(scenario, options));
        }
        if (*proj) return report(scenario, dicke::run_projection(scenario, options));
    } catch (const dicke::ConfigError& e) {
        emit_error("config_error", e.what(), scenario.name);
        return 2;
    } catch (const std::exception& e) {
        emit_error("runtime_error", e.what(), scenario.name);
        return 1;
    }
    return 0;
}

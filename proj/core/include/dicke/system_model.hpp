// system_model.hpp: Physical configuration of a waveguide-coupled qubit array and
// the single-site / collective spin operators on the 2^N product space.

#pragma once

#include "dicke/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dicke {

/// Full physical description of an N-qubit array. Rates are in units of the
/// individual decay rate, lengths in units of the waveguide wavelength.
struct SystemConfig {
    int n_qubits = 1;
    double gamma = 1.0;           // individual decay rate
    double rabi_amplitude = 0.0;  // common Rabi magnitude
    std::vector<double> drive_phases;
    std::vector<double> detunings;
    std::vector<double> positions;
    double dephasing_rate = 0.0;
    double wave_number = kTwoPi;  // lambda = 1

    /// Throws ConfigError when the invariants do not hold.
    void validate() const;

    double wavelength() const { return kTwoPi / wave_number; }

    /// Unperturbed reference: zero phases and detunings, z_n = n * lambda,
    /// no dephasing, no drive.
    static SystemConfig lattice(int n_qubits);

    bool operator==(const SystemConfig&) const = default;
};

enum class PerturbationKind { None, Dephasing, DrivingPhase, Separation, LinearDetuning };

std::string_view to_string(PerturbationKind kind);

/// Accepts the canonical names ("none", "dephasing", "driving_phase",
/// "separation", "linear_detuning") and a few short aliases.
PerturbationKind parse_perturbation_kind(std::string_view name);

struct PerturbationSpec {
    PerturbationKind kind = PerturbationKind::None;
    // Gamma_phi, k_phi, delta_d (wavelengths) or k_Delta depending on kind.
    double strength = 0.0;
};

enum class SpinOp { Raise, Lower, Z };

/// sigma^+ = |1><0|, sigma^- = |0><1|, sigma^z = |0><0| - |1><1| embedded at `site`.
DenseOperator site_operator(int n_qubits, int site, SpinOp which);
DenseOperator site_operator(const SystemConfig& config, int site, SpinOp which);

/// S_+ and S_- are plain sums; S_z carries the factor 1/2.
DenseOperator collective_operator(int n_qubits, SpinOp which);
DenseOperator collective_operator(const SystemConfig& config, SpinOp which);

/// Applies exactly one perturbation family to `base` and fixes the drive at
/// Omega = 2 N Gamma.
SystemConfig realize(const PerturbationSpec& spec, const SystemConfig& base);

/// Number of excited qubits in computational-basis state `index`.
int excitation_count(Index index);

}  // namespace dicke

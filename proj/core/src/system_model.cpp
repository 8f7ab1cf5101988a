#include "dicke/system_model.hpp"

#include "dicke/errors.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

void require_site(int n_qubits, int site) {
    if (site < 0 || site >= n_qubits) {
        throw std::out_of_range("site " + std::to_string(site) + " outside [0, " +
                                std::to_string(n_qubits) + ")");
    }
}

Index site_mask(int n_qubits, int site) {
    return Index{1} << (n_qubits - 1 - site);
}

}  // namespace

void SystemConfig::validate() const {
    if (n_qubits < 1) {
        throw ConfigError("n_qubits must be >= 1");
    }
    const auto n = static_cast<std::size_t>(n_qubits);
    if (drive_phases.size() != n || detunings.size() != n || positions.size() != n) {
        throw ConfigError("drive_phases, detunings and positions must each have n_qubits entries");
    }
    if (!(gamma > 0.0)) {
        throw ConfigError("gamma must be > 0");
    }
    if (!(dephasing_rate >= 0.0)) {
        throw ConfigError("dephasing_rate must be >= 0");
    }
    if (!(rabi_amplitude >= 0.0)) {
        throw ConfigError("rabi_amplitude must be >= 0");
    }
    for (double z : positions) {
        if (!std::isfinite(z)) {
            throw ConfigError("positions must be finite");
        }
    }
}

SystemConfig SystemConfig::lattice(int n_qubits) {
    if (n_qubits < 1) {
        throw ConfigError("n_qubits must be >= 1");
    }
    SystemConfig c;
    c.n_qubits = n_qubits;
    c.drive_phases.assign(n_qubits, 0.0);
    c.detunings.assign(n_qubits, 0.0);
    c.positions.resize(n_qubits);
    const double lambda = c.wavelength();
    for (int n = 0; n < n_qubits; ++n) {
        c.positions[n] = n * lambda;
    }
    return c;
}

std::string_view to_string(PerturbationKind kind) {
    switch (kind) {
        case PerturbationKind::None: return "none";
        case PerturbationKind::Dephasing: return "dephasing";
        case PerturbationKind::DrivingPhase: return "driving_phase";
        case PerturbationKind::Separation: return "separation";
        case PerturbationKind::LinearDetuning: return "linear_detuning";
    }
    throw ConfigError("unknown perturbation kind");
}

PerturbationKind parse_perturbation_kind(std::string_view name) {
    if (name == "none") return PerturbationKind::None;
    if (name == "dephasing") return PerturbationKind::Dephasing;
    if (name == "driving_phase" || name == "phase") return PerturbationKind::DrivingPhase;
    if (name == "separation") return PerturbationKind::Separation;
    if (name == "linear_detuning" || name == "detuning") return PerturbationKind::LinearDetuning;
    throw ConfigError("unknown perturbation kind '" + std::string(name) + "'");
}

DenseOperator site_operator(int n_qubits, int site, SpinOp which) {
    require_site(n_qubits, site);
    const Index dim = Index{1} << n_qubits;
    const Index mask = site_mask(n_qubits, site);
    DenseOperator op = DenseOperator::Zero(dim, dim);
    for (Index j = 0; j < dim; ++j) {
        const bool excited = (j & mask) != 0;
        switch (which) {
            case SpinOp::Raise:
                if (!excited) op(j | mask, j) = 1.0;
                break;
            case SpinOp::Lower:
                if (excited) op(j & ~mask, j) = 1.0;
                break;
            case SpinOp::Z:
                op(j, j) = excited ? -1.0 : 1.0;
                break;
        }
    }
    return op;
}

DenseOperator site_operator(const SystemConfig& config, int site, SpinOp which) {
    return site_operator(config.n_qubits, site, which);
}

DenseOperator collective_operator(int n_qubits, SpinOp which) {
    if (n_qubits < 1) {
        throw ConfigError("n_qubits must be >= 1");
    }
    const Index dim = Index{1} << n_qubits;
    DenseOperator sum = DenseOperator::Zero(dim, dim);
    for (int n = 0; n < n_qubits; ++n) {
        sum += site_operator(n_qubits, n, which);
    }
    if (which == SpinOp::Z) {
        sum *= 0.5;
    }
    return sum;
}

DenseOperator collective_operator(const SystemConfig& config, SpinOp which) {
    return collective_operator(config.n_qubits, which);
}

SystemConfig realize(const PerturbationSpec& spec, const SystemConfig& base) {
    SystemConfig out = base;
    const int n_qubits = base.n_qubits;
    out.rabi_amplitude = 2.0 * n_qubits * base.gamma;

    switch (spec.kind) {
        case PerturbationKind::None:
        case PerturbationKind::Dephasing:
        case PerturbationKind::DrivingPhase:
        case PerturbationKind::Separation:
        case PerturbationKind::LinearDetuning:
            break;
        default:
            throw ConfigError("unknown perturbation kind");
    }
    // Zero strength must leave the reference untouched bit for bit (no -0.0 detunings).
    if (spec.strength == 0.0 || spec.kind == PerturbationKind::None) {
        return out;
    }

    switch (spec.kind) {
        case PerturbationKind::Dephasing:
            out.dephasing_rate = spec.strength;
            break;
        case PerturbationKind::DrivingPhase:
            for (int n = 0; n < n_qubits; ++n) {
                out.drive_phases[n] = kTwoPi * spec.strength * n;
            }
            break;
        case PerturbationKind::Separation: {
            const double spacing = base.wavelength() + spec.strength;
            for (int n = 0; n < n_qubits; ++n) {
                out.positions[n] = n * spacing;
            }
            break;
        }
        case PerturbationKind::LinearDetuning:
            for (int n = 0; n < n_qubits; ++n) {
                out.detunings[n] = spec.strength * (n - n_qubits / 2.0 + 0.5) * base.gamma;
            }
            break;
        case PerturbationKind::None:
            break;
    }
    return out;
}

int excitation_count(Index index) {
    return std::popcount(static_cast<unsigned long long>(index));
}

}  // namespace dicke

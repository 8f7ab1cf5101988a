#include "dicke/evolve.hpp"

#include "dicke/errors.hpp"
#include "dicke/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace dicke {

namespace {

// Dormand-Prince 5(4) tableau; the right-hand side is autonomous, so the nodes
// c_i are never needed.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// b - b*, the embedded error estimate.
constexpr std::array<double, 7> kE{71.0 / 57600,   0.0,          -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
// Continuous extension: y(t + theta h) = y + h sum_i k_i sum_j P_ij theta^(j+1).
constexpr double kP[7][4] = {
    {1.0, -8048581381.0 / 2820520608, 8663915743.0 / 2820520608, -12715105075.0 / 11282082432},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 131558114200.0 / 32700410799, -68118460800.0 / 10900136933,
     87487479700.0 / 32700410799},
    {0.0, -1754552775.0 / 470086768, 14199869525.0 / 1410260304, -10690763975.0 / 1880347072},
    {0.0, 127303824393.0 / 49829197408, -318862633887.0 / 49829197408,
     701980252875.0 / 199316789632},
    {0.0, -282668133.0 / 205662961, 2019193451.0 / 616988883, -1453857185.0 / 822651844},
    {0.0, 40617522.0 / 29380423, -110615467.0 / 29380423, 69997945.0 / 29380423},
};

double error_norm(const DenseOperator& err, const DenseOperator& y0, const DenseOperator& y1,
                  double rtol, double atol) {
    const auto scale = atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array();
    const double sum = (err.cwiseAbs().array() / scale).square().sum();
    return std::sqrt(sum / static_cast<double>(err.size()));
}

void hermitize(DenseOperator& m) {
    m = 0.5 * (m + m.adjoint()).eval();
}

}  // namespace

DenseOperator ground_state(int n_qubits) {
    if (n_qubits < 1) throw ConfigError("n_qubits must be >= 1");
    const Index dim = Index{1} << n_qubits;
    DenseOperator rho = DenseOperator::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return rho;
}

std::vector<double> linear_grid(double start, double stop, std::size_t points) {
    if (points == 0) return {};
    if (points == 1) return {start};
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    g.back() = stop;
    return g;
}

std::vector<double> log_grid(double start, double stop, std::size_t points) {
    if (!(start > 0.0) || !(stop > 0.0)) throw ConfigError("log grid bounds must be > 0");
    std::vector<double> g = linear_grid(std::log(start), std::log(stop), points);
    for (double& x : g) x = std::exp(x);
    if (!g.empty()) {
        g.front() = start;
        g.back() = stop;
    }
    return g;
}

Trajectory evolve(const MasterEquation& me, const DenseOperator& rho0, double t_max,
                  const std::vector<double>& samples, const EvolveOptions& options) {
    const Index dim = me.dim();
    if (rho0.rows() != dim || rho0.cols() != dim) {
        throw DimensionError("evolve: initial state has the wrong dimension");
    }
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be finite and >= 0");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i] >= 0.0) || samples[i] > t_max) {
            throw ConfigError("sample times must lie in [0, t_max]");
        }
        if (i > 0 && samples[i] < samples[i - 1]) throw ConfigError("sample times must be ascending");
    }

    EvolveOptions tol = options;
    if (options.stop_when_steady) {
        tol.rtol = std::min(options.rtol, 0.01 * options.steady_tolerance);
        tol.atol = std::min(options.atol, 1e-4 * options.steady_tolerance);
    }

    const double gamma = me.config().gamma;
    const double norm = me.n_qubits() * gamma;
    const ObservableEvaluator evaluate(me);
    Trajectory traj;
    traj.times.reserve(samples.size());

    auto record = [&](double tau, const DenseOperator& rho) {
        const Observables o = evaluate(rho);
        traj.times.push_back(tau);
        traj.gamma0.push_back(o.gamma0 / norm);
        traj.gamma_sr.push_back(o.gamma_sr / norm);
        traj.gamma_tot.push_back(o.gamma_tot / norm);
        traj.pop_smax.push_back(o.pop_smax);
        if (options.observer) options.observer(tau, rho);
    };

    // Integrate in t = tau / Gamma.
    const double t_end = t_max / gamma;
    double t = 0.0;
    DenseOperator y = rho0;
    hermitize(y);
    std::size_t next_sample = 0;
    while (next_sample < samples.size() && samples[next_sample] == 0.0) {
        record(0.0, y);
        ++next_sample;
    }

    std::array<DenseOperator, 7> k;
    for (auto& ki : k) ki.resize(dim, dim);
    me.apply(y, k[0]);

    auto norm_of = [&](const DenseOperator& m) {
        return std::sqrt(m.cwiseAbs2().sum() / static_cast<double>(m.size()));
    };

    // Initial step (Hairer, Norsett & Wanner II.4).
    double h;
    {
        const DenseOperator scale =
            (tol.atol + tol.rtol * y.cwiseAbs().array()).matrix().cast<Complex>();
        const double d0 = norm_of(y.cwiseQuotient(scale));
        const double d1 = norm_of(k[0].cwiseQuotient(scale));
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        if (!std::isfinite(h0)) h0 = 1e-6;
        h0 = std::min(h0, std::max(t_end, 1e-12));
        const DenseOperator y1 = y + h0 * k[0];
        const DenseOperator f1 = me.apply(y1);
        const double d2 = norm_of((f1 - k[0]).cwiseQuotient(scale)) / h0;
        const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                   : std::pow(0.01 / std::max(d1, d2), 1.0 / 5);
        h = std::min(100 * h0, h1);
        if (!std::isfinite(h)) h = h0;
    }

    constexpr double kSafety = 0.9;
    constexpr double kBeta = 0.04;  // Lund stabilization
    constexpr double kMinFactor = 0.2;
    constexpr double kMaxFactor = 5.0;
    double err_old = 1e-4;
    bool last_rejected = false;
    long steps = 0;

    DenseOperator y_new(dim, dim);
    DenseOperator stage(dim, dim);
    DenseOperator err(dim, dim);

    while (t < t_end) {
        if (++steps > options.max_steps) {
            throw IntegrationError("maximum number of steps exceeded", t * gamma);
        }
        const double h_min = 1e-14 * std::max(1.0, std::abs(t));
        if (!(h >= h_min)) {
            throw IntegrationError("step size underflow at tau=" + std::to_string(t * gamma), t * gamma);
        }
        if (t + h > t_end) h = t_end - t;

        for (int s = 1; s < 7; ++s) {
            stage = y;
            for (int j = 0; j < s; ++j) {
                if (kA[s][j] != 0.0) stage += (h * kA[s][j]) * k[j];
            }
            if (s == 6) y_new = stage;
            me.apply(stage, k[s]);
        }
        err.setZero();
        for (int i = 0; i < 7; ++i) {
            if (kE[i] != 0.0) err += (h * kE[i]) * k[i];
        }
        const double e = error_norm(err, y, y_new, tol.rtol, tol.atol);

        if (!std::isfinite(e)) {
            h *= kMinFactor;
            last_rejected = true;
            ++traj.rejected_steps;
            continue;
        }
        const double fac11 = std::pow(std::max(e, 1e-300), 0.2 - kBeta * 0.75);
        if (e <= 1.0) {
            double fac = fac11 / std::pow(err_old, kBeta);
            fac = std::clamp(fac / kSafety, 1.0 / kMaxFactor, 1.0 / kMinFactor);
            double h_next = h / fac;
            if (last_rejected) h_next = std::min(h_next, h);
            err_old = std::max(e, 1e-4);
            last_rejected = false;
            ++traj.accepted_steps;

            const double t_new = (t + h >= t_end) ? t_end : t + h;
            // Dense output for every sample inside (t, t_new].
            while (next_sample < samples.size() && samples[next_sample] / gamma <= t_new) {
                const double theta = std::clamp((samples[next_sample] / gamma - t) / h, 0.0, 1.0);
                DenseOperator ys = y;
                for (int i = 0; i < 7; ++i) {
                    double b = 0.0;
                    double p = theta;
                    for (int j = 0; j < 4; ++j) {
                        b += kP[i][j] * p;
                        p *= theta;
                    }
                    if (b != 0.0) ys += (h * b) * k[i];
                }
                hermitize(ys);
                record(samples[next_sample], ys);
                ++next_sample;
            }

            y = y_new;
            hermitize(y);
            // L preserves Hermiticity, so f(herm y) = herm f(y). Without this the
            // anti-Hermitian part of the FSAL derivative is re-injected every step.
            k[0] = k[6];
            hermitize(k[0]);
            t = t_new;

            if (options.stop_when_steady &&
                traj.accepted_steps % options.steady_check_interval == 0) {
                if (k[0].norm() < options.steady_tolerance * y.norm()) {
                    traj.steady_at = t * gamma;
                    while (next_sample < samples.size()) {
                        record(samples[next_sample], y);
                        ++next_sample;
                    }
                    break;
                }
            }
            if (t >= t_end) break;
            h = h_next;
        } else {
            h /= std::min(1.0 / kMinFactor, fac11 / kSafety);
            last_rejected = true;
            ++traj.rejected_steps;
        }
    }
    traj.final_rho = y;
    return traj;
}

}  // namespace dicke

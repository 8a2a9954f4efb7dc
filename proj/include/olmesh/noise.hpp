#pragma once

// Monte-Carlo infidelity estimation under Z-phase noise and power-law fits
// of the form 1 - F = C N^k sigma^b.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "olmesh/errors.hpp"
#include "olmesh/native_gates.hpp"
#include "olmesh/noise_model.hpp"
#include "olmesh/numerics.hpp"
#include "olmesh/rng.hpp"
#include "olmesh/sim.hpp"

namespace olmesh {

/// Infidelity convention.
enum class InfidelityMetric {
    Overlap,  // 1 - |<ideal|noisy>|^2
    PerMode,  // (1 - |<ideal|noisy>|^2) / N
};

struct InfidelityStats {
    double mean = 0.0;
    double std = 0.0;
    double mean_per_mode = 0.0;
    double std_per_mode = 0.0;
    std::size_t n_states = 0;
    std::size_t n_noise = 0;

    double mean_for(InfidelityMetric m) const { return m == InfidelityMetric::Overlap ? mean : mean_per_mode; }
    double std_for(InfidelityMetric m) const { return m == InfidelityMetric::Overlap ? std : std_per_mode; }
};

namespace detail {

struct RunningMoments {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }
    double sample_std() const { return count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1)) : 0.0; }
};

}  // namespace detail

/// Average infidelity over random input states and independent noise
/// realizations. Input states come from `stream.substream(0)`, noise from
/// `stream.substream(1)`, so two calls with the same stream see the same
/// states and the same standard-normal draws whatever sigma and epsilon are.
inline InfidelityStats monte_carlo_infidelity(const PulseSchedule& target, const NoiseModel& model, std::size_t n_states,
                                              std::size_t n_noise, const Rng& stream) {
    if (n_states == 0 || n_noise == 0) throw ValidationError("monte_carlo_infidelity: counts must be positive");
    model.validate();
    validate_schedule(target);

    const Rng state_streams = stream.substream(0);
    const Rng noise_streams = stream.substream(1);
    const double n = static_cast<double>(target.dim);
    detail::RunningMoments overlap;
    detail::RunningMoments per_mode;
    for (std::size_t s = 0; s < n_states; ++s) {
        Rng state_rng = state_streams.substream(s);
        const StateVector psi = random_state(target.dim, state_rng);
        const StateVector ideal = apply_schedule(target, psi);
        for (std::size_t k = 0; k < n_noise; ++k) {
            ExecutionOptions opt;
            opt.noise = &model;
            opt.rng = noise_streams.substream(s * n_noise + k);
            const StateVector noisy = apply_schedule(target, psi, opt);
            const double infidelity = 1.0 - fidelity(ideal, noisy);
            overlap.add(infidelity);
            per_mode.add(infidelity / n);
        }
    }
    return {overlap.mean, overlap.sample_std(), per_mode.mean, per_mode.sample_std(), n_states, n_noise};
}

/// Convenience overload seeding the stream from model.seed.
inline InfidelityStats monte_carlo_infidelity(const PulseSchedule& target, const NoiseModel& model, std::size_t n_states,
                                              std::size_t n_noise) {
    return monte_carlo_infidelity(target, model, n_states, n_noise, Rng(model.seed, 0));
}

struct SweepTarget {
    std::string label;
    PulseSchedule schedule;
};

struct SweepRow {
    std::string label;
    std::size_t n = 0;
    double sigma = 0.0;
    double epsilon = 0.0;
    InfidelityStats stats;

    double mean(InfidelityMetric m) const { return stats.mean_for(m); }
};

struct SweepConfig {
    std::vector<double> sigmas;
    std::vector<double> epsilons;
    std::size_t n_states = 30;
    std::size_t n_noise = 30;
    std::uint64_t seed = 0;
    CrosstalkSource crosstalk_source = CrosstalkSource::Noisy;
};

using SweepResult = std::vector<SweepRow>;

/// Evaluates every (target, epsilon, sigma) cell. Target i draws from stream
/// (seed, i) in every cell, so cells of one target share input states and
/// noise draws. Rows are sorted by (label, N, epsilon, sigma); targets with
/// equal label and N keep their input order.
inline SweepResult sweep(const std::vector<SweepTarget>& targets, const SweepConfig& cfg) {
    if (targets.empty() || cfg.sigmas.empty() || cfg.epsilons.empty()) {
        throw ValidationError("sweep: targets, sigmas and epsilons must be non-empty");
    }
    SweepResult rows;
    rows.reserve(targets.size() * cfg.sigmas.size() * cfg.epsilons.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const Rng stream(cfg.seed, t);
        for (double eps : cfg.epsilons) {
            for (double sigma : cfg.sigmas) {
                NoiseModel model{sigma, eps, cfg.seed, cfg.crosstalk_source};
                SweepRow row;
                row.label = targets[t].label;
                row.n = targets[t].schedule.dim;
                row.sigma = sigma;
                row.epsilon = eps;
                row.stats = monte_carlo_infidelity(targets[t].schedule, model, cfg.n_states, cfg.n_noise, stream);
                rows.push_back(std::move(row));
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.label != b.label) return a.label < b.label;
        if (a.n != b.n) return a.n < b.n;
        if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
        return a.sigma < b.sigma;
    });
    return rows;
}

struct PowerLawFit {
    double c = 0.0;
    double k = 0.0;
    double b = 0.0;
    double residual = 0.0;  // RMS in log space
    std::size_t rows_used = 0;
};

/// One observation for a power-law fit.
struct FitPoint {
    double n = 0.0;
    double sigma = 0.0;
    double infidelity = 0.0;
};

/// Least squares on log(1-F) = log C + k log N + b log sigma. Points with
/// non-positive infidelity or sigma are dropped.
inline PowerLawFit fit_power_law(const std::vector<FitPoint>& points) {
    std::vector<FitPoint> usable;
    std::set<double> ns;
    std::set<double> sigmas;
    for (const auto& p : points) {
        if (p.infidelity > 0.0 && p.sigma > 0.0 && p.n > 0.0 && std::isfinite(p.infidelity)) {
            usable.push_back(p);
            ns.insert(p.n);
            sigmas.insert(p.sigma);
        }
    }
    if (usable.size() < 3 || ns.size() < 2 || sigmas.size() < 2) {
        throw InsufficientDataError("fit_power_law: need >= 3 positive rows spanning >= 2 values of N and of sigma (have " +
                                    std::to_string(usable.size()) + " rows)");
    }
    const auto m = static_cast<Eigen::Index>(usable.size());
    Eigen::MatrixXd a(m, 3);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& p = usable[static_cast<std::size_t>(i)];
        a(i, 0) = 1.0;
        a(i, 1) = std::log(p.n);
        a(i, 2) = std::log(p.sigma);
        y(i) = std::log(p.infidelity);
    }
    const Eigen::Vector3d x = a.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd r = a * x - y;
    PowerLawFit fit;
    fit.c = std::exp(x(0));
    fit.k = x(1);
    fit.b = x(2);
    fit.residual = std::sqrt(r.squaredNorm() / static_cast<double>(m));
    fit.rows_used = usable.size();
    return fit;
}

/// Fits the epsilon = 0 rows of a sweep under the chosen metric.
inline PowerLawFit fit_power_law(const SweepResult& rows, InfidelityMetric metric = InfidelityMetric::Overlap) {
    std::vector<FitPoint> points;
    for (const auto& row : rows) {
        if (row.epsilon != 0.0) continue;
        points.push_back({static_cast<double>(row.n), row.sigma, row.mean(metric)});
    }
    return fit_power_law(points);
}

}  // namespace olmesh

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "olmesh/errors.hpp"
#include "olmesh/rng.hpp"

namespace olmesh {

/// Which neighbor angle leaks through crosstalk.
enum class CrosstalkSource {
    Noisy,  // the angle actually applied after multiplicative noise
    Ideal,  // the intended angle
};

/// Error channels on local Z phases. Tunneling pulses are treated as exact.
struct NoiseModel {
    double sigma = 0.0;    // std. dev. of the relative angle error delta
    double epsilon = 0.0;  // nearest-neighbor crosstalk strength
    std::uint64_t seed = 0;
    CrosstalkSource crosstalk_source = CrosstalkSource::Noisy;

    void validate() const {
        if (!std::isfinite(sigma) || sigma < 0.0) throw ValidationError("NoiseModel: sigma must be finite and >= 0");
        if (!std::isfinite(epsilon) || epsilon < 0.0) {
            throw ValidationError("NoiseModel: epsilon must be finite and >= 0");
        }
    }

    bool is_noiseless() const noexcept { return sigma == 0.0 && epsilon == 0.0; }
};

/// Apply multiplicative noise then nearest-neighbor crosstalk to one layer of
/// per-site phases:
///     applied_i = intended_i (1 + delta_i),   delta_i ~ N(0, sigma^2)
///     out_i     = applied_i + epsilon (applied_{i-1} + applied_{i+1})
/// with open boundaries. A zero intended phase stays exactly zero before
/// crosstalk, and one normal deviate is consumed per site regardless.
inline std::vector<double> perturb_phases(std::span<const double> intended, const NoiseModel& model, Rng& rng) {
    const std::size_t n = intended.size();
    std::vector<double> applied(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = model.sigma > 0.0 ? model.sigma * rng.normal() : 0.0;
        applied[i] = intended[i] * (1.0 + delta);
    }
    if (model.epsilon == 0.0) return applied;

    const std::span<const double> leak_from =
        model.crosstalk_source == CrosstalkSource::Noisy ? std::span<const double>(applied) : intended;
    std::vector<double> out(applied);
    for (std::size_t i = 0; i < n; ++i) {
        double leak = 0.0;
        if (i > 0) leak += leak_from[i - 1];
        if (i + 1 < n) leak += leak_from[i + 1];
        out[i] += model.epsilon * leak;
    }
    return out;
}

}  // namespace olmesh

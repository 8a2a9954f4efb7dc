#pragma once

// Single-particle execution of pulse schedules and Givens circuits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "olmesh/clements.hpp"
#include "olmesh/errors.hpp"
#include "olmesh/native_gates.hpp"
#include "olmesh/noise_model.hpp"
#include "olmesh/numerics.hpp"
#include "olmesh/rng.hpp"

namespace olmesh {

struct ExecutionOptions {
    const NoiseModel* noise = nullptr;  // null: noiseless, exactly linear
    Rng rng{};
    bool record_trace = false;
};

/// Site probabilities after each brick-wall layer, starting with the input.
using ProbabilityTrace = std::vector<std::vector<double>>;

struct ExecutionResult {
    StateVector state;
    ProbabilityTrace trace;
};

namespace detail {

inline std::vector<double> probabilities_of(const ComplexVector& v) {
    std::vector<double> p(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(v(i));
    return p;
}

// Runs the schedule on raw amplitudes in place.
inline void run_ops(const PulseSchedule& s, ComplexVector& v, ExecutionOptions& opt, ProbabilityTrace* trace) {
    const auto dim = s.dim;
    std::optional<Parity> active;
    bool layer_open = false;
    for (const auto& op : s.ops) {
        if (const auto* d = std::get_if<Dimerize>(&op)) {
            if (trace && layer_open) trace->push_back(probabilities_of(v));
            active = d->parity;
            layer_open = true;
        } else if (const auto* x = std::get_if<GlobalX>(&op)) {
            if (!active) throw ValidationError("apply_schedule: global_x before any dimerize");
            const double c = std::cos(x->angle / 2.0);
            const Complex is(0.0, -std::sin(x->angle / 2.0));
            for (std::size_t n = *active == Parity::Even ? 0 : 1; n + 1 < dim; n += 2) {
                const auto i = static_cast<Eigen::Index>(n);
                const Complex a = v(i);
                const Complex b = v(i + 1);
                v(i) = c * a + is * b;
                v(i + 1) = is * a + c * b;
            }
        } else {
            const auto& z = std::get<LocalZ>(op);
            if (opt.noise && !opt.noise->is_noiseless()) {
                const auto phases = perturb_phases(z.phases, *opt.noise, opt.rng);
                for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) *= std::polar(1.0, phases[i]);
            } else {
                for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) *= std::polar(1.0, z.phases[i]);
            }
        }
    }
    if (trace) trace->push_back(probabilities_of(v));
}

}  // namespace detail

inline ExecutionResult run_schedule(const PulseSchedule& s, const StateVector& psi, ExecutionOptions opt = {}) {
    validate_schedule(s);
    if (psi.dim() != s.dim) {
        throw DimensionError("apply_schedule: state has dimension " + std::to_string(psi.dim()) + ", schedule " +
                             std::to_string(s.dim));
    }
    ComplexVector v = psi.amplitudes();
    ProbabilityTrace trace;
    if (opt.record_trace) trace.push_back(psi.probabilities());
    detail::run_ops(s, v, opt, opt.record_trace ? &trace : nullptr);
    return {StateVector(std::move(v)), std::move(trace)};
}

inline StateVector apply_schedule(const PulseSchedule& s, const StateVector& psi, ExecutionOptions opt = {}) {
    opt.record_trace = false;
    return run_schedule(s, psi, std::move(opt)).state;
}

/// Noiseless linear action on arbitrary (not necessarily normalized) amplitudes.
inline ComplexVector apply_schedule_linear(const PulseSchedule& s, ComplexVector v) {
    validate_schedule(s);
    if (static_cast<std::size_t>(v.size()) != s.dim) throw DimensionError("apply_schedule_linear: dimension mismatch");
    ExecutionOptions opt;
    detail::run_ops(s, v, opt, nullptr);
    return v;
}

/// Columns are the noiseless images of the basis states. The schedule's
/// global_phase is not applied.
inline ComplexMatrix schedule_to_unitary(const PulseSchedule& s) {
    validate_schedule(s);
    const auto n = static_cast<Eigen::Index>(s.dim);
    ComplexMatrix u(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        ComplexVector e = ComplexVector::Zero(n);
        e(j) = 1.0;
        ExecutionOptions opt;
        detail::run_ops(s, e, opt, nullptr);
        u.col(j) = e;
    }
    return u;
}

/// Runs a circuit gate by gate (reference path, no native lowering).
inline StateVector apply_circuit(const GivensCircuit& c, const StateVector& psi) {
    if (psi.dim() != c.dim) throw DimensionError("apply_circuit: dimension mismatch");
    ComplexVector v = psi.amplitudes();
    for (const auto& g : c.gates) {
        if (g.mode_low + 1 >= c.dim) throw IndexError("apply_circuit: gate mode out of range");
        detail::apply_rows(v, g.mode_low, t_block(g.theta, g.phi));
    }
    const Complex global = std::polar(1.0, c.global_phase);
    for (std::size_t i = 0; i < c.dim; ++i) v(static_cast<Eigen::Index>(i)) *= global * std::polar(1.0, c.diagonal_phases.at(i));
    return StateVector(std::move(v));
}

/// |<ideal|noisy>|^2
inline double fidelity(const StateVector& ideal, const StateVector& noisy) {
    if (ideal.dim() != noisy.dim()) throw DimensionError("fidelity: dimension mismatch");
    return std::min(1.0, std::norm(ideal.amplitudes().dot(noisy.amplitudes())));
}

}  // namespace olmesh

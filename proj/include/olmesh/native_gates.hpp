#pragma once

// Lowering of Givens circuits to superlattice-native operations.
//
// Native gates on a dimer (n, n+1):
//     X(a) = [[cos a/2, -i sin a/2], [-i sin a/2, cos a/2]]   (global tunneling)
//     Z(t) = diag(1, e^{i t})                                   (local offset on n+1)
// and every two-mode rotation factors as
//     T(theta, phi) = e^{i alpha} X(3pi/2) Z(2 theta) X(pi/2) Z(-phi),
//     alpha = phi - theta + pi.

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "olmesh/clements.hpp"
#include "olmesh/errors.hpp"
#include "olmesh/numerics.hpp"

namespace olmesh {

enum class Parity { Even, Odd };

inline Parity parity_of(std::size_t mode_low) { return mode_low % 2 == 0 ? Parity::Even : Parity::Odd; }
inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

inline Eigen::Matrix2cd native_x(double angle) {
    const double c = std::cos(angle / 2.0);
    const Complex s(0.0, -std::sin(angle / 2.0));
    Eigen::Matrix2cd m;
    m << c, s, s, c;
    return m;
}

inline Eigen::Matrix2cd native_z(double angle) {
    Eigen::Matrix2cd m;
    m << 1.0, 0.0, 0.0, std::polar(1.0, angle);
    return m;
}

/// diag(e^{-i xi/2}, e^{i xi/2})
inline Eigen::Matrix2cd symmetric_z(double xi) {
    Eigen::Matrix2cd m;
    m << std::polar(1.0, -xi / 2.0), 0.0, 0.0, std::polar(1.0, xi / 2.0);
    return m;
}

/// Phase-free native block X(3pi/2) Z(2 theta) X(pi/2) Z(-phi).
inline Eigen::Matrix2cd native_block(double theta, double phi) {
    return native_x(3.0 * kPi / 2.0) * native_z(2.0 * theta) * native_x(kPi / 2.0) * native_z(-phi);
}

struct NativeGateParams {
    double theta = 0.0;
    double phi = 0.0;
    double alpha = 0.0;  // scalar prefactor: T = e^{i alpha} native_block(theta, phi)

    Eigen::Matrix2cd assemble() const { return std::polar(1.0, alpha) * native_block(theta, phi); }
};

inline NativeGateParams zxzx_params(double theta, double phi) {
    return {theta, phi, phi - theta + kPi};
}

struct CommutedPhase {
    double left_a = 0.0;  // phase on the lower mode
    double left_b = 0.0;  // phase on the upper mode
    double theta = 0.0;
    double phi = 0.0;
};

/// Factor a 2x2 unitary as diag(e^{i a}, e^{i b}) native_block(theta, phi).
///
/// native_block(theta, phi) = [[-e^{i theta} c,  e^{i(theta - phi)} s],
///                             [-e^{i theta} s, -e^{i(theta - phi)} c]]
/// with c = cos theta, s = sin theta; theta is taken in [0, pi/2].
/// Zero off-diagonal fixes phi = 0 and zero diagonal fixes theta = pi/2, so
/// identity and SWAP blocks keep representatives with vanishing Z angles where
/// possible.
inline CommutedPhase commute_phase(const Eigen::Matrix2cd& m, double unitarity_tol = 1e-12) {
    const double dev = (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (dev > unitarity_tol) throw UnitarityError("commute_phase: block is not unitary", dev);

    constexpr double kNegligible = 1e-14;
    double c = std::abs(m(0, 0));
    double s = std::abs(m(0, 1));
    if (s < kNegligible) s = 0.0;
    if (c < kNegligible) c = 0.0;

    CommutedPhase out;
    out.theta = std::atan2(s, c);
    if (s == 0.0) {
        out.phi = 0.0;
        out.left_a = std::arg(m(0, 0)) + kPi - out.theta;
        out.left_b = std::arg(m(1, 1)) + kPi - out.theta;
    } else if (c == 0.0) {
        out.phi = 0.0;
        out.left_a = std::arg(m(0, 1)) - out.theta;
        out.left_b = std::arg(m(1, 0)) + kPi - out.theta;
    } else {
        out.left_a = std::arg(m(0, 0)) + kPi - out.theta;
        out.phi = out.left_a + out.theta - std::arg(m(0, 1));
        if (c >= s) {
            out.left_b = std::arg(m(1, 1)) + kPi - out.theta + out.phi;
        } else {
            out.left_b = std::arg(m(1, 0)) + kPi - out.theta;
        }
    }
    out.theta = wrap_positive(out.theta);
    out.phi = wrap_positive(out.phi);
    out.left_a = wrap_symmetric(out.left_a);
    out.left_b = wrap_symmetric(out.left_b);
    return out;
}

// ---------------------------------------------------------------------------
// Pulse schedules

struct Dimerize {
    Parity parity = Parity::Even;
    friend bool operator==(const Dimerize&, const Dimerize&) = default;
};

struct GlobalX {
    double angle = 0.0;
    friend bool operator==(const GlobalX&, const GlobalX&) = default;
};

struct LocalZ {
    std::vector<double> phases;  // per site
    friend bool operator==(const LocalZ&, const LocalZ&) = default;
};

using ScheduleOp = std::variant<Dimerize, GlobalX, LocalZ>;

struct PulseSchedule {
    std::size_t dim = 0;
    std::vector<ScheduleOp> ops;
    double global_phase = 0.0;  // metadata; never applied
};

/// Checks that every LocalZ has `dim` finite phases and that a Dimerize
/// precedes the first GlobalX.
inline void validate_schedule(const PulseSchedule& s) {
    if (s.dim == 0) throw DimensionError("PulseSchedule: dimension must be positive");
    bool dimerized = false;
    for (std::size_t k = 0; k < s.ops.size(); ++k) {
        const auto& op = s.ops[k];
        if (std::holds_alternative<Dimerize>(op)) {
            dimerized = true;
        } else if (const auto* x = std::get_if<GlobalX>(&op)) {
            if (!dimerized) throw ValidationError("PulseSchedule: global_x at op " + std::to_string(k) + " before any dimerize");
            if (!std::isfinite(x->angle)) throw ValidationError("PulseSchedule: non-finite global_x angle");
        } else {
            const auto& z = std::get<LocalZ>(op);
            if (z.phases.size() != s.dim) {
                throw DimensionError("PulseSchedule: local_z at op " + std::to_string(k) + " has " +
                                     std::to_string(z.phases.size()) + " phases, expected " + std::to_string(s.dim));
            }
            for (double p : z.phases) {
                if (!std::isfinite(p)) throw ValidationError("PulseSchedule: non-finite local_z phase");
            }
        }
    }
}

/// Lower a circuit to a pulse schedule, streaming every gate's scalar prefactor
/// (and any phases already pushed out of earlier gates) leftwards into one
/// trailing diagonal layer.
///
/// Each brick-wall layer becomes
///     Dimerize(p), LocalZ(-phi'), GlobalX(pi/2), LocalZ(2 theta'), GlobalX(3pi/2).
/// Dimers of the active parity that carry no gate receive an identity gate so
/// the global tunneling pulses act trivially on them.
inline PulseSchedule absorb_phases(const GivensCircuit& c) {
    if (c.dim == 0) throw DimensionError("absorb_phases: dimension must be positive");
    if (c.diagonal_phases.size() != c.dim) throw DimensionError("absorb_phases: diagonal length mismatch");

    // Validate layering: per mode, layers strictly increase in application order.
    std::vector<long> last(c.dim, -1);
    std::map<std::size_t, std::vector<const GivensGate*>> layers;
    for (const auto& g : c.gates) {
        if (g.mode_low + 1 >= c.dim) throw IndexError("absorb_phases: gate mode out of range");
        const auto layer = static_cast<long>(g.layer);
        if (layer <= last[g.mode_low] || layer <= last[g.mode_low + 1]) {
            throw ValidationError("absorb_phases: gate layers do not respect application order");
        }
        last[g.mode_low] = last[g.mode_low + 1] = layer;
        layers[g.layer].push_back(&g);
    }

    PulseSchedule out;
    out.dim = c.dim;
    out.global_phase = c.global_phase;
    std::vector<double> lambda(c.dim, 0.0);

    for (const auto& [index, gates] : layers) {
        const Parity parity = parity_of(gates.front()->mode_low);
        std::vector<const GivensGate*> by_pair(c.dim, nullptr);
        for (const auto* g : gates) {
            if (parity_of(g->mode_low) != parity) {
                throw ConsistencyError("absorb_phases: layer " + std::to_string(index) + " mixes dimer parities");
            }
            by_pair[g->mode_low] = g;
        }

        std::vector<double> first_z(c.dim, 0.0);
        std::vector<double> second_z(c.dim, 0.0);
        for (std::size_t n = parity == Parity::Even ? 0 : 1; n + 1 < c.dim; n += 2) {
            const double theta = by_pair[n] ? by_pair[n]->theta : 0.0;
            const double phi = by_pair[n] ? by_pair[n]->phi : 0.0;
            Eigen::Matrix2cd m = t_block(theta, phi);
            m.col(0) *= std::polar(1.0, lambda[n]);
            m.col(1) *= std::polar(1.0, lambda[n + 1]);
            const CommutedPhase cp = commute_phase(m, 1e-10);
            lambda[n] = cp.left_a;
            lambda[n + 1] = cp.left_b;
            first_z[n + 1] = wrap_positive(-cp.phi);
            second_z[n + 1] = wrap_positive(2.0 * cp.theta);
        }
        out.ops.emplace_back(Dimerize{parity});
        out.ops.emplace_back(LocalZ{std::move(first_z)});
        out.ops.emplace_back(GlobalX{kPi / 2.0});
        out.ops.emplace_back(LocalZ{std::move(second_z)});
        out.ops.emplace_back(GlobalX{3.0 * kPi / 2.0});
    }

    std::vector<double> final_z(c.dim);
    for (std::size_t i = 0; i < c.dim; ++i) final_z[i] = wrap_positive(c.diagonal_phases[i] + lambda[i]);
    out.ops.emplace_back(LocalZ{std::move(final_z)});
    return out;
}

}  // namespace olmesh

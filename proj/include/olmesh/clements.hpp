#pragma once

// Rectangular-mesh (Clements) decomposition of an N x N unitary into
// N(N-1)/2 adjacent two-mode rotations and a diagonal phase layer.
//
// Gate convention on modes (n, n+1):
//
//     T(theta, phi) = [[e^{i phi} cos theta, -sin theta],
//                      [e^{i phi} sin theta,  cos theta]]
//
// A circuit represents
//     U = e^{i global_phase} diag(e^{i diagonal}) T_last ... T_first
// with gates stored in application order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "olmesh/errors.hpp"
#include "olmesh/numerics.hpp"

namespace olmesh {

struct GivensGate {
    std::size_t mode_low = 0;  // acts on (mode_low, mode_low + 1)
    double theta = 0.0;
    double phi = 0.0;
    std::size_t layer = 0;

    friend bool operator==(const GivensGate&, const GivensGate&) = default;
};

struct GivensCircuit {
    std::size_t dim = 0;
    std::vector<GivensGate> gates;      // application order
    std::vector<double> diagonal_phases;
    double global_phase = 0.0;

    /// Number of brick-wall layers (max layer + 1), or 0 for an empty circuit.
    std::size_t depth() const {
        std::size_t d = 0;
        for (const auto& g : gates) d = std::max(d, g.layer + 1);
        return d;
    }
};

/// 2x2 block of T(theta, phi).
inline Eigen::Matrix2cd t_block(double theta, double phi) {
    const Complex e = std::polar(1.0, phi);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix2cd b;
    b << e * c, -s, e * s, c;
    return b;
}

/// Full N x N embedding of T(theta, phi) on modes (n, n+1).
inline ComplexMatrix t_matrix(std::size_t n, double theta, double phi, std::size_t dim) {
    if (dim < 2 || n + 1 >= dim) {
        throw IndexError("t_matrix: mode " + std::to_string(n) + " invalid for dimension " + std::to_string(dim));
    }
    ComplexMatrix m = ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.block(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), 2, 2) = t_block(theta, phi);
    return m;
}

namespace detail {

// Left-multiply rows (n, n+1) of m by a 2x2 block.
template <class Matrix>
void apply_rows(Matrix& m, std::size_t n, const Eigen::Matrix2cd& b) {
    const auto r0 = static_cast<Eigen::Index>(n);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const Complex x = m(r0, j);
        const Complex y = m(r0 + 1, j);
        m(r0, j) = b(0, 0) * x + b(0, 1) * y;
        m(r0 + 1, j) = b(1, 0) * x + b(1, 1) * y;
    }
}

// Right-multiply columns (n, n+1) of m by a 2x2 block.
template <class Matrix>
void apply_cols(Matrix& m, std::size_t n, const Eigen::Matrix2cd& b) {
    const auto c0 = static_cast<Eigen::Index>(n);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const Complex x = m(i, c0);
        const Complex y = m(i, c0 + 1);
        m(i, c0) = x * b(0, 0) + y * b(1, 0);
        m(i, c0 + 1) = x * b(0, 1) + y * b(1, 1);
    }
}

struct RawRotation {
    std::size_t n;
    double theta;
    double phi;
};

// Angles for right-multiplication by T^dagger on columns (n, n+1) that zero
// the entry a = m(r, n); b = m(r, n+1). Condition: a e^{-i phi} cos - b sin = 0.
inline RawRotation null_from_right(std::size_t n, Complex a, Complex b) {
    if (std::abs(a) == 0.0) return {n, 0.0, 0.0};
    if (std::abs(b) == 0.0) return {n, kPi / 2.0, 0.0};
    return {n, std::atan2(std::abs(a), std::abs(b)), wrap_positive(std::arg(a) - std::arg(b))};
}

// Angles for left-multiplication by T on rows (n, n+1) that zero the entry
// b = m(n+1, c); a = m(n, c). Condition: e^{i phi} sin a + cos b = 0.
inline RawRotation null_from_left(std::size_t n, Complex a, Complex b) {
    if (std::abs(b) == 0.0) return {n, 0.0, 0.0};
    if (std::abs(a) == 0.0) return {n, kPi / 2.0, 0.0};
    return {n, std::atan2(std::abs(b), std::abs(a)), wrap_positive(std::arg(b) - std::arg(a) + kPi)};
}

inline void check_drift(const ComplexMatrix& work, const char* stage) {
    const double drift = unitarity_deviation(work);
    if (drift > 1e-8) throw UnitarityError(std::string("decompose: working matrix drifted during ") + stage, drift);
}

}  // namespace detail

/// ASAP layering: each gate goes one layer after the latest earlier gate that
/// shares a mode with it.
inline std::vector<GivensGate> schedule_layers(std::vector<GivensGate> gates) {
    std::size_t modes = 0;
    for (const auto& g : gates) modes = std::max(modes, g.mode_low + 2);
    std::vector<long> last(modes, -1);
    for (auto& g : gates) {
        const long prev = std::max(last[g.mode_low], last[g.mode_low + 1]);
        g.layer = static_cast<std::size_t>(prev + 1);
        last[g.mode_low] = last[g.mode_low + 1] = static_cast<long>(g.layer);
    }
    return gates;
}

/// U = e^{i global} diag(e^{i d}) T_last ... T_first.
inline ComplexMatrix reconstruct(const GivensCircuit& c) {
    if (c.dim == 0) throw DimensionError("reconstruct: dimension must be positive");
    if (c.diagonal_phases.size() != c.dim) {
        throw DimensionError("reconstruct: diagonal has " + std::to_string(c.diagonal_phases.size()) +
                             " phases for dimension " + std::to_string(c.dim));
    }
    const auto n = static_cast<Eigen::Index>(c.dim);
    ComplexMatrix m = ComplexMatrix::Identity(n, n);
    for (const auto& g : c.gates) {
        if (g.mode_low + 1 >= c.dim) {
            throw IndexError("reconstruct: gate on mode " + std::to_string(g.mode_low) + " out of range for dimension " +
                             std::to_string(c.dim));
        }
        detail::apply_rows(m, g.mode_low, t_block(g.theta, g.phi));
    }
    const Complex global = std::polar(1.0, c.global_phase);
    for (Eigen::Index i = 0; i < n; ++i) m.row(i) *= global * std::polar(1.0, c.diagonal_phases[static_cast<std::size_t>(i)]);
    return m;
}

/// Decompose a unitary into a Clements mesh.
///
/// Sub-diagonals are cleared in a snake: even-indexed ones by column mixing
/// (U <- U T^dagger), odd-indexed ones by row mixing (U <- T U). The row
/// rotations are then moved through the residual diagonal with
/// T^dagger D = D' T(theta, phi'), leaving D' T'_1 ... T'_k R_p ... R_1.
inline GivensCircuit decompose(const ComplexMatrix& u, double unitarity_tol = kUnitarityTol) {
    require_square(u, "decompose");
    if (u.rows() == 0) throw DimensionError("decompose: empty matrix");
    if (!all_finite(u)) throw ValidationError("decompose: non-finite entry");
    const double dev = unitarity_deviation(u);
    if (dev > unitarity_tol) throw UnitarityError("decompose: input is not unitary", dev);

    const auto dim = static_cast<std::size_t>(u.rows());
    const auto N = static_cast<long>(dim);
    ComplexMatrix work = u;
    std::vector<detail::RawRotation> right;  // R_1, R_2, ... in nulling order
    std::vector<detail::RawRotation> left;   // L_1, L_2, ...

    constexpr double kNullTol = 1e-10;
    for (long diag = 0; diag + 1 < N; ++diag) {
        if (diag % 2 == 0) {
            for (long j = 0; j <= diag; ++j) {
                const long row = N - 1 - j;
                const long col = diag - j;
                const auto rot = detail::null_from_right(static_cast<std::size_t>(col), work(row, col), work(row, col + 1));
                detail::apply_cols(work, rot.n, t_block(rot.theta, rot.phi).adjoint());
                if (std::abs(work(row, col)) > kNullTol) {
                    throw ConsistencyError("decompose: failed to null entry (" + std::to_string(row) + "," +
                                           std::to_string(col) + ")");
                }
                work(row, col) = 0.0;
                right.push_back(rot);
            }
        } else {
            for (long j = 1; j <= diag + 1; ++j) {
                const long row = N + j - diag - 2;
                const long col = j - 1;
                const auto rot = detail::null_from_left(static_cast<std::size_t>(row - 1), work(row - 1, col), work(row, col));
                detail::apply_rows(work, rot.n, t_block(rot.theta, rot.phi));
                if (std::abs(work(row, col)) > kNullTol) {
                    throw ConsistencyError("decompose: failed to null entry (" + std::to_string(row) + "," +
                                           std::to_string(col) + ")");
                }
                work(row, col) = 0.0;
                left.push_back(rot);
            }
        }
        detail::check_drift(work, "nulling");
    }

    // work is now diagonal: D = L_k ... L_1 U R_1^dagger ... R_p^dagger.
    std::vector<Complex> d(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        d[i] = work(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        d[i] /= std::abs(d[i]);
    }

    // U = L_1^dagger ... L_k^dagger D R_p ... R_1. Push D leftwards through
    // L_k^dagger first: T(theta, phi)^dagger diag(d1, d2) =
    //     diag(-e^{-i phi} d2, d2) T(theta, arg d1 - arg d2 + pi).
    std::vector<GivensGate> commuted;
    commuted.reserve(left.size());
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        const Complex d1 = d[it->n];
        const Complex d2 = d[it->n + 1];
        const double new_phi = wrap_positive(std::arg(d1) - std::arg(d2) + kPi);
        d[it->n] = -std::polar(1.0, -it->phi) * d2;
        commuted.push_back({it->n, wrap_positive(it->theta), new_phi, 0});
    }

    GivensCircuit c;
    c.dim = dim;
    for (const auto& r : right) c.gates.push_back({r.n, wrap_positive(r.theta), wrap_positive(r.phi), 0});
    // commuted holds T'_k first; application order after the R's is T'_k ... T'_1.
    for (const auto& g : commuted) c.gates.push_back(g);
    c.gates = schedule_layers(std::move(c.gates));
    c.diagonal_phases.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) c.diagonal_phases[i] = wrap_symmetric(std::arg(d[i]));
    c.global_phase = 0.0;
    return c;
}

}  // namespace olmesh

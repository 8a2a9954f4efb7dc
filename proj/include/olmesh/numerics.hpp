#pragma once

// Dense complex linear algebra shared by every other module: matrix and state
// carriers, unitarity/Hermiticity checks, the Hermitian eigensolver, and
// random unitaries and states.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "olmesh/errors.hpp"
#include "olmesh/rng.hpp"

namespace olmesh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Wrap an angle into [0, 2pi).
inline double wrap_positive(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a value just below 0 can round up to exactly 2pi.
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

/// Wrap an angle into (-pi, pi].
inline double wrap_symmetric(double angle) {
    double r = wrap_positive(angle);
    if (r > kPi) r -= kTwoPi;
    return r;
}

inline bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

inline void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected square");
    }
}

/// max |m^dagger m - I| over all entries.
inline double unitarity_deviation(const ComplexMatrix& m) {
    require_square(m, "unitarity_deviation");
    const ComplexMatrix gram = m.adjoint() * m;
    return (gram - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

inline bool is_unitary(const ComplexMatrix& m, double tol = kUnitarityTol) {
    if (m.size() == 0) throw DimensionError("is_unitary: empty matrix");
    return unitarity_deviation(m) <= tol;
}

/// max |h - h^dagger| over all entries.
inline double hermiticity_deviation(const ComplexMatrix& h) {
    require_square(h, "hermiticity_deviation");
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("frobenius_distance: shapes " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()) + " differ");
    }
    return (a - b).norm();
}

/// Smallest Frobenius distance between a and e^{i chi} b over all chi, with the
/// optimal phase. Used where results are defined only up to global phase.
inline double frobenius_distance_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Complex overlap = (b.adjoint() * a).trace();
    const double mag = std::abs(overlap);
    const Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
    return frobenius_distance(a, phase * b);
}

/// A normalized single-particle state over N lattice modes.
class StateVector {
public:
    /// Takes amplitudes that are already normalized (within kNormTol).
    explicit StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.size() == 0) throw DimensionError("StateVector: dimension must be positive");
        if (!amps_.allFinite()) throw ValidationError("StateVector: non-finite amplitude");
        const double deviation = std::abs(amps_.norm() - 1.0);
        if (deviation > 1e-10) {
            throw ValidationError("StateVector: norm deviates from 1 by " + std::to_string(deviation));
        }
    }

    /// Normalizes arbitrary non-zero amplitudes.
    static StateVector normalized(ComplexVector amplitudes) {
        const double n = amplitudes.norm();
        if (!(n > 0.0)) throw ValidationError("StateVector: cannot normalize the zero vector");
        return StateVector(amplitudes / n);
    }

    static StateVector basis(std::size_t dim, std::size_t site) {
        if (dim == 0) throw DimensionError("StateVector::basis: dimension must be positive");
        if (site >= dim) throw IndexError("StateVector::basis: site out of range");
        ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(site)) = 1.0;
        return StateVector(std::move(v));
    }

    std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
    const ComplexVector& amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    std::vector<double> probabilities() const {
        std::vector<double> p(dim());
        for (std::size_t i = 0; i < dim(); ++i) p[i] = std::norm(amps_(static_cast<Eigen::Index>(i)));
        return p;
    }

private:
    ComplexVector amps_;
};

struct EigenDecomposition {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns
};

/// Spectral decomposition of a Hermitian matrix: h V = V diag(lambda).
inline EigenDecomposition hermitian_eig(const ComplexMatrix& h, double hermiticity_tol = kHermiticityTol) {
    require_square(h, "hermitian_eig");
    if (h.size() == 0) throw DimensionError("hermitian_eig: empty matrix");
    if (!all_finite(h)) throw ValidationError("hermitian_eig: non-finite entry");
    const double dev = hermiticity_deviation(h);
    if (dev > hermiticity_tol) throw SymmetryError("hermitian_eig: matrix is not Hermitian", dev);

    // Symmetrize so round-off asymmetry does not leak into the solver.
    const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    if (solver.info() != Eigen::Success) throw ConsistencyError("hermitian_eig: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline ComplexMatrix gaussian_matrix(std::size_t n, Rng& rng) {
    const auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix z(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(i, j) = Complex(re, im) * (1.0 / std::numbers::sqrt2);
        }
    }
    return z;
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal moved into Q.
inline ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
    if (n == 0) throw DimensionError("haar_unitary: n must be positive");
    const ComplexMatrix z = gaussian_matrix(n, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    ComplexMatrix q = qr.householderQ();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        const Complex phase = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

/// Uniformly random point on the complex unit sphere in C^n.
inline StateVector random_state(std::size_t n, Rng& rng) {
    if (n == 0) throw DimensionError("random_state: n must be positive");
    ComplexVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im);
    }
    return StateVector::normalized(std::move(v));
}

/// Permutation matrix sending basis state e_i to e_{map[i]}.
inline ComplexMatrix permutation_matrix(std::span<const std::size_t> map) {
    const auto n = static_cast<Eigen::Index>(map.size());
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto target = map[static_cast<std::size_t>(i)];
        if (target >= map.size()) throw IndexError("permutation_matrix: target out of range");
        p(static_cast<Eigen::Index>(target), i) = 1.0;
    }
    return p;
}

}  // namespace olmesh

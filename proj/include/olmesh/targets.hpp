#pragma once

// Target unitaries: discrete Fourier transform, chain Hamiltonians and their
// time evolution.

#include <cmath>
#include <cstddef>
#include <string>

#include "olmesh/errors.hpp"
#include "olmesh/numerics.hpp"

namespace olmesh {

/// Hermitian single-particle Hamiltonian, energies in units of the
/// nearest-neighbor hopping, hbar = 1.
struct Hamiltonian {
    ComplexMatrix matrix;
    std::string label;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }

    /// Validates Hermiticity; throws SymmetryError with the max deviation.
    static Hamiltonian from_matrix(ComplexMatrix m, std::string label = {}, double tol = kHermiticityTol) {
        require_square(m, "Hamiltonian");
        if (m.rows() == 0) throw DimensionError("Hamiltonian: empty matrix");
        if (!all_finite(m)) throw ValidationError("Hamiltonian: non-finite entry");
        const double dev = hermiticity_deviation(m);
        if (dev > tol) throw SymmetryError("Hamiltonian: matrix is not Hermitian", dev);
        return {std::move(m), std::move(label)};
    }
};

/// Unitary DFT with entry (k, j) = omega^{jk} / sqrt(n), omega = e^{2 pi i / n}.
/// `shifted` rotates rows so zero momentum sits at row floor(n/2) (fftshift).
inline ComplexMatrix dft_matrix(std::size_t n, bool shifted = false) {
    if (n == 0) throw DimensionError("dft_matrix: n must be positive");
    const auto dim = static_cast<Eigen::Index>(n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    const std::size_t shift = shifted ? n / 2 : 0;
    ComplexMatrix m(dim, dim);
    for (std::size_t row = 0; row < n; ++row) {
        const std::size_t k = (row + n - shift) % n;
        for (std::size_t j = 0; j < n; ++j) {
            // Reduce jk mod n before forming the angle to keep it exact.
            const auto e = static_cast<double>((j * k) % n);
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) = std::polar(norm, kTwoPi * e / static_cast<double>(n));
        }
    }
    return m;
}

/// Open chain with H[i][i+-1] = -t_nn and H[i][i+-2] = -t_nnn.
inline Hamiltonian chain_hamiltonian(std::size_t n, double t_nn, double t_nnn) {
    if (n < 2) throw DimensionError("chain_hamiltonian: n must be at least 2");
    const auto dim = static_cast<Eigen::Index>(n);
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i + 1 < dim; ++i) h(i, i + 1) = h(i + 1, i) = -t_nn;
    for (Eigen::Index i = 0; i + 2 < dim; ++i) h(i, i + 2) = h(i + 2, i) = -t_nnn;
    return Hamiltonian::from_matrix(std::move(h), "chain(n=" + std::to_string(n) + ")");
}

/// exp(-i H tau) via the spectral decomposition.
inline ComplexMatrix evolution_unitary(const Hamiltonian& h, double tau) {
    const auto eig = hermitian_eig(h.matrix);
    ComplexVector phases(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -eig.eigenvalues(i) * tau);
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace olmesh

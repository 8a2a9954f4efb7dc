#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "olmesh/clements.hpp"
#include "olmesh/io.hpp"
#include "olmesh/targets.hpp"
#include "oracles.hpp"

using namespace olmesh;

TEST(Dft, OneByOne) {
    const auto m = dft_matrix(1);
    EXPECT_LT(std::abs(m(0, 0) - 1.0), 1e-15);
}

TEST(Dft, TwoByTwoUnshifted) {
    const double h = 1.0 / std::sqrt(2.0);
    const oracle::Mat expected = {{h, h}, {h, -h}};
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(dft_matrix(2, false)), expected), 1e-15);
}

TEST(Dft, UniformModulusAndUnitary) {
    const auto m = dft_matrix(8);
    for (Eigen::Index i = 0; i < 8; ++i)
        for (Eigen::Index j = 0; j < 8; ++j) EXPECT_NEAR(std::abs(m(i, j)), 1.0 / std::sqrt(8.0), 1e-15);
    EXPECT_LT((m * m.adjoint() - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Dft, ZeroDimension) {
    EXPECT_THROW(dft_matrix(0), DimensionError);
}

TEST(Dft, ShiftCentersZeroMomentum) {
    for (std::size_t n : {4u, 5u, 8u, 13u}) {
        const auto plain = dft_matrix(n, false);
        const auto shifted = dft_matrix(n, true);
        // Zero-momentum row (all entries equal and real) sits at floor(n/2).
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_NEAR(std::abs(shifted(n / 2, j) - 1.0 / std::sqrt(double(n))), 0.0, 1e-14);
        }
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t source = (k + n - n / 2) % n;
            EXPECT_LT((shifted.row(k) - plain.row(source)).cwiseAbs().maxCoeff(), 1e-15);
        }
        EXPECT_TRUE(is_unitary(shifted, 1e-12));
    }
}

TEST(Dft, PositionStatesDelocalize) {
    for (std::size_t n : {5u, 8u, 30u}) {
        const auto m = dft_matrix(n, true);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(std::norm(m(k, j)), 1.0 / n, 1e-12);
    }
}

TEST(Dft, DecomposesForManySizes) {
    for (std::size_t n = 2; n <= 32; ++n) {
        const auto m = dft_matrix(n, true);
        EXPECT_LT(frobenius_distance(m, reconstruct(decompose(m))), 1e-9) << "n=" << n;
    }
}

TEST(Chain, TightBindingStencil) {
    const auto h = chain_hamiltonian(3, 1.0, 0.0);
    const oracle::Mat expected = {{0.0, -1.0, 0.0}, {-1.0, 0.0, -1.0}, {0.0, -1.0, 0.0}};
    EXPECT_LT(oracle::max_abs_diff(oracle::from_eigen(h.matrix), expected), 1e-15);
}

TEST(Chain, NextNearestNeighbor) {
    const auto h = chain_hamiltonian(4, 1.0, 2.0);
    EXPECT_DOUBLE_EQ(h.matrix(0, 2).real(), -2.0);
    EXPECT_DOUBLE_EQ(h.matrix(1, 3).real(), -2.0);
    EXPECT_DOUBLE_EQ(h.matrix(0, 3).real(), 0.0);
    for (std::size_t n = 2; n < 20; ++n) EXPECT_EQ(hermiticity_deviation(chain_hamiltonian(n, 0.7, 1.3).matrix), 0.0);
}

TEST(Chain, TooSmall) {
    EXPECT_THROW(chain_hamiltonian(1, 1.0, 0.0), DimensionError);
}

TEST(Evolution, ZeroTimeIsIdentity) {
    const auto u = evolution_unitary(chain_hamiltonian(6, 1.0, 2.0), 0.0);
    EXPECT_LT(frobenius_distance(u, ComplexMatrix::Identity(6, 6)), 1e-13);
}

TEST(Evolution, DiagonalExponentiation) {
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = 2.0;
    const auto u = evolution_unitary(Hamiltonian::from_matrix(h), kPi);
    EXPECT_LT(std::abs(u(0, 0) - std::polar(1.0, -kPi)), 1e-14);
    EXPECT_LT(std::abs(u(1, 1) - std::polar(1.0, -2 * kPi)), 1e-14);
    EXPECT_LT(std::abs(u(0, 1)), 1e-14);
}

TEST(Evolution, TaylorRemainderIsThirdOrder) {
    Rng rng(8, 0);
    const ComplexMatrix g = gaussian_matrix(6, rng);
    const ComplexMatrix hm = 0.5 * (g + g.adjoint());
    const auto h = Hamiltonian::from_matrix(hm);
    // Oracle: truncated series I - iH tau - H^2 tau^2 / 2, built by hand.
    auto remainder = [&](double tau) {
        const auto hh = oracle::multiply(oracle::from_eigen(hm), oracle::from_eigen(hm));
        auto series = oracle::identity(6);
        const auto H = oracle::from_eigen(hm);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) series[i][j] += oracle::C(0, -tau) * H[i][j] - 0.5 * tau * tau * hh[i][j];
        const auto u = oracle::from_eigen(evolution_unitary(h, tau));
        double sq = 0.0;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) sq += std::norm(u[i][j] - series[i][j]);
        return std::sqrt(sq);
    };
    const double r1 = remainder(1e-2);
    const double r2 = remainder(5e-3);
    // Halving tau shrinks an O(tau^3) remainder eightfold.
    EXPECT_NEAR(r1 / r2, 8.0, 0.5);
    // Bound from the series tail: ||H||^3 tau^3 / 6 (with slack).
    const double hnorm = hm.norm();
    EXPECT_LT(r1, std::pow(hnorm * 1e-2, 3) / 6.0 * 1.5);
}

TEST(Evolution, GroupProperty) {
    Rng rng(10, 0);
    const ComplexMatrix g = gaussian_matrix(8, rng);
    const auto h = Hamiltonian::from_matrix(0.5 * (g + g.adjoint()));
    const ComplexMatrix lhs = evolution_unitary(h, 0.37) * evolution_unitary(h, 1.21);
    EXPECT_LT(frobenius_distance(lhs, evolution_unitary(h, 1.58)), 1e-10);
    EXPECT_TRUE(is_unitary(evolution_unitary(h, 2.0), 1e-10));
}

TEST(LoadHamiltonian, WellFormed) {
    std::istringstream in(R"({"rows":2,"cols":2,"label":"pauli-y","data":[[0,0],[0,-1],[0,1],[0,0]]})");
    const auto h = io::load_hamiltonian(in);
    EXPECT_EQ(h.label, "pauli-y");
    EXPECT_EQ(h.dim(), 2u);
    EXPECT_DOUBLE_EQ(h.matrix(0, 1).imag(), -1.0);
}

TEST(LoadHamiltonian, NonHermitianIsRejected) {
    std::istringstream in(R"({"rows":2,"cols":2,"data":[[0,0],[1,0],[0,0],[0,0]]})");
    try {
        io::load_hamiltonian(in);
        FAIL() << "expected SymmetryError";
    } catch (const SymmetryError& e) {
        EXPECT_DOUBLE_EQ(e.deviation(), 1.0);
    }
}

TEST(LoadHamiltonian, ParseErrorReportsLine) {
    std::istringstream in("{\n\"rows\": 2,\n\"cols\": 2,\n\"data\": [[0,0] [0,0]]\n}");
    try {
        io::load_hamiltonian(in);
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
}

TEST(LoadHamiltonian, SaveLoadRoundTrip) {
    const auto h = chain_hamiltonian(9, 1.0, 2.0);
    std::istringstream in(io::dump(io::to_json(h)));
    const auto back = io::load_hamiltonian(in);
    EXPECT_TRUE(back.matrix == h.matrix);
    EXPECT_EQ(back.label, h.label);
}

#include <gtest/gtest.h>

#include <cmath>
#include <variant>

#include "olmesh/native_gates.hpp"
#include "olmesh/sim.hpp"
#include "olmesh/targets.hpp"
#include "oracles.hpp"

using namespace olmesh;

namespace {

// e^{i alpha} X(3pi/2) Z(2 theta) X(pi/2) Z(-phi), multiplied out by the oracle.
oracle::Mat zxzx_product(double theta, double phi, double alpha) {
    auto m = oracle::multiply(oracle::x_gate(3 * kPi / 2), oracle::z_gate(2 * theta));
    m = oracle::multiply(m, oracle::x_gate(kPi / 2));
    m = oracle::multiply(m, oracle::z_gate(-phi));
    for (auto& row : m)
        for (auto& x : row) x *= std::exp(oracle::C(0, alpha));
    return m;
}

oracle::Mat block_of(double theta, double phi) { return oracle::givens(0, theta, phi, 2); }

}  // namespace

TEST(ZxzxParams, ZeroAngles) {
    const auto p = zxzx_params(0.0, 0.0);
    EXPECT_DOUBLE_EQ(p.alpha, kPi);
    EXPECT_LT(oracle::max_abs_diff(zxzx_product(0, 0, p.alpha), oracle::identity(2)), 1e-12);
}

TEST(ZxzxParams, SwapAngles) {
    const auto p = zxzx_params(3 * kPi / 2, kPi);
    EXPECT_NEAR(p.alpha, kPi / 2, 1e-15);
    const oracle::Mat swap = {{0.0, 1.0}, {1.0, 0.0}};
    EXPECT_LT(oracle::max_abs_diff(zxzx_product(p.theta, p.phi, p.alpha), swap), 1e-12);
}

TEST(ZxzxParams, RandomAnglesMatchGivensBlock) {
    Rng rng(31, 0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double theta = kTwoPi * rng.uniform();
        const double phi = kTwoPi * rng.uniform();
        const auto p = zxzx_params(theta, phi);
        worst = std::max(worst, oracle::max_abs_diff(zxzx_product(theta, phi, p.alpha), block_of(theta, phi)));
        worst = std::max(worst, oracle::max_abs_diff(oracle::from_eigen(p.assemble()), block_of(theta, phi)));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(NativeIdentities, YRotationFromSymmetricZ) {
    Rng rng(4, 0);
    for (int i = 0; i < 100; ++i) {
        const double g = kTwoPi * rng.uniform();
        const Eigen::Matrix2cd lhs = native_x(3 * kPi / 2) * symmetric_z(2 * g) * native_x(kPi / 2);
        Eigen::Matrix2cd rhs;
        rhs << -std::cos(g), std::sin(g), -std::sin(g), -std::cos(g);
        EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(NativeIdentities, NativeBlockDeterminant) {
    Rng rng(6, 0);
    for (int i = 0; i < 100; ++i) {
        const double theta = kTwoPi * rng.uniform();
        const double phi = kTwoPi * rng.uniform();
        EXPECT_LT(std::abs(native_block(theta, phi).determinant() - std::polar(1.0, 2 * theta - phi)), 1e-12);
    }
}

TEST(CommutePhase, Identity) {
    const auto cp = commute_phase(Eigen::Matrix2cd::Identity());
    // The phase-free native block can only reach -I, never I.
    EXPECT_LT((native_block(cp.theta, cp.phi) + Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(std::abs(wrap_symmetric(cp.left_a - kPi)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(wrap_symmetric(cp.left_b - kPi)), 0.0, 1e-12);
    EXPECT_EQ(cp.theta, 0.0);
    EXPECT_EQ(cp.phi, 0.0);
}

TEST(CommutePhase, DiagonalInputRecoversPhases) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, kPi / 3);
    m(1, 1) = 1.0;
    const auto cp = commute_phase(m);
    EXPECT_EQ(cp.theta, 0.0);
    EXPECT_EQ(cp.phi, 0.0);
    // diag(a', b') (-I) = m
    EXPECT_NEAR(std::abs(wrap_symmetric(cp.left_a - kPi / 3 - kPi)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(wrap_symmetric(cp.left_b - kPi)), 0.0, 1e-12);
}

TEST(CommutePhase, RandomUnitariesReassemble) {
    Rng rng(12, 0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Matrix2cd m = haar_unitary(2, rng);
        const auto cp = commute_phase(m);
        Eigen::Matrix2cd left = Eigen::Matrix2cd::Zero();
        left(0, 0) = std::polar(1.0, cp.left_a);
        left(1, 1) = std::polar(1.0, cp.left_b);
        worst = std::max(worst, (left * native_block(cp.theta, cp.phi) - m).cwiseAbs().maxCoeff());
        const double lhs = cp.left_a + cp.left_b;
        const double rhs = std::arg(m.determinant()) - (2 * cp.theta - cp.phi);
        EXPECT_NEAR(std::abs(wrap_symmetric(lhs - rhs)), 0.0, 1e-12);
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(CommutePhase, SwapBlockKeepsZeroPhiRepresentative) {
    Eigen::Matrix2cd m;
    m << 0.0, std::polar(1.0, 0.4), std::polar(1.0, -1.3), 0.0;
    const auto cp = commute_phase(m);
    EXPECT_NEAR(cp.theta, kPi / 2, 1e-15);
    EXPECT_EQ(cp.phi, 0.0);
}

TEST(CommutePhase, RejectsNonUnitary) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m(0, 1) = 0.5;
    EXPECT_THROW(commute_phase(m), UnitarityError);
}

namespace {

std::size_t count_global_x(const PulseSchedule& s) {
    std::size_t n = 0;
    for (const auto& op : s.ops) n += std::holds_alternative<GlobalX>(op);
    return n;
}

}  // namespace

TEST(AbsorbPhases, IdentityCircuit) {
    const auto c = decompose(ComplexMatrix::Identity(4, 4));
    const auto s = absorb_phases(c);
    const ComplexMatrix u = std::polar(1.0, s.global_phase) * schedule_to_unitary(s);
    EXPECT_LT(frobenius_distance(u, ComplexMatrix::Identity(4, 4)), 1e-10);
}

TEST(AbsorbPhases, SingleSwap) {
    GivensCircuit c;
    c.dim = 2;
    c.diagonal_phases.assign(2, 0.0);
    c.gates.push_back({0, 3 * kPi / 2, kPi, 0});
    const auto s = absorb_phases(c);
    ComplexMatrix swap = ComplexMatrix::Zero(2, 2);
    swap(0, 1) = swap(1, 0) = 1.0;
    EXPECT_LT(frobenius_distance(std::polar(1.0, s.global_phase) * schedule_to_unitary(s), swap), 1e-12);
}

TEST(AbsorbPhases, DftEight) {
    const ComplexMatrix target = dft_matrix(8, true);
    const auto s = absorb_phases(decompose(target));
    EXPECT_LT(frobenius_distance(std::polar(1.0, s.global_phase) * schedule_to_unitary(s), target), 1e-9);
}

TEST(AbsorbPhases, LayerStructure) {
    Rng rng(21, 0);
    const auto c = decompose(haar_unitary(7, rng));
    const auto s = absorb_phases(c);
    EXPECT_EQ(count_global_x(s), 2 * c.depth());
    // Per layer: dimerize, local_z, global_x(pi/2), local_z, global_x(3pi/2); one trailing local_z.
    ASSERT_EQ(s.ops.size(), 5 * c.depth() + 1);
    for (std::size_t l = 0; l < c.depth(); ++l) {
        EXPECT_TRUE(std::holds_alternative<Dimerize>(s.ops[5 * l]));
        EXPECT_TRUE(std::holds_alternative<LocalZ>(s.ops[5 * l + 1]));
        EXPECT_DOUBLE_EQ(std::get<GlobalX>(s.ops[5 * l + 2]).angle, kPi / 2);
        EXPECT_TRUE(std::holds_alternative<LocalZ>(s.ops[5 * l + 3]));
        EXPECT_DOUBLE_EQ(std::get<GlobalX>(s.ops[5 * l + 4]).angle, 3 * kPi / 2);
    }
    EXPECT_TRUE(std::holds_alternative<LocalZ>(s.ops.back()));
    for (const auto& op : s.ops) {
        if (const auto* z = std::get_if<LocalZ>(&op)) {
            for (double p : z->phases) {
                EXPECT_GE(p, 0.0);
                EXPECT_LT(p, kTwoPi);
            }
        }
    }
}

TEST(AbsorbPhases, SparseLayerGetsIdentityOnIdleDimers) {
    // One gate on (2,3) of a 6-mode circuit: dimers (0,1) and (4,5) are also
    // pulsed and must act trivially.
    GivensCircuit c;
    c.dim = 6;
    c.diagonal_phases = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    c.global_phase = 0.25;
    c.gates.push_back({2, 0.8, 1.9, 0});
    const auto s = absorb_phases(c);
    const ComplexMatrix u = std::polar(1.0, s.global_phase) * schedule_to_unitary(s);
    EXPECT_LT(frobenius_distance(u, reconstruct(c)), 1e-12);
}

TEST(AbsorbPhases, MixedParityLayerIsRejected) {
    GivensCircuit c;
    c.dim = 5;
    c.diagonal_phases.assign(5, 0.0);
    c.gates = {{0, 0.1, 0.1, 0}, {3, 0.1, 0.1, 0}};
    EXPECT_THROW(absorb_phases(c), ConsistencyError);
}

TEST(AbsorbPhases, LayeringMustRespectOrder) {
    GivensCircuit c;
    c.dim = 3;
    c.diagonal_phases.assign(3, 0.0);
    c.gates = {{0, 0.1, 0.1, 1}, {1, 0.1, 0.1, 0}};
    EXPECT_THROW(absorb_phases(c), ValidationError);
}

TEST(AbsorbPhases, OneModeCircuit) {
    GivensCircuit c;
    c.dim = 1;
    c.diagonal_phases = {1.2};
    const auto s = absorb_phases(c);
    ASSERT_EQ(s.ops.size(), 1u);
    EXPECT_NEAR(std::get<LocalZ>(s.ops[0]).phases[0], 1.2, 1e-15);
}

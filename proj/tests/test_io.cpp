#include <gtest/gtest.h>

#include "olmesh/io.hpp"
#include "olmesh/olmesh.hpp"

using namespace olmesh;

namespace {

template <class T, class Parse>
T round_trip(const T& value, Parse parse) {
    return parse(io::parse_json(io::dump(io::to_json(value))));
}

}  // namespace

TEST(IoRoundTrip, MatricesAreBitExact) {
    Rng rng(1, 0);
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto u = haar_unitary(n, rng);
        EXPECT_TRUE(round_trip(u, io::matrix_from_json) == u);
    }
}

TEST(IoRoundTrip, States) {
    Rng rng(2, 0);
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto psi = random_state(n, rng);
        EXPECT_TRUE(round_trip(psi, io::state_from_json).amplitudes() == psi.amplitudes());
    }
}

TEST(IoRoundTrip, Circuits) {
    Rng rng(3, 0);
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto c = decompose(haar_unitary(n, rng));
        const auto back = round_trip(c, io::circuit_from_json);
        EXPECT_EQ(back.dim, c.dim);
        EXPECT_EQ(back.gates, c.gates);
        EXPECT_EQ(back.diagonal_phases, c.diagonal_phases);
        EXPECT_EQ(back.global_phase, c.global_phase);
    }
}

TEST(IoRoundTrip, Schedules) {
    Rng rng(4, 0);
    const auto s = absorb_phases(decompose(haar_unitary(7, rng)));
    const auto back = round_trip(s, io::schedule_from_json);
    EXPECT_TRUE(schedule_to_unitary(back) == schedule_to_unitary(s));
    EXPECT_EQ(back.ops.size(), s.ops.size());
    EXPECT_EQ(back.global_phase, s.global_phase);
}

TEST(IoRoundTrip, PlansAndTargets) {
    Rng rng(5, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = GridTargets::from_cell_permutation(5, random_permutation(25, rng));
        const auto t2 = round_trip(t, io::targets_from_json);
        ASSERT_EQ(t2.moves.size(), t.moves.size());
        const auto plan = hvh_plan(t2);
        const auto back = round_trip(plan, io::plan_from_json);
        EXPECT_EQ(back.l_buffer, plan.l_buffer);
        EXPECT_EQ(back.stage2, plan.stage2);
        EXPECT_NO_THROW(validate_plan(back, t));
    }
}

TEST(IoRoundTrip, SweepCsv) {
    SweepResult rows;
    for (std::size_t n : {3u, 7u}) {
        SweepRow r;
        r.label = "dft";
        r.n = n;
        r.sigma = 1e-3 / 3;
        r.epsilon = 1e-7;
        r.stats.mean = 1.0 / 7 * n;
        r.stats.std = 0.1 / 3;
        r.stats.n_states = 30;
        r.stats.n_noise = 31;
        rows.push_back(r);
    }
    const auto back = io::sweep_from_csv(io::sweep_to_csv(rows));
    ASSERT_EQ(back.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(back[i].label, rows[i].label);
        EXPECT_EQ(back[i].n, rows[i].n);
        EXPECT_EQ(back[i].sigma, rows[i].sigma);
        EXPECT_EQ(back[i].epsilon, rows[i].epsilon);
        EXPECT_EQ(back[i].stats.mean, rows[i].stats.mean);
        EXPECT_EQ(back[i].stats.std, rows[i].stats.std);
        EXPECT_EQ(back[i].stats.n_noise, 31u);
    }
}

TEST(IoErrors, MalformedJsonHasPosition) {
    try {
        io::parse_json("{\"rows\": 1,\n \"cols\": }");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
}

TEST(IoErrors, WrongShapes) {
    EXPECT_THROW(io::matrix_from_json(io::parse_json(R"({"rows":2,"cols":2,"data":[[1,0]]})")), FormatError);
    EXPECT_THROW(io::matrix_from_json(io::parse_json(R"({"rows":1,"cols":1,"data":[[1]]})")), FormatError);
    EXPECT_THROW(io::matrix_from_json(io::parse_json(R"({"rows":"1","cols":1,"data":[[1,0]]})")), FormatError);
    EXPECT_THROW(io::state_from_json(io::parse_json(R"({"dim":2,"data":[[1,0],[1,0]]})")), ValidationError);
    EXPECT_THROW(io::targets_from_json(io::parse_json(R"({"L":2,"moves":[[0,0,1]]})")), FormatError);
    EXPECT_THROW(io::schedule_from_json(io::parse_json(R"({"dim":2,"global_phase":0,"ops":[{"op":"warp"}]})")),
                 FormatError);
}

TEST(IoErrors, CsvProblemsNameTheLine) {
    const std::string bad = std::string(io::kSweepHeader) + "\ndft,5,0.001,0,abc,0,1,1\n";
    try {
        io::sweep_from_csv(bad);
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(io::sweep_from_csv("a,b\n"), FormatError);
}

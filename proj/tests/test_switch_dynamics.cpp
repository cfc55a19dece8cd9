#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace tmt;

namespace {

SwitchState rotor(std::size_t n, std::vector<Matching> pool, std::uint32_t beta, std::uint32_t delta) {
    return initial_state(SwitchConfig{0, SwitchKind::Rotor, std::move(pool), beta, delta}, n);
}

SwitchState demand_aware(std::size_t n, Matching initial, std::uint32_t beta) {
    return initial_state(SwitchConfig{0, SwitchKind::DemandAware, {std::move(initial)}, beta, 1}, n);
}

} // namespace

TEST(ActiveEdges, NoPendingJobIsIdentity) {
    auto s = rotor(4, {Matching::shift(4, 1), Matching::shift(4, 2)}, 2, 1);
    EXPECT_EQ(active_edges(s, 1), Matching::shift(4, 1));
}

TEST(ActiveEdges, WholeSwitchIsDarkMidReconfiguration) {
    auto s = rotor(4, {Matching::shift(4, 1), Matching::shift(4, 2)}, 3, 1);
    s = begin_reconfig(s, Matching::shift(4, 2), 5, InactiveScope::WholeSwitch);
    EXPECT_TRUE(active_edges(s, 6).empty());
    EXPECT_EQ(active_edges(s, 8), Matching::shift(4, 2));
}

TEST(ActiveEdges, ChangedEdgesOnlyKeepsIntersection) {
    auto current = validate_matching({edge(0, 1), edge(2, 3)}, 4);
    auto target = validate_matching({edge(0, 1), edge(2, 0)}, 4);
    auto s = demand_aware(4, current, 2);
    s = begin_reconfig(s, target, 1, InactiveScope::ChangedEdgesOnly);
    auto expected = validate_matching({edge(0, 1)}, 4);
    ASSERT_EQ(oracle::to_set(expected), (oracle::EdgeSet{{0, 1}}));
    EXPECT_EQ(active_edges(s, 2), expected);
}

TEST(ActiveEdges, ChangedEdgesOnlyMatchesSetIntersectionOracle) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 10;
        auto a = oracle::random_matching(rng, n), b = oracle::random_matching(rng, n);
        auto s = begin_reconfig(demand_aware(n, a, 1 + rng() % 4), b, 3, InactiveScope::ChangedEdgesOnly);
        auto got = active_edges(s, 3);
        oracle::EdgeSet expected;
        auto sa = oracle::to_set(a), sb = oracle::to_set(b);
        for (const auto& e : sa)
            if (sb.count(e))
                expected.insert(e);
        EXPECT_EQ(oracle::to_set(got), expected);
        for (const auto& e : got.edges())
            EXPECT_TRUE(a.contains(e) || b.contains(e));
    }
}

TEST(BeginReconfig, ZeroLatencyAppliesImmediately) {
    auto s = rotor(4, {Matching::shift(4, 1), Matching::shift(4, 2)}, 0, 1);
    s = begin_reconfig(s, Matching::shift(4, 3), 4, InactiveScope::WholeSwitch);
    EXPECT_FALSE(s.pending);
    EXPECT_EQ(s.current, Matching::shift(4, 3));
}

TEST(BeginReconfig, SchedulesCompletion) {
    auto s = rotor(4, {Matching::shift(4, 1), Matching::shift(4, 2)}, 2, 1);
    s = begin_reconfig(s, Matching::shift(4, 2), 5, InactiveScope::WholeSwitch);
    ASSERT_TRUE(s.pending);
    EXPECT_EQ(s.pending->start_t, 5u);
    EXPECT_EQ(s.pending->complete_t, 7u);
    EXPECT_EQ(s.current, Matching::shift(4, 1));
    EXPECT_EQ(s.nominal(), Matching::shift(4, 2));
}

TEST(BeginReconfig, Errors) {
    auto s = rotor(4, {Matching::shift(4, 1), Matching::shift(4, 2)}, 2, 1);
    s = begin_reconfig(s, Matching::shift(4, 2), 5, InactiveScope::WholeSwitch);
    try {
        begin_reconfig(s, Matching::shift(4, 3), 6, InactiveScope::WholeSwitch);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ReconfigInProgress);
    }
    auto st = initial_state(SwitchConfig{0, SwitchKind::Static, {Matching::shift(4, 1)}, 0, 1}, 4);
    try {
        begin_reconfig(st, Matching::shift(4, 2), 1, InactiveScope::WholeSwitch);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::StaticSwitchImmutable);
    }
}

TEST(FinalizeDue, Boundary) {
    auto s = rotor(4, {Matching::shift(4, 1), Matching::shift(4, 2)}, 2, 1);
    s = begin_reconfig(s, Matching::shift(4, 2), 5, InactiveScope::WholeSwitch, 1);
    EXPECT_EQ(finalize_due(s, 6), s);
    auto done = finalize_due(s, 7);
    EXPECT_FALSE(done.pending);
    EXPECT_EQ(done.current, Matching::shift(4, 2));
    EXPECT_EQ(done.pool_index, 1u);
    EXPECT_EQ(finalize_due(done, 100), done);
}

TEST(RotorDueTarget, Schedule) {
    auto s = rotor(4, {Matching::shift(4, 1), Matching::shift(4, 2)}, 0, 1);
    EXPECT_EQ(rotor_due_target(s, 1), Matching::shift(4, 2));

    auto slow = rotor(4, {Matching::shift(4, 1), Matching::shift(4, 2)}, 0, 3);
    EXPECT_FALSE(rotor_due_target(slow, 2));
    EXPECT_TRUE(rotor_due_target(slow, 3));
}

TEST(RotorDueTarget, TwoRotationsReturnToStart) {
    auto s = rotor(4, {Matching::shift(4, 1), Matching::shift(4, 2)}, 0, 1);
    std::vector<std::size_t> indices;
    for (std::size_t t = 1; t <= 2; ++t) {
        auto target = rotor_due_target(s, t);
        ASSERT_TRUE(target);
        auto idx = rotor_next_index(s);
        s = begin_reconfig(s, *target, t, InactiveScope::WholeSwitch, idx);
        indices.push_back(s.pool_index);
    }
    EXPECT_EQ(indices, (std::vector<std::size_t>{1, 0}));
    EXPECT_EQ(s.current, Matching::shift(4, 1));
}

TEST(RotorDueTarget, SuppressedWhilePendingAndRejectsNonRotors) {
    auto s = rotor(4, {Matching::shift(4, 1), Matching::shift(4, 2)}, 2, 1);
    s = begin_reconfig(s, Matching::shift(4, 2), 1, InactiveScope::WholeSwitch, 1);
    EXPECT_FALSE(rotor_due_target(s, 2));
    auto da = demand_aware(4, Matching(4), 0);
    try {
        rotor_due_target(da, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotARotor);
    }
}

TEST(RotorDueTarget, PeriodicityEqualsPoolSize) {
    for (std::size_t n = 3; n <= 9; ++n) {
        std::vector<Matching> pool;
        for (std::size_t d = 1; d < n; ++d)
            pool.push_back(Matching::shift(n, d));
        auto s = rotor(n, pool, 0, 1);
        std::size_t rotations = 0;
        for (std::size_t t = 1;; ++t) {
            auto target = rotor_due_target(s, t);
            s = begin_reconfig(s, *target, t, InactiveScope::WholeSwitch, rotor_next_index(s));
            ++rotations;
            if (s.current == pool.front())
                break;
        }
        EXPECT_EQ(rotations, pool.size());
    }
}

TEST(ActiveEdges, AlwaysSubsetOfCurrentUnionTarget) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng() % 8;
        auto a = oracle::random_matching(rng, n), b = oracle::random_matching(rng, n);
        auto scope = trial % 2 ? InactiveScope::WholeSwitch : InactiveScope::ChangedEdgesOnly;
        std::uint32_t beta = rng() % 4;
        auto s = begin_reconfig(demand_aware(n, a, beta), b, 2, scope);
        for (std::size_t t = 1; t < 8; ++t) {
            auto act = active_edges(s, t);
            EXPECT_NO_THROW(validate_matching(act.edges(), n));
            for (const auto& e : act.edges())
                EXPECT_TRUE(a.contains(e) || b.contains(e));
        }
    }
}

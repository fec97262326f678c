/*
 * Copyright 2026 The fairgames Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <random>

#include <gtest/gtest.h>

#include "circulation.hpp"
#include "fairgames/fair.hpp"
#include "fairgames/strategies.hpp"
#include "support.hpp"

namespace fairgames {
namespace {

using testing::corpus_arena;
using testing::pump_then_fair;

const FairObjectiveSpec kPumpAtZero{GameKind::MeanPayoff, FairnessSide::OnP1, 0};

StrategyMachine
pump_machine(const Arena& a, std::uint64_t k)
{
    StrategyMachine m;
    m.owner = Owner::P1;
    m.rules.resize(a.num_nodes());
    const NodeId q = *a.find_node("q"), p = *a.find_node("p");
    m.rules[q] = periodic_rule(q, {p}, k);
    m.rules[p] = {LocalRule{q, 0}};
    m.domain = {q, p};
    return m;
}

// A machine for the player without nodes in a one-player arena.
StrategyMachine
idle(const Arena& a, Owner o)
{
    StrategyMachine m;
    m.owner = o;
    m.rules.resize(a.num_nodes());
    return m;
}

TEST(PeriodicRule, LayoutIsRoundMajor)
{
    auto r = periodic_rule(7, {1, 2}, 2);
    ASSERT_EQ(r.size(), 6u);
    std::vector<NodeId> moves;
    std::uint32_t m = 0;
    for (int i = 0; i < 6; i++) {
        moves.push_back(r[m].move);
        m = r[m].next;
    }
    EXPECT_EQ(moves, (std::vector<NodeId>{7, 7, 1, 7, 7, 2}));
    EXPECT_EQ(m, 0u);
    EXPECT_EQ(periodic_rule(3, {}, 9), (std::vector<LocalRule>{LocalRule{3, 0}}));
}

TEST(Simulate, PumpMachines)
{
    auto a = pump_then_fair();
    auto four = simulate(a, pump_machine(a, 4), idle(a, Owner::P2), 0);
    EXPECT_EQ(four.cycle_mean, 0);
    EXPECT_TRUE(four.fair_on_cycle);
    EXPECT_EQ(four.cycle.size(), 6u);
    auto three = simulate(a, pump_machine(a, 3), idle(a, Owner::P2), 0);
    EXPECT_EQ(three.cycle_mean, Rational(Integer(-1), Integer(5)));
    auto loop = testing::single_loop(0);
    auto l = simulate(loop, StrategyMachine::from_positional(loop, {Owner::P1, {0}}), idle(loop, Owner::P2), 0);
    EXPECT_EQ(l.cycle_mean, 0);
    EXPECT_EQ(l.min_prefix_weight, 0);
    EXPECT_TRUE(l.fair_on_cycle);
}

TEST(Simulate, FairnessVerdictMatchesADirectCheck)
{
    std::mt19937_64 rng(5);
    for (std::uint64_t s = 0; s < 100; s++) {
        auto a = corpus_arena(s, 5, 3, s % 2 ? FairnessSide::OnP1 : FairnessSide::OnP2);
        PositionalStrategy s1{Owner::P1, std::vector<NodeId>(a.num_nodes(), kNoNode)};
        PositionalStrategy s2{Owner::P2, std::vector<NodeId>(a.num_nodes(), kNoNode)};
        for (NodeId q = 0; q < a.num_nodes(); q++) {
            auto succ = a.successors(q);
            (a.owner(q) == Owner::P1 ? s1 : s2).move[q] = succ[rng() % succ.size()];
        }
        auto l = simulate(a, StrategyMachine::from_positional(a, s1), StrategyMachine::from_positional(a, s2), 0);
        bool fair = true;
        for (auto q : l.cycle)
            for (auto t : a.fair_successors(q)) {
                bool taken = false;
                for (std::size_t i = 0; i < l.cycle.size(); i++)
                    taken = taken || (l.cycle[i] == q && l.cycle[(i + 1) % l.cycle.size()] == t);
                fair = fair && taken;
            }
        EXPECT_EQ(l.fair_on_cycle, fair) << "seed " << s;
    }
}

TEST(Verify, PumpMachines)
{
    auto a = pump_then_fair();
    EXPECT_TRUE(std::holds_alternative<Verified>(verify_machine(a, pump_machine(a, 4), kPumpAtZero)));
    for (bool bound : {true, false}) {
        VerifyOptions o;
        o.circulation_bound = bound;
        auto v = verify_machine(a, pump_machine(a, 3), kPumpAtZero, o);
        ASSERT_TRUE(std::holds_alternative<CounterPlay>(v));
        EXPECT_EQ(std::get<CounterPlay>(v).lasso.cycle_mean, Rational(Integer(-1), Integer(5)));
    }
    // never taking the fair edge is unfair, whatever the weights
    StrategyMachine lazy = pump_machine(a, 4);
    lazy.rules[0] = {LocalRule{0, 0}};
    auto v = verify_machine(a, lazy, kPumpAtZero);
    ASSERT_TRUE(std::holds_alternative<CounterPlay>(v));
    EXPECT_FALSE(std::get<CounterPlay>(v).lasso.fair_on_cycle);
    EXPECT_TRUE(std::holds_alternative<Verified>(
        verify_machine_regular(a, lazy, GameKind::MeanPayoff, 1)));
}

TEST(Synthesize, EscalatingScheduleForTheFairAverage)
{
    auto a = pump_then_fair();
    auto s = std::get<EscalatingSchedule>(synthesize(a, {GameKind::MeanPayoff, FairnessSide::OnP1, 1}, Owner::P1));
    ASSERT_EQ(s.rules.size(), 1u);
    EXPECT_EQ(s.rules[0].node, 0u);
    EXPECT_EQ(s.rules[0].preferred, 0u);
    EXPECT_EQ(s.rules[0].fair, std::vector<NodeId>{1});
}

TEST(Synthesize, TruncationsImproveMonotonically)
{
    auto a = pump_then_fair();
    auto s = std::get<EscalatingSchedule>(synthesize(a, {GameKind::MeanPayoff, FairnessSide::OnP1, 1}, Owner::P1));
    Rational prev = -100;
    for (std::uint64_t r : {4, 8, 16, 32}) {
        auto m = truncate(s, r);
        auto l = simulate(a, m, idle(a, Owner::P2), 0);
        EXPECT_TRUE(l.fair_on_cycle);
        EXPECT_GT(l.cycle_mean, prev);
        EXPECT_EQ(l.cycle_mean, Rational(Integer(r) - 4, Integer(r) + 2));
        prev = l.cycle_mean;
        FairObjectiveSpec at{GameKind::MeanPayoff, FairnessSide::OnP1, l.cycle_mean};
        EXPECT_TRUE(std::holds_alternative<Verified>(verify_machine(a, m, at)));
        at.threshold = l.cycle_mean + Rational(Integer(1), Integer(1000));
        EXPECT_TRUE(std::holds_alternative<CounterPlay>(verify_machine(a, m, at)));
    }
}

TEST(Synthesize, FinitizeReachesTheTargetWithinEpsilon)
{
    auto a = pump_then_fair();
    auto s = std::get<EscalatingSchedule>(synthesize(a, {GameKind::MeanPayoff, FairnessSide::OnP1, 1}, Owner::P1));
    auto m = finitize(s, Rational(Integer(1), Integer(10)));
    auto l = simulate(a, m, idle(a, Owner::P2), 0);
    EXPECT_GE(l.cycle_mean, Rational(Integer(9), Integer(10)));
    EXPECT_THROW(finitize(s, 0), std::invalid_argument);
    // a margin spanning the whole weight range needs no pumping at all
    EXPECT_EQ(finitize_rounds(s, Rational(8)), 0u);
}

TEST(Synthesize, EnergyMachineForThePumpArena)
{
    auto a = pump_then_fair();
    auto m = std::get<StrategyMachine>(synthesize(a, {GameKind::Energy, FairnessSide::OnP1, 0}, Owner::P1));
    const auto& r = m.rules[0];
    ASSERT_EQ(r.size(), 33u);
    std::uint32_t mem = 0;
    for (int i = 0; i < 32; i++) {
        EXPECT_EQ(r[mem].move, 0u);
        mem = r[mem].next;
    }
    EXPECT_EQ(r[mem].move, 1u);
    EXPECT_EQ(r[mem].next, 0u);
    auto l = simulate(a, m, idle(a, Owner::P2), 0);
    EXPECT_EQ(l.min_prefix_weight, 0);
}

TEST(Synthesize, MemorylessWhereTheCitedResultsSaySo)
{
    auto esc = testing::fair_escape_loop();
    auto m = std::get<StrategyMachine>(synthesize(esc, {GameKind::Energy, FairnessSide::OnP2, 0}, Owner::P1));
    EXPECT_TRUE(m.is_positional());
    EXPECT_EQ(m.domain, std::vector<NodeId>{*esc.find_node("r")});
    EXPECT_THROW(synthesize(esc, {GameKind::Energy, FairnessSide::OnP2, 0}, Owner::P1, {0}), std::invalid_argument);
    for (std::uint64_t s = 0; s < 40; s++) {
        auto a = corpus_arena(s, 5, 3, FairnessSide::OnP1);
        auto p2 = std::get<StrategyMachine>(synthesize(a, {GameKind::MeanPayoff, FairnessSide::OnP1, 0}, Owner::P2));
        EXPECT_TRUE(p2.is_positional());
    }
}

TEST(Machines, SerializeThenParse)
{
    auto a = pump_then_fair();
    auto m = pump_machine(a, 4);
    auto text = serialize_machine(a, m);
    EXPECT_EQ(parse_machine(a, text), m);
    EXPECT_THROW(parse_machine(a, "machine p3\n"), ParseError);
    EXPECT_THROW(parse_machine(a, "machine p1\nstate 0 at z -> q next 0\n"), ParseError);
}

// Every positional strategy of the player who owns no machine nodes.
std::vector<StrategyMachine>
all_positional(const Arena& a, Owner o)
{
    std::vector<StrategyMachine> out;
    PositionalStrategy s{o, std::vector<NodeId>(a.num_nodes(), kNoNode)};
    std::vector<NodeId> mine;
    for (NodeId q = 0; q < a.num_nodes(); q++)
        if (a.owner(q) == o)
            mine.push_back(q);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == mine.size()) {
            out.push_back(StrategyMachine::from_positional(a, s));
            return;
        }
        for (auto t : a.successors(mine[i])) {
            s.move[mine[i]] = t;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

TEST(Synthesize, FairEnergyMachinesStayAboveTheReportedCredit)
{
    for (std::uint64_t s = 0; s < 60; s++) {
        auto a = corpus_arena(s, 3, 3, FairnessSide::OnP1);
        FairObjectiveSpec spec{GameKind::Energy, FairnessSide::OnP1, 0};
        auto rep = solve_fair(a, spec);
        auto m = std::get<StrategyMachine>(synthesize(a, spec, Owner::P1));
        ASSERT_TRUE(std::holds_alternative<Verified>(verify_machine(a, m, spec)));
        for (const auto& tau : all_positional(a, Owner::P2))
            for (auto q : m.domain) {
                auto l = simulate(a, m, tau, q);
                EXPECT_GE(l.min_prefix_weight, -*rep.regions.credit[q]) << "seed " << s << " node " << a.name(q);
            }
    }
}

TEST(Verify, SynthesizedMachinesOnTheCorpus)
{
    for (std::uint64_t s = 0; s < 80; s++) {
        for (auto side : {FairnessSide::OnP1, FairnessSide::OnP2}) {
            auto a = corpus_arena(s, 4, 3, side);
            for (auto who : {Owner::P1, Owner::P2})
                for (auto game : {GameKind::MeanPayoff, GameKind::Energy}) {
                    FairObjectiveSpec spec{game, side, 0};
                    auto syn = synthesize(a, spec, who);
                    if (auto* sched = std::get_if<EscalatingSchedule>(&syn)) {
                        spec.threshold = spec.threshold - Rational(Integer(1), Integer(4));
                        syn = finitize(*sched, Rational(Integer(1), Integer(4)));
                    }
                    VerifyOptions o;
                    o.circulation_bound = false;
                    EXPECT_TRUE(std::holds_alternative<Verified>(verify_machine(a, std::get<StrategyMachine>(syn), spec, o)))
                        << "seed " << s;
                }
        }
    }
}

TEST(LinearProgram, SmallOptima)
{
    using detail::lp_maximize;
    // max x + y with x + 2y + s = 4, 3x + y + t = 6
    auto best = lp_maximize({{1, 2, 1, 0}, {3, 1, 0, 1}}, {4, 6}, {1, 1, 0, 0});
    ASSERT_TRUE(best);
    EXPECT_EQ(*best, Rational(Integer(14), Integer(5)));
    EXPECT_THROW(lp_maximize({{1, 1}}, {Rational(-1)}, {1, 1}), std::invalid_argument);
    EXPECT_FALSE(lp_maximize({{1, -1}}, {0}, {1, 0}));          // unbounded
    EXPECT_FALSE(lp_maximize({{1, 1}, {1, 1}}, {1, 2}, {1, 0})); // infeasible
    // redundant and degenerate rows
    auto deg = lp_maximize({{1, -1, 0}, {-1, 1, 0}, {1, 1, 1}}, {0, 0, 1}, {0, 0, 1});
    ASSERT_TRUE(deg);
    EXPECT_EQ(*deg, 1);
}

TEST(CirculationBound, NeverContradictsTheProductSearch)
{
    std::mt19937_64 rng(19);
    std::size_t refuted = 0;
    for (std::uint64_t s = 0; s < 120; s++) {
        const auto side = s % 2 ? FairnessSide::OnP1 : FairnessSide::OnP2;
        auto a = corpus_arena(s, 5, 3, side);
        for (auto who : {Owner::P1, Owner::P2}) {
            for (auto game : {GameKind::MeanPayoff, GameKind::Energy}) {
                FairObjectiveSpec spec{game, side, game == GameKind::Energy ? Rational(0) : Rational(static_cast<int>(rng() % 3) - 1)};
                auto syn = synthesize(a, spec, who);
                if (auto* sched = std::get_if<EscalatingSchedule>(&syn)) {
                    spec.threshold = spec.threshold - Rational(Integer(1), Integer(2));
                    syn = finitize(*sched, Rational(Integer(1), Integer(2)));
                }
                auto base = std::get<StrategyMachine>(syn);
                if (base.domain.empty())
                    continue;
                for (int trial = 0; trial < 4; trial++) {
                    auto m = base;
                    for (NodeId q = 0; q < a.num_nodes(); q++) {
                        if (a.owner(q) != who)
                            continue;
                        auto& r = m.rules[q];
                        if (r.size() > 5) {
                            std::vector<LocalRule> small;
                            for (std::uint32_t i = 0; i < 5; i++)
                                small.push_back({r[i * r.size() / 5].move, (i + 1) % 5});
                            r = small;
                        }
                        auto succ = a.successors(q);
                        for (auto& x : r)
                            if (rng() % 3 == 0)
                                x.move = succ[rng() % succ.size()];
                    }
                    bool fair_owned = side == (who == Owner::P1 ? FairnessSide::OnP1 : FairnessSide::OnP2);
                    bool bound = detail::circulation_certificate(a, m, m.domain, game, spec.threshold,
                                                                 fair_owned && a.has_fair_edges());
                    VerifyOptions o;
                    o.circulation_bound = false;
                    auto v = verify_machine(a, m, spec, o);
                    if (std::holds_alternative<CounterPlay>(v)) {
                        refuted++;
                        EXPECT_FALSE(bound) << "seed " << s << "\n" << serialize_machine(a, m);
                    }
                }
            }
        }
    }
    EXPECT_GT(refuted, 50u);
}

} // namespace
} // namespace fairgames

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

#include <gtest/gtest.h>

#include "fairgames/fair.hpp"
#include "fairgames/oracle.hpp"
#include "support.hpp"

namespace fairgames {
namespace {

using testing::corpus_arena;
using testing::names_of;

using Names = std::vector<std::string>;

TEST(Oracle, WorkedExamples)
{
    // the fair edge weighs 4, one above the default weight budget
    OracleBudget four;
    four.max_abs_weight = 4;
    auto pump = testing::pump_then_fair();
    EXPECT_THROW(oracle_fair(pump, {GameKind::MeanPayoff, FairnessSide::OnP1, 0}), OracleBudgetExceeded);
    EXPECT_EQ(oracle_fair(pump, {GameKind::MeanPayoff, FairnessSide::OnP1, 0}, four).win1().size(), 2u);
    EXPECT_EQ(oracle_fair_values(pump, FairnessSide::OnP1, four), (ValueTable{1, 1}));

    auto esc = testing::fair_escape_loop();
    auto r = oracle_fair(esc, {GameKind::Energy, FairnessSide::OnP2, 0});
    EXPECT_EQ(names_of(esc, r.win1()), Names{"r"});
    EXPECT_TRUE(r.win2().empty());
    EXPECT_EQ(names_of(esc, r.undetermined()), Names{"q"});

    auto two = testing::zero_and_negative_fair();
    EXPECT_EQ(names_of(two, oracle_fair(two, {GameKind::Energy, FairnessSide::OnP1, 0}).win2()), (Names{"q", "r"}));
    auto one = testing::zero_fair_loop();
    EXPECT_EQ(oracle_fair(one, {GameKind::Energy, FairnessSide::OnP1, 0}).win1().size(), 1u);
}

TEST(Oracle, RegularExamples)
{
    auto two = parse_arena("arena v1\nnode a p1\nnode b p2\nedge a b 1\nedge b a -1\n");
    EXPECT_EQ(oracle_regular(two, GameKind::MeanPayoff, 0).win1().size(), 2u);
    auto esc = testing::fair_escape_loop();
    EXPECT_EQ(names_of(esc, oracle_regular(esc, GameKind::Energy, 0).win1()), Names{"r"});
    EXPECT_EQ(oracle_regular(testing::single_loop(-1), GameKind::Energy, 0).win2().size(), 1u);
}

TEST(Oracle, RegularCreditsOnAChain)
{
    auto a = parse_arena("arena v1\nnode q p1\nnode p p1\nedge q p -3\nedge p q 3\n");
    auto r = oracle_regular(a, GameKind::Energy, 0);
    EXPECT_EQ(*r.credit[0], 3);
    EXPECT_EQ(*r.credit[1], 0);
}

TEST(Oracle, BudgetIsEnforced)
{
    GenOptions g;
    g.nodes = 7;
    g.seed = 1;
    EXPECT_THROW(oracle_regular(random_arena(g), GameKind::Energy, 0), OracleBudgetExceeded);
    EXPECT_THROW(oracle_regular(testing::single_loop(-4), GameKind::Energy, 0), OracleBudgetExceeded);
    OracleBudget wide;
    wide.max_abs_weight = 4;
    EXPECT_NO_THROW(oracle_regular(testing::single_loop(-4), GameKind::Energy, 0, wide));
}

TEST(Oracle, FairlessArenasMatchTheRegularOracle)
{
    for (std::uint64_t s = 0; s < 80; s++) {
        auto a = corpus_arena(s, 5, 3, FairnessSide::None);
        for (auto side : {FairnessSide::OnP1, FairnessSide::OnP2}) {
            for (Rational v : {Rational(-1), Rational(0), Rational(Integer(2), Integer(3))})
                EXPECT_EQ(oracle_fair(a, {GameKind::MeanPayoff, side, v}).region,
                          oracle_regular(a, GameKind::MeanPayoff, v).region);
            EXPECT_EQ(oracle_fair(a, {GameKind::Energy, side, 0}).region,
                      oracle_regular(a, GameKind::Energy, 0).region);
            EXPECT_EQ(oracle_fair_values(a, side), oracle_regular_values(a));
        }
    }
}

TEST(Oracle, WalkClampIsStable)
{
    for (std::uint64_t s = 0; s < 120; s++) {
        auto a = corpus_arena(s, 5, 3, FairnessSide::OnP1);
        const Integer base = 4 * Integer(a.num_nodes() * a.num_nodes()) * a.max_weight();
        OracleBudget doubled;
        doubled.walk_energy_clamp = 2 * base;
        FairObjectiveSpec spec{GameKind::Energy, FairnessSide::OnP1, 0};
        EXPECT_EQ(oracle_fair(a, spec).region, oracle_fair(a, spec, doubled).region) << "seed " << s;
        auto b = corpus_arena(s, 5, 3, FairnessSide::OnP2);
        spec.side = FairnessSide::OnP2;
        EXPECT_EQ(oracle_fair(b, spec).region, oracle_fair(b, spec, doubled).region) << "seed " << s;
    }
}

TEST(Oracle, AgreesWithTheGadgetSolvers)
{
    for (std::uint64_t s = 0; s < 200; s++) {
        for (auto side : {FairnessSide::OnP1, FairnessSide::OnP2}) {
            auto a = corpus_arena(s, 5, 3, side);
            for (Rational v : {Rational(-1), Rational(0), Rational(1)})
                EXPECT_EQ(solve_fair_mp(a, side, v).regions.region,
                          oracle_fair(a, {GameKind::MeanPayoff, side, v}).region)
                    << "seed " << s;
            EXPECT_EQ(solve_fair_energy(a, side).regions.region, oracle_fair(a, {GameKind::Energy, side, 0}).region)
                << "seed " << s;
        }
    }
}

} // namespace
} // namespace fairgames

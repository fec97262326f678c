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

#include "fairgames/meanpayoff.hpp"
#include "fairgames/oracle.hpp"
#include "support.hpp"

namespace fairgames {
namespace {

using testing::corpus_arena;

const Arena kTwoCycle = parse_arena("arena v1\nnode a p1\nnode b p2\nedge a b 1\nedge b a -1\n");

TEST(MeanPayoff, TwoCycleThresholds)
{
    EXPECT_EQ(solve_mp_threshold(kTwoCycle, 0).regions.win1().size(), 2u);
    EXPECT_EQ(solve_mp_threshold(kTwoCycle, Rational(Integer(1), Integer(2))).regions.win2().size(), 2u);
}

TEST(MeanPayoff, PumpArenaIgnoringFairness)
{
    auto a = testing::pump_then_fair();
    EXPECT_EQ(solve_mp_threshold(a, 1).regions.win1().size(), 2u);
    EXPECT_EQ(optimal_values(a), (ValueTable{1, 1}));
}

TEST(MeanPayoff, SmallValues)
{
    EXPECT_EQ(optimal_values(testing::single_loop(-3)), ValueTable{-3});
    auto tri = parse_arena("arena v1\nnode a p1\nnode b p1\nnode c p1\n"
                           "edge a b 1\nedge b c 0\nedge c a -1\nedge a a 0\n");
    EXPECT_EQ(optimal_values(tri), (ValueTable{0, 0, 0}));
    auto thirds = parse_arena("arena v1\nnode a p2\nnode b p1\nnode c p1\n"
                              "edge a b 1\nedge b c 1\nedge c a -1\nedge a a 1\n");
    EXPECT_EQ(optimal_values(thirds)[0], Rational(Integer(1), Integer(3)));
}

// Every rational with denominator at most n in [-W, W], ascending.
std::vector<Rational>
grid(std::size_t n, const Integer& W)
{
    std::vector<Rational> out;
    for (std::size_t b = 1; b <= n; b++)
        for (Integer a = -W * b; a <= W * b; a++)
            out.emplace_back(a, Integer(b));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TEST(MeanPayoff, ValuesAreTheLastWinningGridPoint)
{
    for (std::uint64_t s = 0; s < 60; s++) {
        auto a = corpus_arena(s, 5, 3, FairnessSide::None);
        auto vals = optimal_values(a);
        auto g = grid(a.num_nodes(), a.max_weight());
        for (NodeId q = 0; q < a.num_nodes(); q++) {
            EXPECT_LE(vals[q].den(), a.num_nodes());
            EXPECT_TRUE(solve_mp_threshold(a, vals[q]).regions.in_win1(q));
            auto next = std::upper_bound(g.begin(), g.end(), vals[q]);
            if (next != g.end()) {
                EXPECT_FALSE(solve_mp_threshold(a, *next).regions.in_win1(q)) << "seed " << s;
            }
        }
    }
}

TEST(MeanPayoff, ThresholdMonotonicity)
{
    for (std::uint64_t s = 0; s < 40; s++) {
        auto a = corpus_arena(s, 6, 3, FairnessSide::None);
        auto g = grid(a.num_nodes(), a.max_weight());
        std::vector<Region> prev(a.num_nodes(), Region::Win1);
        for (std::size_t i = 0; i < g.size(); i += 3) {
            auto cur = solve_mp_threshold(a, g[i]).regions.region;
            for (NodeId q = 0; q < a.num_nodes(); q++)
                if (cur[q] == Region::Win1) {
                    EXPECT_EQ(prev[q], Region::Win1) << "seed " << s << " v=" << g[i];
                }
            prev = cur;
        }
    }
}

TEST(MeanPayoff, ShiftAndScaleEquivariance)
{
    for (std::uint64_t s = 0; s < 40; s++) {
        auto a = corpus_arena(s, 5, 3, FairnessSide::None);
        auto vals = optimal_values(a);
        auto shifted = optimal_values(shift_and_scale(a, Rational(2)));
        auto scaled = optimal_values(scale_weights(a, 3));
        for (NodeId q = 0; q < a.num_nodes(); q++) {
            EXPECT_EQ(shifted[q], vals[q] - 2);
            EXPECT_EQ(scaled[q], vals[q] * 3);
        }
    }
}

TEST(MeanPayoff, MatchesTheOracle)
{
    for (std::uint64_t s = 0; s < 200; s++) {
        auto a = corpus_arena(s, 5, 3, FairnessSide::None);
        EXPECT_EQ(optimal_values(a), oracle_regular_values(a)) << "seed " << s;
        for (Rational v : {Rational(-1), Rational(Integer(-1), Integer(3)), Rational(1)})
            EXPECT_EQ(solve_mp_threshold(a, v).regions.region, oracle_regular(a, GameKind::MeanPayoff, v).region);
    }
}

} // namespace
} // namespace fairgames

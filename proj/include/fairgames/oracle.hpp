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

#pragma once

#include <optional>
#include <stdexcept>

#include "fairgames/fair.hpp"

namespace fairgames {

/**
 * Limits of the brute-force oracle. The walk clamp bounds the weights
 * tracked by the covering-walk search; nullopt means n*n*W*4.
 */
struct OracleBudget
{
    std::size_t max_nodes = 6;
    Integer max_abs_weight = 3;
    std::optional<Integer> walk_energy_clamp;
};

class OracleBudgetExceeded : public std::length_error
{
public:
    using std::length_error::length_error;
};

/**
 * Regular game by enumeration of player 1 positional strategies; each one
 * is checked against every simple cycle player 2 can reach, which covers
 * all positional responses. Energy regions carry minimal credits.
 */
WinRegions oracle_regular(const Arena& a, GameKind game, const Rational& v, const OracleBudget& b = {});

/// max over player 1 strategies of the least reachable cycle mean.
ValueTable oracle_regular_values(const Arena& a, const OracleBudget& b = {});

/**
 * Fair game by enumeration of the positional strategies of the player
 * without fair nodes, and exhaustive analysis of the fair-closed strongly
 * connected node sets of the remaining one-player graph.
 */
WinRegions oracle_fair(const Arena& a, const FairObjectiveSpec& spec, const OracleBudget& b = {});

/// Optimal values of the fair mean-payoff game.
ValueTable oracle_fair_values(const Arena& a, FairnessSide side, const OracleBudget& b = {});

} // namespace fairgames

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

#include <string>
#include <vector>

#include "fairgames/gadgets.hpp"
#include "fairgames/meanpayoff.hpp"

namespace fairgames {

enum class GameKind { MeanPayoff, Energy };

const char* to_string(GameKind g);

/// Objective of a fair game. The threshold is ignored for energy games.
struct FairObjectiveSpec
{
    GameKind game = GameKind::MeanPayoff;
    FairnessSide side = FairnessSide::OnP1;
    Rational threshold = 0;
};

struct DeterminacyVerdict
{
    bool determined = true;
    std::vector<NodeId> witnesses; // undetermined nodes

    bool operator==(const DeterminacyVerdict&) const = default;
};

struct FairSolveReport
{
    WinRegions regions;
    std::string route;
    DeterminacyVerdict determinacy;
};

/**
 * Fair mean-payoff game with threshold v: shifts by v, builds the matching
 * gadget and solves it as a regular game. Always determined.
 */
FairSolveReport solve_fair_mp(const Arena& a, FairnessSide side, const Rational& v);

/// Largest winning threshold per node of the fair mean-payoff game.
ValueTable fair_mp_optimal_values(const Arena& a, FairnessSide side);

/**
 * Fair energy game. With fairness on player 1 the energy gadget is solved.
 * With fairness on player 2, win1 comes from the regular energy game and
 * win2 from the fair mean-payoff game at threshold 0; the remaining nodes
 * are undetermined.
 */
FairSolveReport solve_fair_energy(const Arena& a, FairnessSide side);

/// Dispatches on spec.game.
FairSolveReport solve_fair(const Arena& a, const FairObjectiveSpec& spec);

DeterminacyVerdict check_determinacy(const FairSolveReport& report);

/// Throws std::invalid_argument unless side is OnP1/OnP2 and compatible with the arena.
void require_side(const Arena& a, FairnessSide side);

} // namespace fairgames

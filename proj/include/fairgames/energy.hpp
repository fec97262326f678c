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
#include <vector>

#include "fairgames/arena.hpp"

namespace fairgames {

enum class Region : std::uint8_t { Win1, Win2, Undetermined };

/**
 * Partition of the nodes into winning regions, with optional per-node
 * minimal credits (energy) or optimal values (mean-payoff).
 */
struct WinRegions
{
    std::vector<Region> region;
    std::vector<std::optional<Integer>> credit;
    std::vector<std::optional<Rational>> value;

    WinRegions() = default;
    explicit WinRegions(std::size_t n) : region(n, Region::Undetermined), credit(n), value(n) {}

    std::size_t size() const { return region.size(); }
    std::vector<NodeId> win1() const { return nodes_in(Region::Win1); }
    std::vector<NodeId> win2() const { return nodes_in(Region::Win2); }
    std::vector<NodeId> undetermined() const { return nodes_in(Region::Undetermined); }
    std::vector<NodeId> nodes_in(Region r) const;
    bool in_win1(NodeId q) const { return region[q] == Region::Win1; }
    bool in_win2(NodeId q) const { return region[q] == Region::Win2; }
};

/// Memoryless strategy; move[q] is kNoNode for nodes of the other player.
struct PositionalStrategy
{
    Owner owner = Owner::P1;
    std::vector<NodeId> move;
};

struct EnergySolution
{
    WinRegions regions;
    PositionalStrategy p1;
    PositionalStrategy p2;
};

/**
 * Solves the energy game with unknown initial credit, ignoring fairness.
 *
 * Least fixpoint of the lifting operator with cap n*W. Credits are the
 * minimal sufficient initial credits on win1. Player 1 moves to a successor
 * realising the fixpoint; player 2 follows the same rule in the dual game
 * with swapped roles and weights -(n*w + 1).
 */
EnergySolution solve_energy(const Arena& a);

/// Least initial credit for player 1 from q, or nullopt if q is losing.
std::optional<Integer> min_credit(const Arena& a, NodeId q);

} // namespace fairgames

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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fairgames/energy.hpp"
#include "fairgames/fair.hpp"

namespace fairgames {

/// One row of a node-local memory table.
struct LocalRule
{
    NodeId move;
    std::uint32_t next;

    bool operator==(const LocalRule&) const = default;
};

/**
 * Finite-memory strategy with memory local to each node of its owner.
 *
 * The global memory is the tuple of local memories, all starting at 0. On
 * leaving an owner node q with local memory m the machine moves to
 * rules[q][m].move and sets the memory of q to rules[q][m].next; the other
 * local memories are untouched.
 */
struct StrategyMachine
{
    Owner owner = Owner::P1;
    std::vector<std::vector<LocalRule>> rules;
    /// Nodes the machine claims to win from.
    std::vector<NodeId> domain;

    std::size_t memory_size(NodeId q) const { return rules[q].empty() ? 1 : rules[q].size(); }
    /// Sum of local memory sizes over owner nodes.
    std::size_t total_memory() const;
    bool is_positional() const;

    static StrategyMachine from_positional(const Arena& a, const PositionalStrategy& s);

    bool operator==(const StrategyMachine&) const = default;
};

/**
 * Memory table playing `preferred` k times, then the next fair successor in
 * round-robin order. States are i*f + j with i in [0, k] the preferred-move
 * counter and j in [0, f) the fair pointer.
 */
std::vector<LocalRule> periodic_rule(NodeId preferred, const std::vector<NodeId>& fair, std::uint64_t k);

std::string serialize_machine(const Arena& a, const StrategyMachine& s);
StrategyMachine parse_machine(const Arena& a, std::string_view text);

/// Infinite-memory schedule: in round i, play the preferred successor i times, then one fair successor.
struct EscalatingRule
{
    NodeId node;
    NodeId preferred;
    std::vector<NodeId> fair; // ascending node id
};

struct EscalatingSchedule
{
    Owner owner = Owner::P1;
    /// Moves at owner nodes without an escalating rule.
    PositionalStrategy base;
    std::vector<EscalatingRule> rules;
    std::vector<NodeId> domain;
    /// Threshold the schedule wins in the limit.
    Rational threshold = 0;
    /// Bound on the mean deficit of a k-truncation, times k.
    Rational drift = 0;
    /// Smallest possible cycle mean of the arena, -W.
    Rational floor_value = 0;
};

/// Fixed-k periodic machine from a schedule; k = r gives round r forever.
StrategyMachine truncate(const EscalatingSchedule& s, std::uint64_t r);

/// Periodic machine whose value is at least threshold - epsilon.
StrategyMachine finitize(const EscalatingSchedule& s, const Rational& epsilon);

/// Round count used by finitize().
std::uint64_t finitize_rounds(const EscalatingSchedule& s, const Rational& epsilon);

using SynthesizedStrategy = std::variant<StrategyMachine, EscalatingSchedule>;

/**
 * Builds the strategy of `player` for the fair game `spec` from the
 * positional strategies of the matching gadget or regular game. The result
 * is total on the player's nodes; its domain is the player's winning region.
 * Throws std::invalid_argument if some node in `targets` is not winning.
 */
SynthesizedStrategy synthesize(const Arena& a, const FairObjectiveSpec& spec, Owner player,
                               const std::vector<NodeId>& targets = {});

struct LassoAnalysis
{
    std::vector<NodeId> prefix;
    std::vector<NodeId> cycle;
    bool fair_on_cycle = false;
    Rational cycle_mean = 0;
    Integer cycle_weight = 0;
    /// Least running weight over prefix and one cycle, starting from 0.
    Integer min_prefix_weight = 0;
};

/// Weights, fairness and means of the play prefix . cycle^omega.
LassoAnalysis analyze_lasso(const Arena& a, std::vector<NodeId> prefix, std::vector<NodeId> cycle);

/**
 * Plays s1 (player 1) against s2 (player 2) from start until the joint
 * state repeats. Throws std::runtime_error if max_steps is exceeded.
 */
LassoAnalysis simulate(const Arena& a, const StrategyMachine& s1, const StrategyMachine& s2, NodeId start,
                       std::uint64_t max_steps = 50'000'000);

struct Verified
{
    /// States of the explored product; zero when the circulation bound
    /// settled the question without building it.
    std::size_t product_states = 0;
    bool by_circulation = false;
};

struct CounterPlay
{
    LassoAnalysis lasso;
    NodeId start = kNoNode;
    std::string reason;
};

using Verdict = std::variant<Verified, CounterPlay>;

struct VerifyOptions
{
    std::size_t max_states = 4'000'000;
    /// Start nodes; empty means the machine's domain.
    std::vector<NodeId> starts;
    /// Try the product-free circulation bound first.
    bool circulation_bound = true;
};

/**
 * Checks that no opponent behaviour against s violates spec from the
 * machine's domain.
 *
 * First tries an exact linear bound: every product cycle induces an arena
 * circulation in which each owner node emits whole orbits of its memory, so
 * if no such circulation loses, no product cycle does. Otherwise builds the
 * product of the arena with the machine memory and searches it for a losing
 * cycle or end component; counterplays always come from this search.
 * Throws std::length_error if the product exceeds max_states.
 */
Verdict verify_machine(const Arena& a, const StrategyMachine& s, const FairObjectiveSpec& spec,
                       const VerifyOptions& opt = {});

/// Regular (fairness-ignoring) objective; same product check.
Verdict verify_machine_regular(const Arena& a, const StrategyMachine& s, GameKind game, const Rational& threshold,
                               const VerifyOptions& opt = {});

} // namespace fairgames

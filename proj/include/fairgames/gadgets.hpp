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
#include "fairgames/energy.hpp"

namespace fairgames {

enum class GadgetKind { FairMP1, FairMP2, FairEnergy1 };

const char* to_string(GadgetKind k);

enum class BranchRole : std::uint8_t {
    Copied,
    FairBranch,
    SimulationBranch,
    EscapeBranch,
    ValueBranch,
    PositiveValue,
    ZeroValue,
};

const char* to_string(BranchRole r);

/// Gadget nodes that replace one fair node. Unused slots hold kNoNode.
struct GadgetParts
{
    NodeId root = kNoNode;
    NodeId left = kNoNode;
    NodeId right = kNoNode;
    NodeId fair = kNoNode;
    NodeId sim = kNoNode;  // FairMP1 / FairMP2
    NodeId val = kNoNode;  // FairEnergy1
    NodeId pos = kNoNode;  // FairEnergy1
    NodeId zero = kNoNode; // FairEnergy1
    NodeId esc = kNoNode;
};

struct GadgetMap
{
    GadgetKind kind = GadgetKind::FairMP1;
    std::size_t original_nodes = 0;
    Integer original_max_weight = 0;
    /// Original id of each gadget node, kNoNode for fresh nodes.
    std::vector<NodeId> original_of;
    /// Role of each gadget edge, by edge index of the gadget arena.
    std::vector<BranchRole> branch_role;
    /// 1 for the mean-payoff gadgets, n+1 for the energy gadget.
    Integer weight_scale = 1;
    /// Indexed by original node; set exactly for fair nodes.
    std::vector<std::optional<GadgetParts>> parts;
};

struct Gadget
{
    Arena arena;
    GadgetMap map;
};

struct GadgetBounds
{
    std::size_t max_nodes;
    Integer max_weight;
};

/// Size bounds guaranteed for the gadget of an arena with n nodes and weight bound W.
GadgetBounds gadget_bounds(GadgetKind kind, std::size_t n, const Integer& W);

/**
 * Replaces every fair node by its gadget so that a regular solver decides
 * the fair game. Original nodes keep their ids; fresh nodes follow.
 * Throws std::invalid_argument if the fairness side does not match kind.
 */
Gadget build_gadget(const Arena& a, GadgetKind kind);

/// Restricts gadget regions to the original nodes; credits are divided by
/// the weight scale, rounding up.
WinRegions project_regions(const WinRegions& r, const GadgetMap& m);

} // namespace fairgames

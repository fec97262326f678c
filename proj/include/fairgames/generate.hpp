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

#include "fairgames/arena.hpp"

namespace fairgames {

struct GenOptions
{
    std::size_t nodes = 4;
    std::int64_t max_weight = 3;
    FairnessSide fair = FairnessSide::None;
    /// Probability of each ordered pair (self-loops included) becoming an edge.
    double density = 0.4;
    /// Probability that an edge leaving a node of the fair player is fair.
    double fair_ratio = 0.5;
    std::uint64_t seed = 0;
};

/**
 * Seeded random arena. Draws use raw mt19937_64 output so the result is the
 * same on every platform. Nodes without successors get one random edge.
 */
Arena random_arena(const GenOptions& opt);

} // namespace fairgames

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

#include "fairgames/arena.hpp"
#include "fairgames/generate.hpp"

namespace fairgames::testing {

/// q pumps a +1 self-loop; the fair edge q -> p costs 4; p returns for free.
inline Arena
pump_then_fair()
{
    return parse_arena("arena v1\n"
                       "node q p1\nnode p p1\n"
                       "edge q q 1\nedge q p -4 fair\nedge p q 0\n");
}

/// Player 2 loops -1 at q, fairness forces the 0 exit to the 0-loop at r.
inline Arena
fair_escape_loop()
{
    return parse_arena("arena v1\n"
                       "node q p2\nnode r p1\n"
                       "edge q q -1\nedge q r 0 fair\nedge r r 0\n");
}

/// Player 1 node with a single fair 0-loop.
inline Arena
zero_fair_loop()
{
    return parse_arena("arena v1\nnode q p1\nedge q q 0 fair\n");
}

/// zero_fair_loop plus a second fair option of weight -1, routed through r
/// because parallel self-loops are not expressible.
inline Arena
zero_and_negative_fair()
{
    return parse_arena("arena v1\n"
                       "node q p1\nnode r p1\n"
                       "edge q q 0 fair\nedge q r -1 fair\nedge r q 0\n");
}

inline Arena
single_loop(int w, Owner o = Owner::P1)
{
    return parse_arena(std::string("arena v1\nnode q ") + to_string(o) + "\nedge q q " + std::to_string(w) + "\n");
}

/// Seeded arena of the small random corpus.
inline Arena
corpus_arena(std::uint64_t seed, std::size_t max_nodes, std::int64_t max_weight, FairnessSide side)
{
    GenOptions g;
    g.seed = seed * 7919 + 17;
    g.nodes = 1 + seed % max_nodes;
    g.max_weight = 1 + static_cast<std::int64_t>(seed / max_nodes) % max_weight;
    g.density = 0.25 + 0.1 * static_cast<double>(seed % 4);
    g.fair = side;
    return random_arena(g);
}

inline std::vector<std::string>
names_of(const Arena& a, const std::vector<NodeId>& ids)
{
    std::vector<std::string> out;
    for (auto q : ids)
        out.push_back(a.name(q));
    return out;
}

} // namespace fairgames::testing

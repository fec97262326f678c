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
#include <vector>

#include "fairgames/arena.hpp"

namespace fairgames::detail {

/**
 * Compressed adjacency view of an arena with weights converted to Scalar.
 * Scalar is std::int64_t when bounds allow, otherwise Integer.
 */
template <typename Scalar>
struct Digraph
{
    std::size_t n = 0;
    std::vector<std::uint8_t> owner; // 0 = P1, 1 = P2
    std::vector<std::uint32_t> off;
    std::vector<std::uint32_t> dst;
    std::vector<Scalar> w;
    std::vector<std::uint32_t> roff;
    std::vector<std::uint32_t> rsrc;

    explicit Digraph(const Arena& a) : n(a.num_nodes())
    {
        owner.resize(n);
        off.resize(n + 1);
        for (NodeId q = 0; q < n; q++) {
            owner[q] = a.owner(q) == Owner::P1 ? 0 : 1;
            off[q] = static_cast<std::uint32_t>(a.out_begin(q));
        }
        off[n] = static_cast<std::uint32_t>(a.num_edges());
        dst.reserve(a.num_edges());
        w.reserve(a.num_edges());
        roff.assign(n + 1, 0);
        for (auto& e : a.edges()) {
            dst.push_back(e.dst);
            w.push_back(static_cast<Scalar>(e.weight));
            roff[e.dst + 1]++;
        }
        for (std::size_t i = 0; i < n; i++)
            roff[i + 1] += roff[i];
        rsrc.resize(a.num_edges());
        std::vector<std::uint32_t> fill(roff.begin(), roff.end() - 1);
        for (auto& e : a.edges())
            rsrc[fill[e.dst]++] = e.src;
    }
};

/// True when every quantity bounded by `bound` fits comfortably in int64.
inline bool
fits_machine_word(const Integer& bound)
{
    static const Integer limit = Integer(1) << 60;
    return bound < limit;
}

} // namespace fairgames::detail

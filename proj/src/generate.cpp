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

#include "fairgames/generate.hpp"

#include <random>
#include <stdexcept>

namespace fairgames {

namespace {

class Draw
{
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t m) { return rng_() % m; }
    bool chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }
    std::int64_t between(std::int64_t lo, std::int64_t hi)
    {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 rng_;
};

} // namespace

Arena
random_arena(const GenOptions& opt)
{
    if (opt.nodes == 0)
        throw std::invalid_argument("arena needs at least one node");
    if (opt.max_weight < 0)
        throw std::invalid_argument("max weight must be nonnegative");
    if (opt.fair == FairnessSide::Mixed)
        throw std::invalid_argument("generator supports fairness on one side only");
    Draw d(opt.seed);
    const auto n = opt.nodes;
    ArenaBuilder b;
    std::vector<Owner> owner(n);
    for (std::size_t i = 0; i < n; i++) {
        owner[i] = d.below(2) == 0 ? Owner::P1 : Owner::P2;
        b.add_node("v" + std::to_string(i), owner[i]);
    }
    const Owner fair_owner = opt.fair == FairnessSide::OnP1 ? Owner::P1 : Owner::P2;
    for (std::size_t i = 0; i < n; i++) {
        std::vector<std::size_t> targets;
        for (std::size_t j = 0; j < n; j++)
            if (d.chance(opt.density))
                targets.push_back(j);
        if (targets.empty())
            targets.push_back(d.below(n));
        for (auto j : targets) {
            auto w = d.between(-opt.max_weight, opt.max_weight);
            bool fair = opt.fair != FairnessSide::None && owner[i] == fair_owner && d.chance(opt.fair_ratio);
            b.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j), Integer(w), fair);
        }
    }
    return b.build();
}

} // namespace fairgames

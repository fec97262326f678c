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

#include "fairgames/energy.hpp"

#include <stdexcept>

#include "fairgames/detail/digraph.hpp"

namespace fairgames {

std::vector<NodeId>
WinRegions::nodes_in(Region r) const
{
    std::vector<NodeId> out;
    for (NodeId q = 0; q < region.size(); q++)
        if (region[q] == r)
            out.push_back(q);
    return out;
}

namespace {

template <typename S>
class ProgressMeasure
{
public:
    ProgressMeasure(const detail::Digraph<S>& g, S cap) : g_(g), cap_(cap), top_(cap + 1) {}

    const S& top() const { return top_; }

    S lift(const S& x, const S& w) const
    {
        if (x == top_)
            return top_;
        S y = x - w;
        if (y > cap_)
            return top_;
        return y < 0 ? S(0) : y;
    }

    S eval(std::uint32_t v) const
    {
        auto first = g_.off[v], last = g_.off[v + 1];
        S best = lift(f_[g_.dst[first]], g_.w[first]);
        for (auto e = first + 1; e < last; e++) {
            S c = lift(f_[g_.dst[e]], g_.w[e]);
            if (g_.owner[v] == 0 ? c < best : c > best)
                best = c;
        }
        return best;
    }

    void run()
    {
        const auto n = g_.n;
        f_.assign(n, S(0));
        std::vector<std::uint32_t> queue(n);
        std::vector<char> queued(n, 1);
        for (std::uint32_t i = 0; i < n; i++)
            queue[i] = i;
        std::size_t head = 0, count = n;
        while (count > 0) {
            auto v = queue[head];
            head = head + 1 == n ? 0 : head + 1;
            count--;
            queued[v] = 0;
            S nv = eval(v);
            if (!(nv > f_[v]))
                continue;
            f_[v] = nv;
            for (auto r = g_.roff[v]; r < g_.roff[v + 1]; r++) {
                auto u = g_.rsrc[r];
                if (queued[u] || f_[u] == top_)
                    continue;
                queued[u] = 1;
                auto tail = head + count;
                queue[tail >= n ? tail - n : tail] = u;
                count++;
            }
        }
    }

    bool is_top(std::uint32_t v) const { return f_[v] == top_; }
    const S& value(std::uint32_t v) const { return f_[v]; }

    /// Successor realising the fixpoint at v; the first optimum has the smallest id.
    std::uint32_t best_successor(std::uint32_t v) const
    {
        auto first = g_.off[v], last = g_.off[v + 1];
        auto pick = first;
        S best = lift(f_[g_.dst[first]], g_.w[first]);
        for (auto e = first + 1; e < last; e++) {
            S c = lift(f_[g_.dst[e]], g_.w[e]);
            if (g_.owner[v] == 0 ? c < best : c > best) {
                best = c;
                pick = e;
            }
        }
        return g_.dst[pick];
    }

private:
    const detail::Digraph<S>& g_;
    S cap_;
    S top_;
    std::vector<S> f_;
};

template <typename S>
EnergySolution
solve_with(const Arena& a, const Integer& cap)
{
    const auto n = a.num_nodes();
    detail::Digraph<S> g(a);
    ProgressMeasure<S> pm(g, static_cast<S>(cap));
    pm.run();

    EnergySolution s;
    s.regions = WinRegions(n);
    s.p1 = {Owner::P1, std::vector<NodeId>(n, kNoNode)};
    s.p2 = {Owner::P2, std::vector<NodeId>(n, kNoNode)};
    for (std::uint32_t v = 0; v < n; v++) {
        if (pm.is_top(v)) {
            s.regions.region[v] = Region::Win2;
        } else {
            s.regions.region[v] = Region::Win1;
            s.regions.credit[v] = Integer(pm.value(v));
        }
        if (g.owner[v] == 0)
            s.p1.move[v] = pm.best_successor(v);
        else
            s.p2.move[v] = pm.best_successor(v);
    }

    // Top-preservation alone does not make a winning strategy for player 2.
    // On the subgame induced by win2 (a trap for player 1) she wins avg < 0,
    // hence avg <= -1/k for k nodes: the energy game with roles swapped and
    // weights -(k*w + 1). Its minimising strategy wins for her. Restricting
    // to win2 keeps that measure finite, so it never climbs to Top.
    const auto lose = s.regions.win2();
    if (lose.empty())
        return s;
    std::vector<NodeId> local(n, kNoNode);
    ArenaBuilder sub;
    for (auto v : lose)
        local[v] = sub.add_node(a.name(v), a.owner(v));
    for (auto& e : a.edges())
        if (local[e.src] != kNoNode && local[e.dst] != kNoNode)
            sub.add_edge(local[e.src], local[e.dst], e.weight);
    detail::Digraph<S> dual(sub.build_unchecked());
    for (auto& o : dual.owner)
        o ^= 1;
    const Integer k = lose.size();
    for (auto& w : dual.w)
        w = -(static_cast<S>(k) * w + 1);
    ProgressMeasure<S> pd(dual, static_cast<S>(k * (k * a.max_weight() + 1)));
    pd.run();
    for (auto v : lose)
        if (g.owner[v] == 1)
            s.p2.move[v] = lose[pd.best_successor(local[v])];
    return s;
}

} // namespace

EnergySolution
solve_energy(const Arena& a)
{
    if (a.num_nodes() == 0)
        return EnergySolution{WinRegions(0), {Owner::P1, {}}, {Owner::P2, {}}};
    const Integer n = a.num_nodes();
    const Integer cap = n * a.max_weight();
    if (detail::fits_machine_word(n * (n * a.max_weight() + 1) * 2 + 2))
        return solve_with<std::int64_t>(a, cap);
    return solve_with<Integer>(a, cap);
}

std::optional<Integer>
min_credit(const Arena& a, NodeId q)
{
    if (q >= a.num_nodes())
        throw std::out_of_range("unknown node id " + std::to_string(q));
    return solve_energy(a).regions.credit[q];
}

} // namespace fairgames

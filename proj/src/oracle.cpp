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

#include "fairgames/oracle.hpp"

#include <algorithm>
#include <map>

namespace fairgames {

namespace {

using Mask = std::uint32_t;

struct SmallEdge
{
    NodeId dst;
    std::int64_t w;
    bool fair;
};

struct Cycle
{
    Mask nodes;
    std::int64_t weight;
    std::int64_t length;
};

/// Arena restricted by a positional strategy of one player.
class OnePlayer
{
public:
    OnePlayer(const Arena& a, Owner fixed, const std::vector<NodeId>& choice) : n_(a.num_nodes()), out_(n_)
    {
        for (NodeId q = 0; q < n_; q++) {
            for (std::size_t e = a.out_begin(q); e < a.out_end(q); e++) {
                const auto& ed = a.edge(e);
                if (a.owner(q) == fixed && ed.dst != choice[q])
                    continue;
                out_[q].push_back({ed.dst, static_cast<std::int64_t>(ed.weight), ed.fair});
            }
        }
        enumerate_cycles();
    }

    std::size_t n() const { return n_; }
    const std::vector<SmallEdge>& out(NodeId q) const { return out_[q]; }
    const std::vector<Cycle>& cycles() const { return cycles_; }

    /// Nodes reachable from q inside the allowed set, q included.
    Mask reach(NodeId q, Mask allowed = ~Mask(0)) const
    {
        Mask seen = Mask(1) << q;
        std::vector<NodeId> stack{q};
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto& e : out_[u]) {
                Mask bit = Mask(1) << e.dst;
                if ((allowed & bit) && !(seen & bit)) {
                    seen |= bit;
                    stack.push_back(e.dst);
                }
            }
        }
        return seen;
    }

    /// S is nonempty, strongly connected with at least one internal edge.
    bool strongly_connected(Mask s) const
    {
        NodeId first = static_cast<NodeId>(__builtin_ctz(s));
        if ((reach(first, s) & s) != s)
            return false;
        // reverse reachability inside s
        Mask seen = Mask(1) << first;
        bool changed = true;
        while (changed) {
            changed = false;
            for (NodeId u = 0; u < n_; u++) {
                if (!(s >> u & 1) || (seen >> u & 1))
                    continue;
                for (auto& e : out_[u])
                    if (seen >> e.dst & 1) {
                        seen |= Mask(1) << u;
                        changed = true;
                        break;
                    }
            }
        }
        if (seen != s)
            return false;
        for (NodeId u = 0; u < n_; u++)
            if (s >> u & 1)
                for (auto& e : out_[u])
                    if (s >> e.dst & 1)
                        return true;
        return false;
    }

    bool fair_closed(Mask s) const
    {
        for (NodeId u = 0; u < n_; u++)
            if (s >> u & 1)
                for (auto& e : out_[u])
                    if (e.fair && !(s >> e.dst & 1))
                        return false;
        return true;
    }

private:
    void enumerate_cycles()
    {
        std::vector<NodeId> path;
        for (NodeId s = 0; s < n_; s++) {
            // simple cycles whose least node is s
            std::vector<std::pair<NodeId, std::size_t>> stack{{s, 0}};
            std::vector<std::int64_t> wsum{0};
            Mask on = Mask(1) << s;
            while (!stack.empty()) {
                auto& [u, i] = stack.back();
                if (i == out_[u].size()) {
                    on &= ~(Mask(1) << u);
                    stack.pop_back();
                    wsum.pop_back();
                    continue;
                }
                const auto& e = out_[u][i++];
                if (e.dst == s) {
                    Mask nodes = 0;
                    for (auto& f : stack)
                        nodes |= Mask(1) << f.first;
                    cycles_.push_back({nodes, wsum.back() + e.w, static_cast<std::int64_t>(stack.size())});
                    continue;
                }
                if (e.dst < s || (on >> e.dst & 1))
                    continue;
                on |= Mask(1) << e.dst;
                std::int64_t nw = wsum.back() + e.w;
                stack.push_back({e.dst, 0});
                wsum.push_back(nw);
            }
        }
    }

    std::size_t n_;
    std::vector<std::vector<SmallEdge>> out_;
    std::vector<Cycle> cycles_;
};

void
check_budget(const Arena& a, const OracleBudget& b)
{
    if (a.num_nodes() > b.max_nodes || a.num_nodes() > 20)
        throw OracleBudgetExceeded("oracle: arena has " + std::to_string(a.num_nodes()) + " nodes, budget " +
                                   std::to_string(b.max_nodes));
    if (a.max_weight() > b.max_abs_weight)
        throw OracleBudgetExceeded("oracle: weight bound " + a.max_weight().str() + " exceeds budget " +
                                   b.max_abs_weight.str());
    if (a.fairness_side() == FairnessSide::Mixed)
        throw std::invalid_argument("oracle: mixed fairness");
}

/// Calls f(choice) for every positional strategy of `who`.
template <typename F>
void
for_each_strategy(const Arena& a, Owner who, F&& f)
{
    const auto n = a.num_nodes();
    std::vector<NodeId> mine;
    for (NodeId q = 0; q < n; q++)
        if (a.owner(q) == who)
            mine.push_back(q);
    std::vector<std::size_t> idx(mine.size(), 0);
    std::vector<NodeId> choice(n, kNoNode);
    while (true) {
        for (std::size_t i = 0; i < mine.size(); i++)
            choice[mine[i]] = a.edge(a.out_begin(mine[i]) + idx[i]).dst;
        f(choice);
        std::size_t i = 0;
        for (; i < mine.size(); i++) {
            if (++idx[i] < a.out_degree(mine[i]))
                break;
            idx[i] = 0;
        }
        if (i == mine.size())
            return;
    }
}

/// Least credit keeping every walk from q nonnegative, if no negative cycle is reachable.
std::optional<Integer>
one_player_credit(const OnePlayer& g, NodeId q)
{
    Mask r = g.reach(q);
    for (auto& c : g.cycles())
        if ((c.nodes & r) == c.nodes && c.weight < 0)
            return std::nullopt;
    const auto n = g.n();
    std::vector<std::int64_t> dist(n, std::numeric_limits<std::int64_t>::max());
    dist[q] = 0;
    for (std::size_t round = 0; round < n; round++)
        for (NodeId u = 0; u < n; u++)
            if (dist[u] != std::numeric_limits<std::int64_t>::max())
                for (auto& e : g.out(u))
                    dist[e.dst] = std::min(dist[e.dst], dist[u] + e.w);
    std::int64_t low = 0;
    for (auto d : dist)
        if (d != std::numeric_limits<std::int64_t>::max())
            low = std::min(low, d);
    return Integer(-low);
}

} // namespace

ValueTable
oracle_regular_values(const Arena& a, const OracleBudget& b)
{
    check_budget(a, b);
    const auto n = a.num_nodes();
    std::vector<std::optional<Rational>> best(n);
    for_each_strategy(a, Owner::P1, [&](const std::vector<NodeId>& sigma) {
        OnePlayer g(a, Owner::P1, sigma);
        for (NodeId q = 0; q < n; q++) {
            Mask r = g.reach(q);
            std::optional<Rational> worst;
            for (auto& c : g.cycles()) {
                if ((c.nodes & r) != c.nodes)
                    continue;
                Rational m(c.weight, c.length);
                if (!worst || m < *worst)
                    worst = m;
            }
            if (!best[q] || *worst > *best[q])
                best[q] = worst;
        }
    });
    ValueTable out(n);
    for (NodeId q = 0; q < n; q++)
        out[q] = *best[q];
    return out;
}

WinRegions
oracle_regular(const Arena& a, GameKind game, const Rational& v, const OracleBudget& b)
{
    check_budget(a, b);
    const auto n = a.num_nodes();
    WinRegions out(n);
    for (NodeId q = 0; q < n; q++)
        out.region[q] = Region::Win2;
    for_each_strategy(a, Owner::P1, [&](const std::vector<NodeId>& sigma) {
        OnePlayer g(a, Owner::P1, sigma);
        for (NodeId q = 0; q < n; q++) {
            if (game == GameKind::Energy) {
                auto c = one_player_credit(g, q);
                if (!c)
                    continue;
                out.region[q] = Region::Win1;
                if (!out.credit[q] || *c < *out.credit[q])
                    out.credit[q] = c;
                continue;
            }
            Mask r = g.reach(q);
            bool ok = true;
            for (auto& c : g.cycles())
                if ((c.nodes & r) == c.nodes && Rational(c.weight, c.length) < v)
                    ok = false;
            if (ok)
                out.region[q] = Region::Win1;
        }
    });
    return out;
}

namespace {

/**
 * Best closed walk through base inside s covering every fair edge that
 * leaves a node of s, with weights sign * w, clamped above at ceiling.
 * Returns nullopt when no covering closed walk exists.
 */
std::optional<std::int64_t>
best_covering_walk(const OnePlayer& g, Mask s, NodeId base, std::int64_t sign, std::int64_t ceiling)
{
    const auto n = g.n();
    // index the fair edges of s
    std::vector<std::vector<int>> bit(n);
    int k = 0;
    for (NodeId u = 0; u < n; u++) {
        bit[u].assign(g.out(u).size(), -1);
        if (!(s >> u & 1))
            continue;
        for (std::size_t i = 0; i < g.out(u).size(); i++)
            if (g.out(u)[i].fair)
                bit[u][i] = k++;
    }
    if (k > 20)
        throw OracleBudgetExceeded("oracle: too many fair edges in one component");
    const std::size_t masks = std::size_t(1) << k;
    const std::size_t full = masks - 1;
    constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::min();
    std::vector<std::int64_t> best(n * masks, kUnset);
    std::optional<std::int64_t> closed;
    best[base * masks] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId u = 0; u < n; u++) {
            if (!(s >> u & 1))
                continue;
            for (std::size_t m = 0; m < masks; m++) {
                auto cur = best[u * masks + m];
                if (cur == kUnset)
                    continue;
                for (std::size_t i = 0; i < g.out(u).size(); i++) {
                    const auto& e = g.out(u)[i];
                    if (!(s >> e.dst & 1))
                        continue;
                    std::size_t nm = bit[u][i] >= 0 ? m | (std::size_t(1) << bit[u][i]) : m;
                    std::int64_t nw = std::min(ceiling, cur + sign * e.w);
                    if (e.dst == base && nm == full && (!closed || nw > *closed)) {
                        closed = nw;
                        changed = true;
                    }
                    auto& slot = best[e.dst * masks + nm];
                    if (nw > slot) {
                        slot = nw;
                        changed = true;
                    }
                }
            }
        }
    }
    return closed;
}

struct SetInfo
{
    Mask nodes;
    Rational max_mean;
    Rational min_mean;
    bool has_fair_node;
};

/// Fair-closed strongly connected sets of g with their cycle-mean extremes.
std::vector<SetInfo>
good_sets(const Arena& a, const OnePlayer& g)
{
    std::vector<SetInfo> out;
    const auto n = g.n();
    for (Mask s = 1; s < (Mask(1) << n); s++) {
        if (!g.fair_closed(s) || !g.strongly_connected(s))
            continue;
        std::optional<Rational> hi, lo;
        for (auto& c : g.cycles()) {
            if ((c.nodes & s) != c.nodes)
                continue;
            Rational m(c.weight, c.length);
            if (!hi || m > *hi)
                hi = m;
            if (!lo || m < *lo)
                lo = m;
        }
        bool fair_node = false;
        for (NodeId u = 0; u < n; u++)
            if ((s >> u & 1) && a.is_fair_node(u))
                fair_node = true;
        out.push_back({s, *hi, *lo, fair_node});
    }
    return out;
}

} // namespace

WinRegions
oracle_fair(const Arena& a, const FairObjectiveSpec& spec, const OracleBudget& b)
{
    check_budget(a, b);
    require_side(a, spec.side);
    const auto n = a.num_nodes();
    const Owner fair_owner = spec.side == FairnessSide::OnP1 ? Owner::P1 : Owner::P2;
    const Owner other = opponent(fair_owner);
    const Integer W = std::max(a.max_weight(), Integer(1));
    const Integer clamp = b.walk_energy_clamp ? *b.walk_energy_clamp : Integer(n * n) * W * 4;
    const auto ceiling = static_cast<std::int64_t>(clamp);

    WinRegions out(n);

    if (spec.game == GameKind::MeanPayoff) {
        auto values = oracle_fair_values(a, spec.side, b);
        for (NodeId q = 0; q < n; q++)
            out.region[q] = values[q] >= spec.threshold ? Region::Win1 : Region::Win2;
        return out;
    }

    if (spec.side == FairnessSide::OnP1) {
        // player 1 wins iff she wins every one-player graph left by a positional player 2
        std::vector<char> wins(n, 1);
        std::map<std::pair<Mask, std::vector<NodeId>>, bool> cache;
        for_each_strategy(a, other, [&](const std::vector<NodeId>& tau) {
            OnePlayer g(a, other, tau);
            std::vector<std::pair<Mask, bool>> verdicts;
            for (auto& set : good_sets(a, g)) {
                bool ok;
                if (!set.has_fair_node) {
                    ok = set.max_mean >= Rational(0);
                } else {
                    std::vector<NodeId> key;
                    for (NodeId u = 0; u < n; u++)
                        key.push_back((set.nodes >> u & 1) ? tau[u] : kNoNode);
                    auto [it, fresh] = cache.emplace(std::make_pair(set.nodes, key), false);
                    if (fresh) {
                        NodeId base = 0;
                        while (!((set.nodes >> base & 1) && a.is_fair_node(base)))
                            base++;
                        auto best = best_covering_walk(g, set.nodes, base, 1, ceiling);
                        it->second = best && *best >= 0;
                    }
                    ok = it->second;
                }
                verdicts.push_back({set.nodes, ok});
            }
            for (NodeId q = 0; q < n; q++) {
                Mask r = g.reach(q);
                bool any = false;
                for (auto& [s, ok] : verdicts)
                    if (ok && (s & r) == s)
                        any = true;
                if (!any)
                    wins[q] = 0;
            }
        });
        for (NodeId q = 0; q < n; q++)
            out.region[q] = wins[q] ? Region::Win1 : Region::Win2;
        return out;
    }

    // fairness on player 2: player 1 needs a strategy without reachable
    // negative cycles; player 2 needs a fair unbounded drop against every one
    std::vector<char> w1(n, 0), w2(n, 1);
    for_each_strategy(a, Owner::P1, [&](const std::vector<NodeId>& sigma) {
        OnePlayer g(a, Owner::P1, sigma);
        std::vector<Mask> dropping;
        for (auto& set : good_sets(a, g)) {
            NodeId base = static_cast<NodeId>(__builtin_ctz(set.nodes));
            if (set.has_fair_node)
                while (!((set.nodes >> base & 1) && a.is_fair_node(base)))
                    base++;
            bool drop;
            if (set.has_fair_node) {
                auto best = best_covering_walk(g, set.nodes, base, -1, ceiling);
                drop = best && *best >= 1;
            } else {
                drop = set.min_mean < Rational(0);
            }
            if (drop)
                dropping.push_back(set.nodes);
        }
        for (NodeId q = 0; q < n; q++) {
            Mask r = g.reach(q);
            bool negative = false;
            for (auto& c : g.cycles())
                if ((c.nodes & r) == c.nodes && c.weight < 0)
                    negative = true;
            if (!negative)
                w1[q] = 1;
            bool any = false;
            for (auto s : dropping)
                if ((s & r) == s)
                    any = true;
            if (!any)
                w2[q] = 0;
        }
    });
    for (NodeId q = 0; q < n; q++)
        out.region[q] = w1[q] ? Region::Win1 : w2[q] ? Region::Win2 : Region::Undetermined;
    return out;
}

ValueTable
oracle_fair_values(const Arena& a, FairnessSide side, const OracleBudget& b)
{
    check_budget(a, b);
    require_side(a, side);
    const auto n = a.num_nodes();
    const Owner fair_owner = side == FairnessSide::OnP1 ? Owner::P1 : Owner::P2;
    const Owner other = opponent(fair_owner);
    std::vector<std::optional<Rational>> outer(n);
    for_each_strategy(a, other, [&](const std::vector<NodeId>& tau) {
        OnePlayer g(a, other, tau);
        auto sets = good_sets(a, g);
        for (NodeId q = 0; q < n; q++) {
            Mask r = g.reach(q);
            // the fair player picks the best reachable fair-closed set
            std::optional<Rational> inner;
            for (auto& s : sets) {
                if ((s.nodes & r) != s.nodes)
                    continue;
                const Rational& m = fair_owner == Owner::P1 ? s.max_mean : s.min_mean;
                if (!inner || (fair_owner == Owner::P1 ? m > *inner : m < *inner))
                    inner = m;
            }
            if (!inner)
                throw std::logic_error("oracle: no fair-closed set reachable");
            // the other player picks the strategy worst for the fair player
            if (!outer[q] || (fair_owner == Owner::P1 ? *inner < *outer[q] : *inner > *outer[q]))
                outer[q] = inner;
        }
    });
    ValueTable out(n);
    for (NodeId q = 0; q < n; q++)
        out[q] = *outer[q];
    return out;
}

} // namespace fairgames

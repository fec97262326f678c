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

// Product of an arena with a strategy machine and the one-player cycle
// analyses used by verify_machine().

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "fairgames/strategies.hpp"

#include "circulation.hpp"

namespace fairgames {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Product
{
    std::vector<NodeId> node;
    std::vector<std::uint32_t> off{0};
    std::vector<std::uint32_t> dst;
    std::vector<std::uint32_t> aedge; // arena edge index of each product edge
    std::vector<std::uint32_t> parent; // BFS tree from the starts
    std::vector<std::uint32_t> start_of; // start state reaching each state first

    std::size_t size() const { return node.size(); }
};

Product
build_product(const Arena& a, const StrategyMachine& s, const std::vector<NodeId>& starts, std::size_t max_states)
{
    const auto n = a.num_nodes();
    std::vector<std::uint64_t> radix(n, 0);
    std::uint64_t span = 1;
    for (NodeId q = 0; q < n; q++) {
        if (a.owner(q) != s.owner)
            continue;
        if (s.rules[q].empty())
            throw std::invalid_argument("machine undefined at node " + a.name(q));
        const std::uint64_t size = s.rules[q].size();
        if (size > 1) {
            radix[q] = span;
            if (span > (std::uint64_t(1) << 62) / size / (n + 1))
                throw std::length_error("product memory encoding exceeds 64 bits");
            span *= size;
        }
    }
    Product p;
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    std::vector<std::uint64_t> code;
    auto intern = [&](NodeId q, std::uint64_t mem, std::uint32_t from, std::uint32_t root) {
        auto [it, fresh] = ids.emplace(mem * n + q, static_cast<std::uint32_t>(p.node.size()));
        if (fresh) {
            if (p.node.size() >= max_states)
                throw std::length_error("product exceeds " + std::to_string(max_states) + " states");
            p.node.push_back(q);
            code.push_back(mem);
            p.parent.push_back(from);
            p.start_of.push_back(root == kNone ? it->second : root);
        }
        return it->second;
    };
    for (auto q : starts)
        intern(q, 0, kNone, kNone);
    for (std::uint32_t v = 0; v < p.node.size(); v++) {
        const NodeId q = p.node[v];
        const std::uint64_t mem = code[v];
        if (a.owner(q) == s.owner) {
            std::uint64_t local = radix[q] ? (mem / radix[q]) % s.rules[q].size() : 0;
            const auto& r = s.rules[q][local];
            std::uint64_t next = radix[q] ? mem + (std::uint64_t(r.next) - local) * radix[q] : mem;
            auto e = a.find_edge(q, r.move);
            if (!e)
                throw std::invalid_argument("machine moves along a missing edge at " + a.name(q));
            auto w = intern(r.move, next, v, p.start_of[v]);
            p.dst.push_back(w);
            p.aedge.push_back(static_cast<std::uint32_t>(*e));
        } else {
            for (std::size_t e = a.out_begin(q); e < a.out_end(q); e++) {
                auto w = intern(a.edge(e).dst, mem, v, p.start_of[v]);
                p.dst.push_back(w);
                p.aedge.push_back(static_cast<std::uint32_t>(e));
            }
        }
        p.off.push_back(static_cast<std::uint32_t>(p.dst.size()));
    }
    return p;
}

/// Edge filter: product edge index -> usable.
using EdgeMask = std::vector<char>;

/**
 * Tarjan SCCs over states with alive[v] using edges with mask[e].
 * Returns component ids (kNone for dead states) and marks cyclic components.
 */
struct Sccs
{
    std::vector<std::uint32_t> comp;
    std::vector<char> cyclic;
    std::uint32_t count = 0;
};

Sccs
tarjan(const Product& p, const std::vector<char>& alive, const EdgeMask& mask)
{
    const auto V = p.size();
    Sccs r;
    r.comp.assign(V, kNone);
    std::vector<std::uint32_t> index(V, kNone), low(V, 0), stack;
    std::vector<char> on(V, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> call; // (state, next edge)
    std::uint32_t counter = 0;
    for (std::uint32_t root = 0; root < V; root++) {
        if (!alive[root] || index[root] != kNone)
            continue;
        call.push_back({root, p.off[root]});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on[root] = 1;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e < p.off[v + 1]) {
                auto ei = e++;
                if (!mask[ei])
                    continue;
                auto w = p.dst[ei];
                if (!alive[w])
                    continue;
                if (index[w] == kNone) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on[w] = 1;
                    call.push_back({w, p.off[w]});
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const auto done = v;
            call.pop_back();
            if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::uint32_t c = r.count++;
                std::size_t members = 0;
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[w] = 0;
                    r.comp[w] = c;
                    members++;
                } while (w != done);
                bool cyc = members > 1;
                if (!cyc)
                    for (auto ei = p.off[done]; ei < p.off[done + 1]; ei++)
                        if (mask[ei] && p.dst[ei] == done)
                            cyc = true;
                r.cyclic.push_back(cyc);
            }
        }
    }
    return r;
}

/// Edges whose endpoints are alive and lie in the same component.
EdgeMask
internal_edges(const Product& p, const Sccs& s, const EdgeMask& base)
{
    EdgeMask m(p.dst.size(), 0);
    for (std::uint32_t v = 0; v < p.size(); v++) {
        if (s.comp[v] == kNone)
            continue;
        for (auto e = p.off[v]; e < p.off[v + 1]; e++)
            m[e] = base[e] && s.comp[p.dst[e]] == s.comp[v];
    }
    return m;
}

/**
 * FIFO Bellman-Ford from a virtual source over usable edges. Returns a
 * negative cycle as a state list, or empty. On success dist holds feasible
 * potentials.
 */
std::vector<std::uint32_t>
negative_cycle(const Product& p, const std::vector<char>& alive, const EdgeMask& mask,
               const std::vector<std::int64_t>& w, std::vector<std::int64_t>& dist)
{
    const auto V = p.size();
    dist.assign(V, 0);
    std::vector<std::uint32_t> pred(V, kNone), pedge(V, kNone);
    std::vector<char> queued(V, 0);
    std::deque<std::uint32_t> queue;
    std::size_t live = 0;
    for (std::uint32_t v = 0; v < V; v++)
        if (alive[v]) {
            queue.push_back(v);
            queued[v] = 1;
            live++;
        }

    // a cycle in the predecessor graph is always negative
    auto find_pred_cycle = [&]() -> std::vector<std::uint32_t> {
        std::vector<std::uint8_t> color(V, 0);
        for (std::uint32_t s = 0; s < V; s++) {
            if (color[s] || !alive[s])
                continue;
            std::uint32_t v = s;
            while (v != kNone && color[v] == 0) {
                color[v] = 1;
                v = pred[v];
            }
            if (v != kNone && color[v] == 1) {
                std::vector<std::uint32_t> cyc;
                std::uint32_t u = v;
                do {
                    cyc.push_back(u);
                    u = pred[u];
                } while (u != v);
                std::reverse(cyc.begin(), cyc.end());
                return cyc;
            }
            v = s;
            while (v != kNone && color[v] == 1) {
                color[v] = 2;
                v = pred[v];
            }
        }
        return {};
    };

    std::size_t relaxations = 0;
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        queued[u] = 0;
        for (auto e = p.off[u]; e < p.off[u + 1]; e++) {
            if (!mask[e])
                continue;
            auto v = p.dst[e];
            if (!alive[v])
                continue;
            auto nd = dist[u] + w[e];
            if (nd >= dist[v])
                continue;
            dist[v] = nd;
            pred[v] = u;
            pedge[v] = e;
            if (!queued[v]) {
                queued[v] = 1;
                queue.push_back(v);
            }
            if (++relaxations % live == 0) {
                auto c = find_pred_cycle();
                if (!c.empty())
                    return c;
            }
        }
    }
    return {};
}

std::vector<NodeId>
path_to(const Product& p, std::uint32_t v)
{
    std::vector<NodeId> out;
    for (auto u = p.parent[v]; u != kNone; u = p.parent[u])
        out.push_back(p.node[u]);
    std::reverse(out.begin(), out.end());
    return out;
}

/// Some cycle through v inside its component, as a state list starting at v.
std::vector<std::uint32_t>
cycle_through(const Product& p, std::uint32_t v, const std::vector<char>& alive, const EdgeMask& mask)
{
    std::unordered_map<std::uint32_t, std::uint32_t> from;
    std::deque<std::uint32_t> queue{v};
    from[v] = kNone;
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto e = p.off[u]; e < p.off[u + 1]; e++) {
            auto w = p.dst[e];
            if (!mask[e] || !alive[w])
                continue;
            if (w == v) {
                std::vector<std::uint32_t> cyc;
                for (auto x = u; x != kNone; x = from[x])
                    cyc.push_back(x);
                std::reverse(cyc.begin(), cyc.end());
                return cyc;
            }
            if (from.emplace(w, u).second)
                queue.push_back(w);
        }
    }
    return {};
}

CounterPlay
witness(const Arena& a, const Product& p, const std::vector<std::uint32_t>& cyc, std::string reason)
{
    // enter at the cycle state with the shortest BFS path
    std::size_t best = 0, depth = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < cyc.size(); i++) {
        std::size_t d = 0;
        for (auto u = p.parent[cyc[i]]; u != kNone; u = p.parent[u])
            d++;
        if (d < depth) {
            depth = d;
            best = i;
        }
    }
    std::vector<NodeId> cycle;
    for (std::size_t i = 0; i < cyc.size(); i++)
        cycle.push_back(p.node[cyc[(best + i) % cyc.size()]]);
    CounterPlay cp;
    cp.start = p.node[p.start_of[cyc[best]]];
    cp.lasso = analyze_lasso(a, path_to(p, cyc[best]), std::move(cycle));
    cp.reason = std::move(reason);
    return cp;
}

/**
 * Maximal subsets of the alive states that are strongly connected and in
 * which every fair node of the fair player present has all its fair arena
 * edges realised inside. Returns an alive mask per good component.
 */
std::vector<std::vector<char>>
fair_components(const Arena& a, const Product& p, std::vector<char> alive, const EdgeMask& mask, Owner fair_owner)
{
    std::vector<std::vector<char>> good;
    while (true) {
        auto s = tarjan(p, alive, mask);
        auto inside = internal_edges(p, s, mask);
        // per component: arena fair edges realised inside, arena fair nodes present
        std::vector<std::vector<std::uint32_t>> covered(s.count), present(s.count);
        for (std::uint32_t v = 0; v < p.size(); v++) {
            if (!alive[v] || !s.cyclic[s.comp[v]])
                continue;
            NodeId q = p.node[v];
            if (a.owner(q) != fair_owner || !a.is_fair_node(q))
                continue;
            present[s.comp[v]].push_back(q);
            for (auto e = p.off[v]; e < p.off[v + 1]; e++)
                if (inside[e] && a.edge(p.aedge[e]).fair)
                    covered[s.comp[v]].push_back(p.aedge[e]);
        }
        std::vector<std::vector<NodeId>> drop(s.count);
        bool changed = false;
        for (std::uint32_t c = 0; c < s.count; c++) {
            if (!s.cyclic[c])
                continue;
            auto& cov = covered[c];
            std::sort(cov.begin(), cov.end());
            cov.erase(std::unique(cov.begin(), cov.end()), cov.end());
            auto& pres = present[c];
            std::sort(pres.begin(), pres.end());
            pres.erase(std::unique(pres.begin(), pres.end()), pres.end());
            for (auto q : pres)
                for (std::size_t e = a.out_begin(q); e < a.out_end(q); e++)
                    if (a.edge(e).fair && !std::binary_search(cov.begin(), cov.end(), e)) {
                        drop[c].push_back(q);
                        break;
                    }
            std::sort(drop[c].begin(), drop[c].end());
            if (!drop[c].empty())
                changed = true;
        }
        std::vector<char> next(p.size(), 0);
        for (std::uint32_t v = 0; v < p.size(); v++) {
            if (!alive[v])
                continue;
            auto c = s.comp[v];
            if (!s.cyclic[c])
                continue;
            if (drop[c].empty())
                continue;
            if (!std::binary_search(drop[c].begin(), drop[c].end(), p.node[v]))
                next[v] = 1;
        }
        for (std::uint32_t c = 0; c < s.count; c++) {
            if (!s.cyclic[c] || !drop[c].empty())
                continue;
            std::vector<char> comp(p.size(), 0);
            for (std::uint32_t v = 0; v < p.size(); v++)
                if (alive[v] && s.comp[v] == c)
                    comp[v] = 1;
            good.push_back(std::move(comp));
        }
        if (!changed)
            return good;
        alive = std::move(next);
    }
}

enum class FairMode { None, OwnerFair, OpponentFair };

Verdict
verify_impl(const Arena& a, const StrategyMachine& s, GameKind game, const Rational& threshold, FairMode mode,
            const VerifyOptions& opt)
{
    const auto& starts = opt.starts.empty() ? s.domain : opt.starts;
    if (starts.empty())
        return Verified{0};
    if (s.rules.size() != a.num_nodes())
        throw std::invalid_argument("machine does not match arena");
    if (opt.circulation_bound &&
        detail::circulation_certificate(a, s, starts, game, threshold, mode == FairMode::OwnerFair))
        return Verified{0, true};
    const Product p = build_product(a, s, starts, opt.max_states);
    const auto V = p.size();
    const auto E = p.dst.size();

    // arena weights, shifted by the threshold for mean-payoff
    std::vector<std::int64_t> w(E);
    {
        Integer maxw = 0;
        std::vector<Integer> big(E);
        for (std::size_t e = 0; e < E; e++) {
            const Integer& x = a.edge(p.aedge[e]).weight;
            big[e] = game == GameKind::MeanPayoff ? threshold.den() * x - threshold.num() : x;
            maxw = std::max(maxw, Integer(abs(big[e])));
        }
        Integer need = (maxw + 1) * (Integer(V) + 2) * (Integer(V) + 2);
        if (need >= (Integer(1) << 62))
            throw std::length_error("product weights exceed 64-bit range");
        for (std::size_t e = 0; e < E; e++)
            w[e] = static_cast<std::int64_t>(big[e]);
    }
    // bad[e]: a negative cycle under bad is a losing cycle for the machine owner
    std::vector<std::int64_t> bad(E);
    const bool owner_p1 = s.owner == Owner::P1;
    for (std::size_t e = 0; e < E; e++)
        bad[e] = owner_p1 ? w[e] : static_cast<std::int64_t>(V + 1) * -w[e] - 1;

    std::vector<char> all(V, 1);
    EdgeMask every(E, 1);
    std::vector<std::int64_t> dist;
    const char* what = owner_p1 ? "negative cycle" : "nonnegative cycle";

    if (mode == FairMode::None || mode == FairMode::OwnerFair) {
        if (mode == FairMode::OwnerFair) {
            for (std::size_t ae = 0; ae < a.num_edges(); ae++) {
                const auto& edge = a.edge(ae);
                if (!edge.fair || a.owner(edge.src) != s.owner)
                    continue;
                EdgeMask without(E, 1);
                for (std::size_t e = 0; e < E; e++)
                    if (p.aedge[e] == ae)
                        without[e] = 0;
                auto sc = tarjan(p, all, without);
                for (std::uint32_t v = 0; v < V; v++) {
                    if (p.node[v] != edge.src || !sc.cyclic[sc.comp[v]])
                        continue;
                    auto inside = internal_edges(p, sc, without);
                    auto cyc = cycle_through(p, v, all, inside);
                    return witness(a, p, cyc, "unfair cycle avoiding " + a.name(edge.src) + " -> " +
                                                  a.name(edge.dst));
                }
            }
        }
        auto cyc = negative_cycle(p, all, every, bad, dist);
        if (!cyc.empty())
            return witness(a, p, cyc, what);
        return Verified{V, false};
    }

    const Owner fair_owner = opponent(s.owner);
    auto comps = fair_components(a, p, all, every, fair_owner);
    for (auto& comp : comps) {
        EdgeMask inside(E, 0);
        for (std::uint32_t v = 0; v < V; v++)
            if (comp[v])
                for (auto e = p.off[v]; e < p.off[v + 1]; e++)
                    inside[e] = comp[p.dst[e]];
        if (game == GameKind::Energy && !owner_p1) {
            // player 1 wins a fair component with a positive cycle, or with a
            // fair-closed set of zero cycles
            std::vector<std::int64_t> neg(E);
            for (std::size_t e = 0; e < E; e++)
                neg[e] = -w[e];
            auto cyc = negative_cycle(p, comp, inside, neg, dist);
            if (!cyc.empty())
                return witness(a, p, cyc, "positive cycle in a fair component");
            EdgeMask tight(E, 0);
            for (std::uint32_t v = 0; v < V; v++)
                if (comp[v])
                    for (auto e = p.off[v]; e < p.off[v + 1]; e++)
                        tight[e] = inside[e] && dist[p.dst[e]] == dist[v] + neg[e];
            auto zero = fair_components(a, p, comp, tight, fair_owner);
            if (!zero.empty()) {
                std::uint32_t v = 0;
                while (!zero.front()[v])
                    v++;
                EdgeMask in0(E, 0);
                for (std::uint32_t x = 0; x < V; x++)
                    if (zero.front()[x])
                        for (auto e = p.off[x]; e < p.off[x + 1]; e++)
                            in0[e] = tight[e] && zero.front()[p.dst[e]];
                auto c0 = cycle_through(p, v, zero.front(), in0);
                return witness(a, p, c0, "fair component of zero cycles");
            }
            continue;
        }
        auto cyc = negative_cycle(p, comp, inside, bad, dist);
        if (!cyc.empty())
            return witness(a, p, cyc, std::string(what) + " in a fair component");
    }
    return Verified{V, false};
}

} // namespace

Verdict
verify_machine(const Arena& a, const StrategyMachine& s, const FairObjectiveSpec& spec, const VerifyOptions& opt)
{
    require_side(a, spec.side);
    FairMode mode = FairMode::None;
    if (a.has_fair_edges()) {
        const Owner fair_owner = spec.side == FairnessSide::OnP1 ? Owner::P1 : Owner::P2;
        mode = fair_owner == s.owner ? FairMode::OwnerFair : FairMode::OpponentFair;
    }
    return verify_impl(a, s, spec.game, spec.threshold, mode, opt);
}

Verdict
verify_machine_regular(const Arena& a, const StrategyMachine& s, GameKind game, const Rational& threshold,
                       const VerifyOptions& opt)
{
    return verify_impl(a, s, game, threshold, FairMode::None, opt);
}

} // namespace fairgames

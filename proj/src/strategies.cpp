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

#include "fairgames/strategies.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fairgames {

std::size_t
StrategyMachine::total_memory() const
{
    std::size_t t = 0;
    for (auto& r : rules)
        t += r.size();
    return t;
}

bool
StrategyMachine::is_positional() const
{
    for (auto& r : rules)
        if (r.size() > 1)
            return false;
    return true;
}

StrategyMachine
StrategyMachine::from_positional(const Arena& a, const PositionalStrategy& s)
{
    StrategyMachine m;
    m.owner = s.owner;
    m.rules.resize(a.num_nodes());
    for (NodeId q = 0; q < a.num_nodes(); q++)
        if (a.owner(q) == s.owner)
            m.rules[q] = {LocalRule{s.move[q], 0}};
    return m;
}

std::vector<LocalRule>
periodic_rule(NodeId preferred, const std::vector<NodeId>& fair, std::uint64_t k)
{
    if (fair.empty())
        return {LocalRule{preferred, 0}};
    const std::uint64_t f = fair.size();
    const std::uint64_t size = (k + 1) * f;
    if (size > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("periodic memory table too large");
    std::vector<LocalRule> out(size);
    for (std::uint64_t i = 0; i <= k; i++) {
        for (std::uint64_t j = 0; j < f; j++) {
            auto& r = out[i * f + j];
            if (i < k)
                r = {preferred, static_cast<std::uint32_t>((i + 1) * f + j)};
            else
                r = {fair[j], static_cast<std::uint32_t>((j + 1) % f)};
        }
    }
    return out;
}

std::string
serialize_machine(const Arena& a, const StrategyMachine& s)
{
    std::ostringstream os;
    os << "machine " << to_string(s.owner) << '\n';
    if (!s.domain.empty()) {
        os << "domain";
        for (auto q : s.domain)
            os << ' ' << a.name(q);
        os << '\n';
    }
    for (NodeId q = 0; q < s.rules.size(); q++)
        for (std::size_t m = 0; m < s.rules[q].size(); m++)
            os << "state " << m << " at " << a.name(q) << " -> " << a.name(s.rules[q][m].move) << " next "
               << s.rules[q][m].next << '\n';
    return os.str();
}

StrategyMachine
parse_machine(const Arena& a, std::string_view text)
{
    StrategyMachine s;
    s.rules.resize(a.num_nodes());
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    auto node = [&](const std::string& name) {
        auto q = a.find_node(name);
        if (!q)
            throw ParseError(lineno, 1, "unknown node '" + name + "'");
        return *q;
    };
    while (std::getline(in, line)) {
        lineno++;
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#')
            continue;
        if (!header) {
            std::string who;
            if (kw != "machine" || !(ls >> who) || (who != "p1" && who != "p2"))
                throw ParseError(lineno, 1, "expected 'machine p1|p2'");
            s.owner = who == "p1" ? Owner::P1 : Owner::P2;
            header = true;
        } else if (kw == "domain") {
            std::string name;
            while (ls >> name)
                s.domain.push_back(node(name));
        } else if (kw == "state") {
            std::uint64_t m, next;
            std::string at, qn, arrow, succ, nx;
            if (!(ls >> m >> at >> qn >> arrow >> succ >> nx >> next) || at != "at" || arrow != "->" || nx != "next")
                throw ParseError(lineno, 1, "expected 'state <m> at <node> -> <succ> next <m>'");
            NodeId q = node(qn);
            NodeId d = node(succ);
            if (!a.find_edge(q, d))
                throw ParseError(lineno, 1, "no edge " + qn + " -> " + succ);
            if (a.owner(q) != s.owner)
                throw ParseError(lineno, 1, "node " + qn + " is not owned by the machine");
            auto& r = s.rules[q];
            if (m != r.size())
                throw ParseError(lineno, 1, "memory states must be listed in order");
            r.push_back({d, static_cast<std::uint32_t>(next)});
        } else {
            throw ParseError(lineno, 1, "unknown directive '" + kw + "'");
        }
    }
    if (!header)
        throw ParseError(1, 1, "missing 'machine' header");
    for (NodeId q = 0; q < a.num_nodes(); q++) {
        if (a.owner(q) == s.owner && s.rules[q].empty())
            throw ParseError(lineno, 1, "no rule for node " + a.name(q));
        for (auto& r : s.rules[q])
            if (r.next >= s.rules[q].size())
                throw ParseError(lineno, 1, "memory successor out of range at " + a.name(q));
    }
    return s;
}

StrategyMachine
truncate(const EscalatingSchedule& s, std::uint64_t r)
{
    StrategyMachine m;
    m.owner = s.owner;
    m.domain = s.domain;
    m.rules.resize(s.base.move.size());
    for (NodeId q = 0; q < s.base.move.size(); q++)
        if (s.base.move[q] != kNoNode)
            m.rules[q] = {LocalRule{s.base.move[q], 0}};
    for (auto& rule : s.rules)
        m.rules[rule.node] = periodic_rule(rule.preferred, rule.fair, r);
    return m;
}

std::uint64_t
finitize_rounds(const EscalatingSchedule& s, const Rational& epsilon)
{
    if (epsilon <= Rational(0))
        throw std::invalid_argument("epsilon must be positive");
    if (s.rules.empty() || s.threshold - epsilon <= s.floor_value)
        return 0;
    Integer k = (s.drift / epsilon).ceil();
    if (k < 1)
        k = 1;
    if (k > Integer(std::numeric_limits<std::uint32_t>::max()))
        throw std::length_error("epsilon too small for a finite table");
    return static_cast<std::uint64_t>(k);
}

StrategyMachine
finitize(const EscalatingSchedule& s, const Rational& epsilon)
{
    return truncate(s, finitize_rounds(s, epsilon));
}

LassoAnalysis
analyze_lasso(const Arena& a, std::vector<NodeId> prefix, std::vector<NodeId> cycle)
{
    if (cycle.empty())
        throw std::invalid_argument("lasso cycle must be nonempty");
    LassoAnalysis out;
    auto weight = [&](NodeId s, NodeId d) -> const Integer& {
        auto e = a.find_edge(s, d);
        if (!e)
            throw std::invalid_argument("lasso uses missing edge " + a.name(s) + " -> " + a.name(d));
        return a.edge(*e).weight;
    };
    Integer run = 0;
    Integer low = 0;
    std::vector<NodeId> walk = prefix;
    walk.insert(walk.end(), cycle.begin(), cycle.end());
    walk.push_back(cycle.front());
    for (std::size_t i = 0; i + 1 < walk.size(); i++) {
        run += weight(walk[i], walk[i + 1]);
        low = std::min(low, run);
    }
    Integer cw = 0;
    std::vector<std::pair<NodeId, NodeId>> used;
    for (std::size_t i = 0; i < cycle.size(); i++) {
        NodeId s = cycle[i], d = cycle[(i + 1) % cycle.size()];
        cw += weight(s, d);
        used.emplace_back(s, d);
    }
    std::sort(used.begin(), used.end());
    bool fair = true;
    for (NodeId q : cycle)
        for (NodeId d : a.fair_successors(q))
            if (!std::binary_search(used.begin(), used.end(), std::make_pair(q, d)))
                fair = false;
    out.prefix = std::move(prefix);
    out.cycle = std::move(cycle);
    out.fair_on_cycle = fair;
    out.cycle_weight = cw;
    out.cycle_mean = Rational(cw, Integer(out.cycle.size()));
    out.min_prefix_weight = low;
    return out;
}

namespace {

struct VecHash
{
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v)
            h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

} // namespace

LassoAnalysis
simulate(const Arena& a, const StrategyMachine& s1, const StrategyMachine& s2, NodeId start, std::uint64_t max_steps)
{
    if (s1.owner != Owner::P1 || s2.owner != Owner::P2)
        throw std::invalid_argument("simulate expects a player 1 and a player 2 machine");
    const auto n = a.num_nodes();
    if (start >= n)
        throw std::out_of_range("unknown start node");
    // only nodes with more than one memory state contribute to the key
    std::vector<NodeId> tracked;
    for (NodeId q = 0; q < n; q++) {
        const auto& m = a.owner(q) == Owner::P1 ? s1 : s2;
        if (m.rules[q].empty())
            throw std::invalid_argument("machine undefined at node " + a.name(q));
        if (m.rules[q].size() > 1)
            tracked.push_back(q);
    }
    std::vector<std::uint32_t> mem(n, 0);
    std::unordered_map<std::vector<std::uint32_t>, std::uint64_t, VecHash> seen;
    std::vector<NodeId> path;
    NodeId cur = start;
    std::vector<std::uint32_t> key(tracked.size() + 1);
    for (std::uint64_t step = 0;; step++) {
        key[0] = cur;
        for (std::size_t i = 0; i < tracked.size(); i++)
            key[i + 1] = mem[tracked[i]];
        auto [it, fresh] = seen.emplace(key, step);
        if (!fresh) {
            std::vector<NodeId> prefix(path.begin(), path.begin() + it->second);
            std::vector<NodeId> cycle(path.begin() + it->second, path.end());
            return analyze_lasso(a, std::move(prefix), std::move(cycle));
        }
        if (step >= max_steps)
            throw std::runtime_error("simulation exceeded step limit");
        path.push_back(cur);
        const auto& m = a.owner(cur) == Owner::P1 ? s1 : s2;
        const auto& rule = m.rules[cur][mem[cur]];
        mem[cur] = rule.next;
        cur = rule.move;
    }
}

// Synthesis.

static std::vector<NodeId>
check_targets(const WinRegions& r, Owner player, const std::vector<NodeId>& targets)
{
    const Region want = player == Owner::P1 ? Region::Win1 : Region::Win2;
    for (auto q : targets)
        if (q >= r.size() || r.region[q] != want)
            throw std::invalid_argument("node " + std::to_string(q) + " is not in the winning region of " +
                                        to_string(player));
    return r.nodes_in(want);
}

static StrategyMachine
machine_shell(const Arena& a, Owner owner, std::vector<NodeId> domain)
{
    StrategyMachine m;
    m.owner = owner;
    m.rules.resize(a.num_nodes());
    m.domain = std::move(domain);
    return m;
}

static Integer
cube_bound(std::size_t n, const Integer& W)
{
    Integer nn = n;
    return nn * nn * nn * W;
}

static std::uint64_t
to_u64(const Integer& v)
{
    if (v < 0 || v > Integer(std::numeric_limits<std::uint32_t>::max()))
        throw std::length_error("period does not fit a memory table");
    return static_cast<std::uint64_t>(v);
}

SynthesizedStrategy
synthesize(const Arena& a, const FairObjectiveSpec& spec, Owner player, const std::vector<NodeId>& targets)
{
    require_side(a, spec.side);
    const auto n = a.num_nodes();
    const auto report = solve_fair(a, spec);
    auto domain = check_targets(report.regions, player, targets);
    const Owner fair_owner = spec.side == FairnessSide::OnP1 ? Owner::P1 : Owner::P2;

    if (spec.game == GameKind::Energy && spec.side == FairnessSide::OnP2) {
        if (player == Owner::P1) {
            auto m = StrategyMachine::from_positional(a, solve_energy(a).p1);
            m.domain = std::move(domain);
            return m;
        }
        FairObjectiveSpec mp{GameKind::MeanPayoff, FairnessSide::OnP2, Rational(0)};
        auto m = std::get<StrategyMachine>(synthesize(a, mp, Owner::P2));
        m.domain = std::move(domain);
        return m;
    }

    const bool energy = spec.game == GameKind::Energy;
    const Arena base = energy ? a : shift_and_scale(a, spec.threshold);
    const GadgetKind kind = energy                               ? GadgetKind::FairEnergy1
                            : spec.side == FairnessSide::OnP1 ? GadgetKind::FairMP1
                                                               : GadgetKind::FairMP2;
    const auto g = build_gadget(base, kind);
    const auto sol = solve_energy(g.arena);
    const auto& sigma = player == Owner::P1 ? sol.p1 : sol.p2;

    if (player != fair_owner) {
        auto m = machine_shell(a, player, std::move(domain));
        for (NodeId q = 0; q < n; q++)
            if (a.owner(q) == player)
                m.rules[q] = {LocalRule{sigma.move[q], 0}};
        return m;
    }

    if (kind == GadgetKind::FairMP1) {
        EscalatingSchedule s;
        s.owner = player;
        s.domain = std::move(domain);
        s.base.owner = player;
        s.base.move.assign(n, kNoNode);
        for (NodeId q = 0; q < n; q++) {
            if (a.owner(q) != player)
                continue;
            const auto& p = g.map.parts[q];
            if (!p)
                s.base.move[q] = sigma.move[q];
            else if (sigma.move[q] == p->left)
                s.rules.push_back({q, sigma.move[p->sim], a.fair_successors(q)});
            else
                s.base.move[q] = sigma.move[p->esc];
        }
        const Integer& Ws = base.max_weight();
        const Integer nn = n;
        s.threshold = spec.threshold;
        s.drift = Rational(nn * nn * Ws + nn * Ws + nn, spec.threshold.den());
        s.floor_value = Rational(-a.max_weight());
        return s;
    }

    // periodic machines: 2-fair mean-payoff for player 2, 1-fair energy for player 1
    const Integer period = kind == GadgetKind::FairMP2
                               ? cube_bound(n, base.max_weight()) + Integer(n) * n + n + 1
                               : cube_bound(n, a.max_weight()) + 1;
    const std::uint64_t k = to_u64(period - 1);
    auto m = machine_shell(a, player, std::move(domain));
    for (NodeId q = 0; q < n; q++) {
        if (a.owner(q) != player)
            continue;
        const auto& p = g.map.parts[q];
        if (!p) {
            m.rules[q] = {LocalRule{sigma.move[q], 0}};
        } else if (sigma.move[q] != p->left) {
            m.rules[q] = {LocalRule{sigma.move[p->esc], 0}};
        } else if (kind == GadgetKind::FairMP2) {
            m.rules[q] = periodic_rule(sigma.move[p->sim], a.fair_successors(q), k);
        } else if (sigma.move[p->val] == p->pos) {
            m.rules[q] = periodic_rule(sigma.move[p->pos], a.fair_successors(q), k);
        } else {
            auto fair = a.fair_successors(q);
            m.rules[q] = periodic_rule(fair.front(), fair, 0);
        }
    }
    return m;
}

} // namespace fairgames

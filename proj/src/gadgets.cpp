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

#include "fairgames/gadgets.hpp"

#include <stdexcept>
#include <unordered_set>

namespace fairgames {

const char*
to_string(GadgetKind k)
{
    switch (k) {
    case GadgetKind::FairMP1: return "FairMP1";
    case GadgetKind::FairMP2: return "FairMP2";
    case GadgetKind::FairEnergy1: return "FairEnergy1";
    }
    return "?";
}

const char*
to_string(BranchRole r)
{
    switch (r) {
    case BranchRole::Copied: return "copied";
    case BranchRole::FairBranch: return "fair-branch";
    case BranchRole::SimulationBranch: return "simulation-branch";
    case BranchRole::EscapeBranch: return "escape-branch";
    case BranchRole::ValueBranch: return "value-branch";
    case BranchRole::PositiveValue: return "positive-value";
    case BranchRole::ZeroValue: return "zero-value";
    }
    return "?";
}

GadgetBounds
gadget_bounds(GadgetKind kind, std::size_t n, const Integer& W)
{
    Integer nn = n;
    Integer mp = nn * nn * W + nn;
    if (kind == GadgetKind::FairEnergy1)
        return {8 * n, mp * (nn + 1)};
    return {6 * n, mp};
}

namespace {

class GadgetBuilder
{
public:
    GadgetBuilder(const Arena& a) : a_(a)
    {
        for (NodeId q = 0; q < a.num_nodes(); q++) {
            b_.add_node(a.name(q), a.owner(q));
            used_.insert(a.name(q));
        }
    }

    NodeId fresh(const std::string& base, Owner o)
    {
        std::string name = base;
        while (used_.count(name))
            name += '\'';
        used_.insert(name);
        return b_.add_node(name, o);
    }

    void edge(NodeId s, NodeId d, Integer w, BranchRole r, bool fair = false)
    {
        b_.add_edge(s, d, std::move(w), fair);
        roles_.push_back({s, d, r});
    }

    Gadget finish(GadgetMap m)
    {
        Gadget g{b_.build(), std::move(m)};
        g.map.original_of.assign(g.arena.num_nodes(), kNoNode);
        for (NodeId q = 0; q < a_.num_nodes(); q++)
            g.map.original_of[q] = q;
        g.map.branch_role.assign(g.arena.num_edges(), BranchRole::Copied);
        for (auto& r : roles_)
            g.map.branch_role[*g.arena.find_edge(r.src, r.dst)] = r.role;
        return g;
    }

private:
    struct Tagged
    {
        NodeId src, dst;
        BranchRole role;
    };
    const Arena& a_;
    ArenaBuilder b_;
    std::unordered_set<std::string> used_;
    std::vector<Tagged> roles_;
};

} // namespace

Gadget
build_gadget(const Arena& a, GadgetKind kind)
{
    const auto side = a.fairness_side();
    const bool on_p1 = kind != GadgetKind::FairMP2;
    if (side == FairnessSide::Mixed || (side == FairnessSide::OnP1 && !on_p1) ||
        (side == FairnessSide::OnP2 && on_p1))
        throw std::invalid_argument(std::string("gadget ") + to_string(kind) + " does not match fairness side " +
                                    to_string(side));

    const std::size_t n = a.num_nodes();
    const Integer nn = n;
    const Integer& W = a.max_weight();
    const Integer scale = kind == GadgetKind::FairEnergy1 ? nn + 1 : Integer(1);
    const Integer fair_bonus = (nn * W + 1) * scale;
    const Integer escape = (nn * nn * W + nn) * scale;

    GadgetMap m;
    m.kind = kind;
    m.original_nodes = n;
    m.original_max_weight = W;
    m.weight_scale = scale;
    m.parts.resize(n);

    GadgetBuilder b(a);
    for (NodeId q = 0; q < n; q++) {
        if (a.is_fair_node(q))
            continue;
        for (std::size_t e = a.out_begin(q); e < a.out_end(q); e++)
            b.edge(q, a.edge(e).dst, a.edge(e).weight * scale, BranchRole::Copied);
    }

    auto copy_out = [&](NodeId from, NodeId q, bool fair_only, BranchRole role) {
        for (std::size_t e = a.out_begin(q); e < a.out_end(q); e++)
            if (!fair_only || a.edge(e).fair)
                b.edge(from, a.edge(e).dst, a.edge(e).weight * scale, role);
    };

    for (NodeId q = 0; q < n; q++) {
        if (!a.is_fair_node(q))
            continue;
        const std::string& nm = a.name(q);
        GadgetParts p;
        p.root = q;
        if (kind == GadgetKind::FairEnergy1) {
            p.left = b.fresh(nm + "_l", Owner::P2);
            p.right = b.fresh(nm + "_r", Owner::P2);
            p.fair = b.fresh(nm + "_fair", Owner::P2);
            p.val = b.fresh(nm + "_val", Owner::P1);
            p.pos = b.fresh(nm + "_pos", Owner::P1);
            p.zero = b.fresh(nm + "_zero", Owner::P2);
            p.esc = b.fresh(nm + "_esc", Owner::P1);
            b.edge(q, p.left, 0, BranchRole::ValueBranch);
            b.edge(q, p.right, 0, BranchRole::EscapeBranch);
            b.edge(p.left, p.fair, fair_bonus, BranchRole::FairBranch);
            b.edge(p.left, p.val, 0, BranchRole::ValueBranch);
            copy_out(p.fair, q, true, BranchRole::FairBranch);
            b.edge(p.val, p.pos, -1, BranchRole::PositiveValue);
            b.edge(p.val, p.zero, 0, BranchRole::ZeroValue);
            copy_out(p.pos, q, false, BranchRole::PositiveValue);
            copy_out(p.zero, q, true, BranchRole::ZeroValue);
            b.edge(p.right, p.esc, -escape, BranchRole::EscapeBranch);
            copy_out(p.esc, q, false, BranchRole::EscapeBranch);
        } else {
            // FairMP2 is the dual of FairMP1: owners flip, bonus and escape change sign
            const bool dual = kind == GadgetKind::FairMP2;
            const Owner chooser = dual ? Owner::P1 : Owner::P2;
            const Owner mover = dual ? Owner::P2 : Owner::P1;
            p.left = b.fresh(nm + "_l", chooser);
            p.right = b.fresh(nm + "_r", chooser);
            p.fair = b.fresh(nm + "_fair", chooser);
            p.sim = b.fresh(nm + "_sim", mover);
            p.esc = b.fresh(nm + "_esc", mover);
            b.edge(q, p.left, 0, BranchRole::SimulationBranch);
            b.edge(q, p.right, 0, BranchRole::EscapeBranch);
            b.edge(p.left, p.fair, dual ? Integer(-fair_bonus) : fair_bonus, BranchRole::FairBranch);
            b.edge(p.left, p.sim, 0, BranchRole::SimulationBranch);
            copy_out(p.fair, q, true, BranchRole::FairBranch);
            copy_out(p.sim, q, false, BranchRole::SimulationBranch);
            b.edge(p.right, p.esc, dual ? escape : Integer(-escape), BranchRole::EscapeBranch);
            copy_out(p.esc, q, false, BranchRole::EscapeBranch);
        }
        m.parts[q] = p;
    }
    return b.finish(std::move(m));
}

WinRegions
project_regions(const WinRegions& r, const GadgetMap& m)
{
    if (r.size() != m.original_of.size())
        throw std::invalid_argument("regions do not belong to this gadget arena");
    WinRegions out(m.original_nodes);
    for (NodeId g = 0; g < m.original_of.size(); g++) {
        NodeId q = m.original_of[g];
        if (q == kNoNode)
            continue;
        out.region[q] = r.region[g];
        if (r.credit[g]) {
            const Integer& c = *r.credit[g];
            out.credit[q] = (c + m.weight_scale - 1) / m.weight_scale;
        }
        if (r.value[g])
            out.value[q] = *r.value[g] / Rational(m.weight_scale);
    }
    return out;
}

} // namespace fairgames

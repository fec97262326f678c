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

#include "fairgames/arena.hpp"

#include <algorithm>
#include <sstream>

namespace fairgames {

const char*
to_string(Owner o)
{
    return o == Owner::P1 ? "p1" : "p2";
}

const char*
to_string(FairnessSide s)
{
    switch (s) {
    case FairnessSide::None: return "none";
    case FairnessSide::OnP1: return "p1";
    case FairnessSide::OnP2: return "p2";
    case FairnessSide::Mixed: return "mixed";
    }
    return "?";
}

const char*
to_string(Violation::Kind k)
{
    switch (k) {
    case Violation::Kind::DeadEnd: return "DeadEnd";
    case Violation::Kind::MixedFairness: return "MixedFairness";
    case Violation::Kind::ParallelEdge: return "ParallelEdge";
    case Violation::Kind::DuplicateName: return "DuplicateName";
    case Violation::Kind::DanglingEndpoint: return "DanglingEndpoint";
    }
    return "?";
}

static std::string
describe(const std::vector<Violation>& v)
{
    std::string msg = "invalid arena:";
    for (auto& x : v)
        msg += std::string(" ") + to_string(x.kind) + "(" + x.detail + ")";
    return msg;
}

ArenaError::ArenaError(std::vector<Violation> v)
    : std::runtime_error(describe(v)), violations_(std::move(v))
{
}

ParseError::ParseError(std::size_t line, std::size_t col, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
      line_(line), col_(col)
{
}

std::optional<std::size_t>
Arena::find_edge(NodeId src, NodeId dst) const
{
    auto first = edges_.begin() + offsets_[src];
    auto last = edges_.begin() + offsets_[src + 1];
    auto it = std::lower_bound(first, last, dst, [](const Edge& e, NodeId d) { return e.dst < d; });
    if (it != last && it->dst == dst)
        return static_cast<std::size_t>(it - edges_.begin());
    return std::nullopt;
}

std::optional<NodeId>
Arena::find_node(std::string_view name) const
{
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

std::vector<NodeId>
Arena::fair_successors(NodeId q) const
{
    std::vector<NodeId> out;
    for (std::size_t e = out_begin(q); e < out_end(q); e++)
        if (edges_[e].fair)
            out.push_back(edges_[e].dst);
    return out;
}

std::vector<NodeId>
Arena::successors(NodeId q) const
{
    std::vector<NodeId> out;
    for (std::size_t e = out_begin(q); e < out_end(q); e++)
        out.push_back(edges_[e].dst);
    return out;
}

NodeId
ArenaBuilder::add_node(std::string name, Owner owner)
{
    names_.push_back(std::move(name));
    owners_.push_back(owner);
    return static_cast<NodeId>(names_.size() - 1);
}

void
ArenaBuilder::add_edge(NodeId src, NodeId dst, Integer weight, bool fair)
{
    edges_.push_back(Edge{src, dst, std::move(weight), fair});
}

bool
ArenaBuilder::has_name(const std::string& name) const
{
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::vector<Violation>
ArenaBuilder::violations() const
{
    std::vector<Violation> out;
    const auto n = names_.size();
    for (auto& e : edges_) {
        if (e.src >= n || e.dst >= n)
            out.push_back({Violation::Kind::DanglingEndpoint,
                           std::to_string(e.src) + "->" + std::to_string(e.dst)});
    }
    auto rest = validate(build_unchecked());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

Arena
ArenaBuilder::build() const
{
    auto v = violations();
    if (!v.empty())
        throw ArenaError(std::move(v));
    return build_unchecked();
}

Arena
ArenaBuilder::build_unchecked() const
{
    Arena a;
    const auto n = names_.size();
    a.names_ = names_;
    a.owners_ = owners_;
    for (auto& e : edges_)
        if (e.src < n && e.dst < n)
            a.edges_.push_back(e);
    std::stable_sort(a.edges_.begin(), a.edges_.end(), [](const Edge& x, const Edge& y) {
        return x.src != y.src ? x.src < y.src : x.dst < y.dst;
    });
    a.offsets_.assign(n + 1, 0);
    a.fair_out_.assign(n, 0);
    bool fair1 = false, fair2 = false;
    for (auto& e : a.edges_) {
        a.offsets_[e.src + 1]++;
        Integer aw = abs(e.weight);
        if (aw > a.max_weight_)
            a.max_weight_ = aw;
        if (e.fair) {
            a.fair_out_[e.src]++;
            (a.owners_[e.src] == Owner::P1 ? fair1 : fair2) = true;
        }
    }
    for (std::size_t i = 0; i < n; i++)
        a.offsets_[i + 1] += a.offsets_[i];
    a.side_ = fair1 && fair2 ? FairnessSide::Mixed
              : fair1        ? FairnessSide::OnP1
              : fair2        ? FairnessSide::OnP2
                             : FairnessSide::None;
    for (NodeId i = 0; i < n; i++)
        a.by_name_.emplace(a.names_[i], i);
    return a;
}

std::vector<Violation>
validate(const Arena& a)
{
    std::vector<Violation> out;
    std::unordered_map<std::string, NodeId> seen;
    for (NodeId q = 0; q < a.num_nodes(); q++) {
        if (!seen.emplace(a.name(q), q).second)
            out.push_back({Violation::Kind::DuplicateName, a.name(q)});
    }
    for (NodeId q = 0; q < a.num_nodes(); q++) {
        if (a.out_degree(q) == 0)
            out.push_back({Violation::Kind::DeadEnd, a.name(q)});
        for (std::size_t e = a.out_begin(q) + 1; e < a.out_end(q); e++) {
            if (a.edge(e).dst == a.edge(e - 1).dst)
                out.push_back({Violation::Kind::ParallelEdge, a.name(q) + "->" + a.name(a.edge(e).dst)});
        }
    }
    if (a.fairness_side() == FairnessSide::Mixed)
        out.push_back({Violation::Kind::MixedFairness, "fair edges leave nodes of both players"});
    return out;
}

namespace {

struct Token
{
    std::string_view text;
    std::size_t col;
};

std::vector<Token>
tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            i++;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#')
            j++;
        out.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return out;
}

struct PendingEdge
{
    Token src, dst;
    Integer weight;
    bool fair;
    std::size_t line;
};

} // namespace

Arena
parse_arena(std::string_view text)
{
    ArenaBuilder b;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<PendingEdge> pending;
    bool header = false;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        lineno++;
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        if (!header) {
            if (toks.size() != 2 || toks[0].text != "arena" || toks[1].text != "v1")
                throw ParseError(lineno, toks[0].col, "expected header 'arena v1'");
            header = true;
            continue;
        }
        if (toks[0].text == "node") {
            if (toks.size() != 3)
                throw ParseError(lineno, toks[0].col, "expected 'node <name> p1|p2'");
            Owner o;
            if (toks[2].text == "p1")
                o = Owner::P1;
            else if (toks[2].text == "p2")
                o = Owner::P2;
            else
                throw ParseError(lineno, toks[2].col, "owner must be p1 or p2");
            std::string name(toks[1].text);
            if (ids.count(name))
                throw ParseError(lineno, toks[1].col, "duplicate node '" + name + "'");
            ids.emplace(name, b.add_node(name, o));
        } else if (toks[0].text == "edge") {
            if (toks.size() != 4 && toks.size() != 5)
                throw ParseError(lineno, toks[0].col, "expected 'edge <src> <dst> <int> [fair]'");
            bool fair = false;
            if (toks.size() == 5) {
                if (toks[4].text != "fair")
                    throw ParseError(lineno, toks[4].col, "expected 'fair'");
                fair = true;
            }
            Integer w;
            try {
                w = parse_integer(toks[3].text);
            } catch (const std::invalid_argument&) {
                throw ParseError(lineno, toks[3].col, "weight must be an integer");
            }
            pending.push_back({toks[1], toks[2], std::move(w), fair, lineno});
        } else {
            throw ParseError(lineno, toks[0].col, "unknown directive '" + std::string(toks[0].text) + "'");
        }
    }
    if (!header)
        throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing header 'arena v1'");

    std::vector<std::vector<NodeId>> targets(b.num_nodes());
    for (auto& pe : pending) {
        auto s = ids.find(std::string(pe.src.text));
        if (s == ids.end())
            throw ParseError(pe.line, pe.src.col, "dangling endpoint '" + std::string(pe.src.text) + "'");
        auto d = ids.find(std::string(pe.dst.text));
        if (d == ids.end())
            throw ParseError(pe.line, pe.dst.col, "dangling endpoint '" + std::string(pe.dst.text) + "'");
        auto& t = targets[s->second];
        if (std::find(t.begin(), t.end(), d->second) != t.end())
            throw ParseError(pe.line, pe.src.col,
                             "duplicate edge '" + std::string(pe.src.text) + "' -> '" + std::string(pe.dst.text) + "'");
        t.push_back(d->second);
        b.add_edge(s->second, d->second, pe.weight, pe.fair);
    }
    return b.build();
}

std::string
serialize_arena(const Arena& a)
{
    std::ostringstream os;
    os << "arena v1\n";
    for (NodeId q = 0; q < a.num_nodes(); q++)
        os << "node " << a.name(q) << ' ' << to_string(a.owner(q)) << '\n';
    for (auto& e : a.edges()) {
        os << "edge " << a.name(e.src) << ' ' << a.name(e.dst) << ' ' << e.weight;
        if (e.fair)
            os << " fair";
        os << '\n';
    }
    return os.str();
}

static Arena
map_weights(const Arena& a, const Integer& mul, const Integer& sub)
{
    ArenaBuilder b;
    for (NodeId q = 0; q < a.num_nodes(); q++)
        b.add_node(a.name(q), a.owner(q));
    for (auto& e : a.edges())
        b.add_edge(e.src, e.dst, mul * e.weight - sub, e.fair);
    return b.build_unchecked();
}

Arena
shift_and_scale(const Arena& a, const Rational& v)
{
    return map_weights(a, v.den(), v.num());
}

Arena
scale_weights(const Arena& a, const Integer& s)
{
    return map_weights(a, s, Integer(0));
}

static std::string
dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string
export_dot(const Arena& a)
{
    std::ostringstream os;
    os << "digraph arena {\n";
    for (NodeId q = 0; q < a.num_nodes(); q++) {
        os << "  n" << q << " [label=" << dot_quote(a.name(q))
           << ", shape=" << (a.owner(q) == Owner::P1 ? "circle" : "square") << "];\n";
    }
    for (auto& e : a.edges()) {
        os << "  n" << e.src << " -> n" << e.dst << " [label=\"" << e.weight << "\"";
        if (e.fair)
            os << ", style=dashed";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace fairgames

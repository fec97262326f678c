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
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fairgames/rational.hpp"

namespace fairgames {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class Owner : std::uint8_t { P1 = 0, P2 = 1 };

inline Owner opponent(Owner o) { return o == Owner::P1 ? Owner::P2 : Owner::P1; }
const char* to_string(Owner o);

/// Which player owns the sources of fair edges.
enum class FairnessSide : std::uint8_t { None, OnP1, OnP2, Mixed };

const char* to_string(FairnessSide s);

struct Edge
{
    NodeId src;
    NodeId dst;
    Integer weight;
    bool fair;
};

/**
 * Immutable weighted two-player arena with a set of fair edges.
 *
 * Edges are kept sorted by (src, dst), so the outgoing edges of a node are a
 * contiguous range ordered by target id. Build instances with ArenaBuilder
 * or parse_arena().
 */
class Arena
{
public:
    Arena() = default;

    std::size_t num_nodes() const { return owners_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const std::string& name(NodeId q) const { return names_[q]; }
    Owner owner(NodeId q) const { return owners_[q]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t e) const { return edges_[e]; }

    /// Index range [first, last) of the outgoing edges of q.
    std::size_t out_begin(NodeId q) const { return offsets_[q]; }
    std::size_t out_end(NodeId q) const { return offsets_[q + 1]; }
    std::size_t out_degree(NodeId q) const { return offsets_[q + 1] - offsets_[q]; }

    /// Index of the edge (src, dst), if present.
    std::optional<std::size_t> find_edge(NodeId src, NodeId dst) const;
    std::optional<NodeId> find_node(std::string_view name) const;

    /// Maximum absolute edge weight, W.
    const Integer& max_weight() const { return max_weight_; }
    FairnessSide fairness_side() const { return side_; }

    bool is_fair_node(NodeId q) const { return fair_out_[q] > 0; }
    std::size_t fair_out_degree(NodeId q) const { return fair_out_[q]; }
    /// Targets of the fair edges of q, ascending.
    std::vector<NodeId> fair_successors(NodeId q) const;
    /// Targets of all edges of q, ascending.
    std::vector<NodeId> successors(NodeId q) const;
    bool has_fair_edges() const { return side_ != FairnessSide::None; }

private:
    friend class ArenaBuilder;

    std::vector<std::string> names_;
    std::vector<Owner> owners_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> fair_out_;
    std::unordered_map<std::string, NodeId> by_name_;
    Integer max_weight_ = 0;
    FairnessSide side_ = FairnessSide::None;
};

/// One broken arena invariant.
struct Violation
{
    enum class Kind { DeadEnd, MixedFairness, ParallelEdge, DuplicateName, DanglingEndpoint };
    Kind kind;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

const char* to_string(Violation::Kind k);

class ArenaError : public std::runtime_error
{
public:
    explicit ArenaError(std::vector<Violation> v);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg);
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

/**
 * Mutable arena under construction.
 */
class ArenaBuilder
{
public:
    NodeId add_node(std::string name, Owner owner);
    void add_edge(NodeId src, NodeId dst, Integer weight, bool fair = false);

    std::size_t num_nodes() const { return names_.size(); }
    bool has_name(const std::string& name) const;

    /// Problems that build() would reject.
    std::vector<Violation> violations() const;

    /// Throws ArenaError if any invariant fails.
    Arena build() const;
    /// Assembles the arena without checking it; used to exercise validate().
    Arena build_unchecked() const;

private:
    std::vector<std::string> names_;
    std::vector<Owner> owners_;
    std::vector<Edge> edges_;
};

/// Every invariant of a, as data. Empty iff a is well formed.
std::vector<Violation> validate(const Arena& a);

Arena parse_arena(std::string_view text);
std::string serialize_arena(const Arena& a);

/// Maps every weight w to den(v)*w - num(v).
Arena shift_and_scale(const Arena& a, const Rational& v);
/// Multiplies every weight by s.
Arena scale_weights(const Arena& a, const Integer& s);

std::string export_dot(const Arena& a);

} // namespace fairgames

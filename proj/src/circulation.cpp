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

#include "circulation.hpp"

#include <deque>
#include <map>

namespace fairgames::detail {

namespace {

class Tableau
{
public:
    Tableau(std::vector<std::vector<Rational>> A, std::vector<Rational> b) : cols_(A.empty() ? 0 : A[0].size())
    {
        const auto m = A.size();
        // columns: originals, one artificial per row, right-hand side
        for (std::size_t i = 0; i < m; i++) {
            auto& row = A[i];
            row.resize(cols_ + m + 1);
            row[cols_ + i] = 1;
            row.back() = std::move(b[i]);
            rows_.push_back(std::move(row));
            basis_.push_back(cols_ + i);
        }
    }

    // Phase one; false when the constraints are infeasible.
    bool feasible()
    {
        std::vector<Rational> cost(width(), Rational(0));
        for (std::size_t i = 0; i < rows_.size(); i++)
            cost[cols_ + i] = -1;
        auto obj = reduced(cost);
        if (!optimize(obj, width() - 1))
            return false;
        if (obj.back() != 0)
            return false;
        // pivot remaining artificials out, dropping redundant rows
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < cols_) {
                i++;
                continue;
            }
            std::size_t j = 0;
            while (j < cols_ && rows_[i][j] == 0)
                j++;
            if (j == cols_) {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, j, nullptr);
            i++;
        }
        return true;
    }

    // Phase two over the original columns.
    std::optional<Rational> maximize(const std::vector<Rational>& c)
    {
        std::vector<Rational> cost(width(), Rational(0));
        std::copy(c.begin(), c.end(), cost.begin());
        auto obj = reduced(cost);
        if (!optimize(obj, cols_))
            return std::nullopt;
        return -obj.back();
    }

private:
    std::size_t width() const { return rows_.empty() ? cols_ + 1 : rows_[0].size(); }

    // Reduced costs for the current basis; the last entry is minus the
    // objective value.
    std::vector<Rational> reduced(const std::vector<Rational>& cost) const
    {
        std::vector<Rational> obj = cost;
        obj.back() = 0;
        for (std::size_t i = 0; i < rows_.size(); i++) {
            const Rational& cb = cost[basis_[i]];
            if (cb == 0)
                continue;
            for (std::size_t j = 0; j < obj.size(); j++)
                if (rows_[i][j] != 0)
                    obj[j] -= cb * rows_[i][j];
        }
        return obj;
    }

    // Bland's rule over entering columns below limit; false when unbounded.
    bool optimize(std::vector<Rational>& obj, std::size_t limit)
    {
        const auto rhs = width() - 1;
        while (true) {
            std::size_t j = 0;
            while (j < limit && obj[j] <= 0)
                j++;
            if (j == limit)
                return true;
            std::size_t leave = rows_.size();
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); i++) {
                if (rows_[i][j] <= 0)
                    continue;
                Rational ratio = rows_[i][rhs] / rows_[i][j];
                if (leave == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == rows_.size())
                return false;
            pivot(leave, j, &obj);
        }
    }

    void pivot(std::size_t r, std::size_t j, std::vector<Rational>* obj)
    {
        auto& row = rows_[r];
        const Rational p = row[j];
        for (auto& x : row)
            if (x != 0)
                x = x / p;
        auto eliminate = [&](std::vector<Rational>& other) {
            const Rational f = other[j];
            if (f == 0)
                return;
            for (std::size_t k = 0; k < other.size(); k++)
                if (row[k] != 0)
                    other[k] -= f * row[k];
        };
        for (std::size_t i = 0; i < rows_.size(); i++)
            if (i != r)
                eliminate(rows_[i]);
        if (obj)
            eliminate(*obj);
        basis_[r] = j;
    }

    std::size_t cols_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> basis_;
};

} // namespace

std::optional<Rational>
lp_maximize(std::vector<std::vector<Rational>> A, std::vector<Rational> b, const std::vector<Rational>& c)
{
    for (const auto& x : b)
        if (x < 0)
            throw std::invalid_argument("lp_maximize needs a nonnegative right-hand side");
    if (A.empty())
        return std::nullopt;
    Tableau t(std::move(A), std::move(b));
    if (!t.feasible())
        return std::nullopt;
    return t.maximize(c);
}

bool
circulation_certificate(const Arena& a, const StrategyMachine& s, const std::vector<NodeId>& starts,
                        GameKind game, const Rational& threshold, bool owner_fair)
{
    const auto n = a.num_nodes();
    auto cost_of = [&](std::size_t e) {
        const Integer& w = a.edge(e).weight;
        return game == GameKind::MeanPayoff ? Rational(threshold.den() * w - threshold.num()) : Rational(w);
    };

    // recurrent memory orbit of each owner node, as edge counts
    std::vector<std::map<std::size_t, std::uint64_t>> bundle(n);
    std::vector<std::uint64_t> period(n, 0);
    for (NodeId q = 0; q < n; q++) {
        if (a.owner(q) != s.owner)
            continue;
        const auto& rules = s.rules[q];
        if (rules.empty())
            return false;
        std::vector<char> seen(rules.size(), 0);
        std::uint32_t m = 0;
        while (!seen[m]) {
            seen[m] = 1;
            m = rules[m].next;
            if (m >= rules.size())
                return false;
        }
        const std::uint32_t first = m;
        do {
            auto e = a.find_edge(q, rules[m].move);
            if (!e)
                return false;
            bundle[q][*e]++;
            period[q]++;
            m = rules[m].next;
        } while (m != first);
    }

    // nodes reachable under any move the machine may ever make
    std::vector<char> reach(n, 0);
    std::deque<NodeId> todo;
    for (auto q : starts)
        if (!reach[q]) {
            reach[q] = 1;
            todo.push_back(q);
        }
    while (!todo.empty()) {
        const NodeId q = todo.front();
        todo.pop_front();
        auto visit = [&](NodeId v) {
            if (!reach[v]) {
                reach[v] = 1;
                todo.push_back(v);
            }
        };
        if (a.owner(q) == s.owner) {
            for (const auto& r : s.rules[q])
                visit(r.move);
        } else {
            for (auto v : a.successors(q))
                visit(v);
        }
    }

    // a fair node whose orbit skips one of its fair edges must not lie on
    // any cycle, since every cycle through it would be unfair
    if (owner_fair) {
        auto step = [&](NodeId q) {
            std::vector<NodeId> next;
            if (a.owner(q) == s.owner) {
                for (const auto& [e, k] : bundle[q])
                    next.push_back(a.edge(e).dst);
            } else {
                next = a.successors(q);
            }
            return next;
        };
        for (NodeId q = 0; q < n; q++) {
            if (!reach[q] || a.owner(q) != s.owner)
                continue;
            bool covered = true;
            for (std::size_t e = a.out_begin(q); e < a.out_end(q); e++)
                covered = covered && (!a.edge(e).fair || bundle[q].count(e));
            if (covered)
                continue;
            std::vector<char> seen(n, 0);
            std::vector<NodeId> stack = step(q);
            while (!stack.empty()) {
                const NodeId v = stack.back();
                stack.pop_back();
                if (v == q)
                    return false;
                if (seen[v])
                    continue;
                seen[v] = 1;
                for (auto w : step(v))
                    stack.push_back(w);
            }
        }
    }

    // one variable per opponent edge and one per owner node (orbit count)
    std::vector<std::size_t> row_of(n, 0);
    std::size_t rows = 0;
    for (NodeId q = 0; q < n; q++)
        if (reach[q])
            row_of[q] = rows++;
    std::vector<std::vector<Rational>> columns;
    std::vector<Rational> cost;
    auto add_column = [&](const std::map<std::size_t, std::uint64_t>& edges, NodeId src, std::uint64_t len) {
        std::vector<Rational> col(rows + 1, Rational(0));
        Rational c = 0;
        col[row_of[src]] += Rational(Integer(len));
        for (const auto& [e, k] : edges) {
            col[row_of[a.edge(e).dst]] -= Rational(Integer(k));
            c += Rational(Integer(k)) * cost_of(e);
        }
        col[rows] = Rational(Integer(len));
        columns.push_back(std::move(col));
        // a first-player machine loses on negative weight: maximize its negation
        cost.push_back(s.owner == Owner::P1 ? -c : c);
    };
    for (NodeId q = 0; q < n; q++) {
        if (!reach[q])
            continue;
        if (a.owner(q) == s.owner) {
            add_column(bundle[q], q, period[q]);
        } else {
            for (std::size_t e = a.out_begin(q); e < a.out_end(q); e++)
                add_column({{e, 1}}, q, 1);
        }
    }
    std::vector<std::vector<Rational>> A(rows + 1, std::vector<Rational>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); j++)
        for (std::size_t i = 0; i <= rows; i++)
            A[i][j] = columns[j][i];
    std::vector<Rational> b(rows + 1, Rational(0));
    b[rows] = 1;
    auto best = lp_maximize(std::move(A), std::move(b), cost);
    if (!best)
        return false;
    // player 1 machine: every circulation has weight >= 0;
    // player 2 machine: every circulation has weight < 0
    return s.owner == Owner::P1 ? *best <= 0 : *best < 0;
}

} // namespace fairgames::detail

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

#include <optional>
#include <vector>

#include "fairgames/strategies.hpp"

namespace fairgames::detail {

/**
 * Exact maximum of c.x subject to A x = b, x >= 0, where every b[i] >= 0.
 * Two-phase tableau simplex with Bland's rule, so degenerate instances
 * terminate. Returns nullopt when infeasible or unbounded.
 */
std::optional<Rational> lp_maximize(std::vector<std::vector<Rational>> A, std::vector<Rational> b,
                                    const std::vector<Rational>& c);

/**
 * Sufficient condition for verify_machine that avoids the product.
 *
 * With local memory, every cycle of the product leaves each owner node q a
 * whole number of times around the recurrent orbit of its memory, so its
 * edge counts form a circulation in which q always emits the same bundle of
 * edges. Returns true when no such circulation over the nodes reachable from
 * starts has a losing weight for s.owner, and, if owner_fair, every bundle at
 * a fair node contains all of its fair edges. A false result proves nothing.
 */
bool circulation_certificate(const Arena& a, const StrategyMachine& s, const std::vector<NodeId>& starts,
                             GameKind game, const Rational& threshold, bool owner_fair);

} // namespace fairgames::detail

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

#include <functional>
#include <vector>

#include "fairgames/energy.hpp"

namespace fairgames {

/// Optimal value per node.
using ValueTable = std::vector<Rational>;

/**
 * Decides avg >= v for player 1 by solving the energy game on the arena
 * with weights den(v)*w - num(v). Strategies come from that energy solve.
 */
EnergySolution solve_mp_threshold(const Arena& a, const Rational& v);

/// Largest v per node such that player 1 wins avg >= v.
ValueTable optimal_values(const Arena& a);

/**
 * Recovers per-node optimal values from a threshold oracle.
 *
 * win1_at(v) returns the player 1 winning set at threshold v; it must be
 * antitone in v and contain every node at v = -W. Values are assumed to be
 * fractions with denominator at most max_den inside [-W, W]. Probe results
 * are cached, so nodes sharing a value share probes.
 */
ValueTable values_from_thresholds(std::size_t n, const Integer& W, const Integer& max_den,
                                  const std::function<std::vector<bool>(const Rational&)>& win1_at);

} // namespace fairgames

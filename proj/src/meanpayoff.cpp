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

#include "fairgames/meanpayoff.hpp"

#include <map>
#include <stdexcept>

namespace fairgames {

EnergySolution
solve_mp_threshold(const Arena& a, const Rational& v)
{
    return solve_energy(shift_and_scale(a, v));
}

ValueTable
values_from_thresholds(std::size_t n, const Integer& W, const Integer& max_den,
                       const std::function<std::vector<bool>(const Rational&)>& win1_at)
{
    std::map<Rational, std::vector<bool>> cache;
    auto probe = [&](const Rational& v) -> const std::vector<bool>& {
        auto it = cache.find(v);
        if (it == cache.end())
            it = cache.emplace(v, win1_at(v)).first;
        return it->second;
    };

    ValueTable out(n);
    const Integer lo = -W;
    for (NodeId q = 0; q < n; q++) {
        if (!probe(Rational(lo))[q])
            throw std::logic_error("threshold oracle rejects node at -W");
        out[q] = largest_satisfying(lo, W, max_den, [&](const Rational& v) { return bool(probe(v)[q]); });
    }
    return out;
}

ValueTable
optimal_values(const Arena& a)
{
    const auto n = a.num_nodes();
    return values_from_thresholds(n, a.max_weight(), Integer(std::max<std::size_t>(n, 1)),
                                  [&](const Rational& v) {
                                      auto s = solve_mp_threshold(a, v);
                                      std::vector<bool> w(n);
                                      for (NodeId q = 0; q < n; q++)
                                          w[q] = s.regions.in_win1(q);
                                      return w;
                                  });
}

} // namespace fairgames

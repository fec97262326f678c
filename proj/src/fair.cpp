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

#include "fairgames/fair.hpp"

#include <stdexcept>

namespace fairgames {

const char*
to_string(GameKind g)
{
    return g == GameKind::MeanPayoff ? "mp" : "energy";
}

void
require_side(const Arena& a, FairnessSide side)
{
    if (side != FairnessSide::OnP1 && side != FairnessSide::OnP2)
        throw std::invalid_argument("fairness side must be p1 or p2");
    auto have = a.fairness_side();
    if (have != FairnessSide::None && have != side)
        throw std::invalid_argument(std::string("arena fairness side is ") + to_string(have) + ", requested " +
                                    to_string(side));
}

DeterminacyVerdict
check_determinacy(const FairSolveReport& report)
{
    DeterminacyVerdict d;
    d.witnesses = report.regions.undetermined();
    d.determined = d.witnesses.empty();
    return d;
}

static FairSolveReport
finish(WinRegions r, std::string route)
{
    FairSolveReport rep{std::move(r), std::move(route), {}};
    rep.determinacy = check_determinacy(rep);
    return rep;
}

FairSolveReport
solve_fair_mp(const Arena& a, FairnessSide side, const Rational& v)
{
    require_side(a, side);
    auto kind = side == FairnessSide::OnP1 ? GadgetKind::FairMP1 : GadgetKind::FairMP2;
    auto g = build_gadget(shift_and_scale(a, v), kind);
    auto sol = solve_energy(g.arena);
    auto r = project_regions(sol.regions, g.map);
    // credits of the shifted game carry no meaning for the mean-payoff objective
    for (auto& c : r.credit)
        c.reset();
    return finish(std::move(r), std::string("gadget:") + to_string(kind));
}

ValueTable
fair_mp_optimal_values(const Arena& a, FairnessSide side)
{
    require_side(a, side);
    const auto n = a.num_nodes();
    return values_from_thresholds(n, a.max_weight(), Integer(std::max<std::size_t>(n, 1)),
                                  [&](const Rational& v) {
                                      auto rep = solve_fair_mp(a, side, v);
                                      std::vector<bool> w(n);
                                      for (NodeId q = 0; q < n; q++)
                                          w[q] = rep.regions.in_win1(q);
                                      return w;
                                  });
}

FairSolveReport
solve_fair_energy(const Arena& a, FairnessSide side)
{
    require_side(a, side);
    if (side == FairnessSide::OnP1) {
        auto g = build_gadget(a, GadgetKind::FairEnergy1);
        auto sol = solve_energy(g.arena);
        return finish(project_regions(sol.regions, g.map), "gadget:FairEnergy1");
    }
    const auto n = a.num_nodes();
    auto regular = solve_energy(a);
    auto mp = solve_fair_mp(a, FairnessSide::OnP2, Rational(0));
    WinRegions r(n);
    for (NodeId q = 0; q < n; q++) {
        if (regular.regions.in_win1(q)) {
            r.region[q] = Region::Win1;
            r.credit[q] = regular.regions.credit[q];
        } else if (mp.regions.in_win2(q)) {
            r.region[q] = Region::Win2;
        }
    }
    return finish(std::move(r), "decomposition:energy+fair-mp2");
}

FairSolveReport
solve_fair(const Arena& a, const FairObjectiveSpec& spec)
{
    if (spec.game == GameKind::MeanPayoff)
        return solve_fair_mp(a, spec.side, spec.threshold);
    return solve_fair_energy(a, spec.side);
}

} // namespace fairgames

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

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairgames/fair.hpp"
#include "fairgames/generate.hpp"
#include "fairgames/oracle.hpp"
#include "fairgames/strategies.hpp"

namespace fairgames::cli {

namespace {

using nlohmann::ordered_json;

struct Flags
{
    std::string file;
    std::string game = "mp";
    std::string threshold = "0";
    std::string epsilon = "1/10";
    int player = 1;
    std::uint64_t steps = 1'000'000;
    bool json = false;
    bool dot = false;
    std::uint64_t seed = 0;
    std::size_t nodes = 4;
    std::int64_t max_weight = 3;
    std::string fair = "none";
    double density = 0.4;
    std::string start;
};

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string
read_file(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GameKind
game_of(const Flags& f)
{
    if (f.game == "mp")
        return GameKind::MeanPayoff;
    if (f.game == "energy")
        return GameKind::Energy;
    throw UsageError("--game must be mp or energy");
}

Rational
rational_flag(const std::string& text, const char* name)
{
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(name) + " expects <int> or <int>/<posint>");
    }
}

FairnessSide
effective_side(const Arena& a)
{
    return a.fairness_side() == FairnessSide::OnP2 ? FairnessSide::OnP2 : FairnessSide::OnP1;
}

ordered_json
names(const Arena& a, const std::vector<NodeId>& ids)
{
    auto arr = ordered_json::array();
    for (auto q : ids)
        arr.push_back(a.name(q));
    return arr;
}

struct Report
{
    WinRegions regions;
    std::string route;
    bool determined = true;
};

Report
solve_report(const Arena& a, GameKind game, const Rational& v)
{
    if (!a.has_fair_edges()) {
        auto s = game == GameKind::Energy ? solve_energy(a) : solve_mp_threshold(a, v);
        if (game == GameKind::MeanPayoff)
            for (auto& c : s.regions.credit)
                c.reset();
        return {s.regions, game == GameKind::Energy ? "regular:energy" : "regular:mp", true};
    }
    auto rep = solve_fair(a, {game, a.fairness_side(), v});
    return {rep.regions, rep.route, rep.determinacy.determined};
}

void
print_report(const Arena& a, const Report& r, bool json, std::ostream& out)
{
    if (json) {
        ordered_json j;
        j["regions"]["win1"] = names(a, r.regions.win1());
        j["regions"]["win2"] = names(a, r.regions.win2());
        j["regions"]["undetermined"] = names(a, r.regions.undetermined());
        j["credits"] = ordered_json::object();
        j["values"] = ordered_json::object();
        for (NodeId q = 0; q < a.num_nodes(); q++) {
            if (r.regions.credit[q])
                j["credits"][a.name(q)] = r.regions.credit[q]->str();
            if (r.regions.value[q])
                j["values"][a.name(q)] = r.regions.value[q]->to_fraction_string();
        }
        j["route"] = r.route;
        j["determinacy"] = r.determined ? "determined" : "not-determined";
        out << j.dump(2) << '\n';
        return;
    }
    auto line = [&](const char* label, const std::vector<NodeId>& ids) {
        out << label << ':';
        for (auto q : ids)
            out << ' ' << a.name(q);
        out << '\n';
    };
    out << "route: " << r.route << '\n';
    out << "determinacy: " << (r.determined ? "determined" : "not-determined") << '\n';
    line("win1", r.regions.win1());
    line("win2", r.regions.win2());
    line("undetermined", r.regions.undetermined());
    for (NodeId q = 0; q < a.num_nodes(); q++) {
        if (r.regions.credit[q])
            out << "credit " << a.name(q) << ": " << *r.regions.credit[q] << '\n';
        if (r.regions.value[q])
            out << "value " << a.name(q) << ": " << *r.regions.value[q] << '\n';
    }
}

int
cmd_solve(const Flags& f, std::ostream& out)
{
    auto a = parse_arena(read_file(f.file));
    auto v = rational_flag(f.threshold, "--threshold");
    print_report(a, solve_report(a, game_of(f), v), f.json, out);
    return kExitOk;
}

int
cmd_value(const Flags& f, std::ostream& out)
{
    auto a = parse_arena(read_file(f.file));
    if (game_of(f) != GameKind::MeanPayoff)
        throw UsageError("value is defined for --game mp only");
    Report r;
    r.regions = WinRegions(a.num_nodes());
    ValueTable vals;
    if (a.has_fair_edges()) {
        vals = fair_mp_optimal_values(a, a.fairness_side());
        r.route = std::string("values:") + (a.fairness_side() == FairnessSide::OnP1 ? "FairMP1" : "FairMP2");
    } else {
        vals = optimal_values(a);
        r.route = "values:regular-mp";
    }
    for (NodeId q = 0; q < a.num_nodes(); q++)
        r.regions.value[q] = vals[q];
    if (f.json) {
        print_report(a, r, true, out);
        return kExitOk;
    }
    out << "route: " << r.route << '\n';
    for (NodeId q = 0; q < a.num_nodes(); q++)
        out << "value " << a.name(q) << ": " << vals[q] << '\n';
    return kExitOk;
}

int
cmd_gadget(const Flags& f, std::ostream& out)
{
    auto a = parse_arena(read_file(f.file));
    auto game = game_of(f);
    auto side = effective_side(a);
    GadgetKind kind;
    if (game == GameKind::MeanPayoff)
        kind = side == FairnessSide::OnP1 ? GadgetKind::FairMP1 : GadgetKind::FairMP2;
    else if (side == FairnessSide::OnP1)
        kind = GadgetKind::FairEnergy1;
    else
        throw std::invalid_argument("no gadget exists for energy games with fairness on player 2");
    const Arena base = game == GameKind::MeanPayoff ? shift_and_scale(a, rational_flag(f.threshold, "--threshold")) : a;
    auto g = build_gadget(base, kind);
    if (f.dot) {
        out << export_dot(g.arena);
        return kExitOk;
    }
    if (f.json) {
        ordered_json j;
        j["kind"] = to_string(kind);
        j["weight_scale"] = g.map.weight_scale.str();
        j["arena"] = serialize_arena(g.arena);
        auto roles = ordered_json::array();
        for (std::size_t e = 0; e < g.arena.num_edges(); e++) {
            const auto& ed = g.arena.edge(e);
            roles.push_back({{"src", g.arena.name(ed.src)},
                             {"dst", g.arena.name(ed.dst)},
                             {"role", to_string(g.map.branch_role[e])}});
        }
        j["roles"] = roles;
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "# gadget " << to_string(kind) << ", weight scale " << g.map.weight_scale << '\n';
    out << serialize_arena(g.arena);
    return kExitOk;
}

Owner
player_of(const Flags& f)
{
    if (f.player == 1)
        return Owner::P1;
    if (f.player == 2)
        return Owner::P2;
    throw UsageError("--player must be 1 or 2");
}

FairObjectiveSpec
spec_of(const Arena& a, const Flags& f)
{
    return {game_of(f), effective_side(a), rational_flag(f.threshold, "--threshold")};
}

/// Finite machine for player; escalating schedules are finitized with --epsilon.
StrategyMachine
machine_for(const Arena& a, const FairObjectiveSpec& spec, Owner player, const Rational& eps, std::string* note)
{
    auto s = synthesize(a, spec, player);
    if (auto* m = std::get_if<StrategyMachine>(&s))
        return *m;
    const auto& sched = std::get<EscalatingSchedule>(s);
    if (note)
        *note = "finitized escalating schedule, rounds " + std::to_string(finitize_rounds(sched, eps));
    return finitize(sched, eps);
}

int
cmd_strategy(const Flags& f, std::ostream& out)
{
    auto a = parse_arena(read_file(f.file));
    auto spec = spec_of(a, f);
    auto player = player_of(f);
    auto s = synthesize(a, spec, player);
    ordered_json j;
    if (auto* m = std::get_if<StrategyMachine>(&s)) {
        if (f.json) {
            j["kind"] = "machine";
            j["machine"] = serialize_machine(a, *m);
        } else {
            out << serialize_machine(a, *m);
        }
    } else {
        const auto& sched = std::get<EscalatingSchedule>(s);
        auto eps = rational_flag(f.epsilon, "--epsilon");
        std::ostringstream desc;
        for (auto& r : sched.rules) {
            desc << "escalate at " << a.name(r.node) << " preferred " << a.name(r.preferred) << " fair";
            for (auto d : r.fair)
                desc << ' ' << a.name(d);
            desc << '\n';
        }
        auto fm = finitize(sched, eps);
        if (f.json) {
            j["kind"] = "escalating";
            j["schedule"] = desc.str();
            j["epsilon"] = eps.to_fraction_string();
            j["rounds"] = finitize_rounds(sched, eps);
            j["machine"] = serialize_machine(a, fm);
        } else {
            out << desc.str();
            out << "# finitized with epsilon " << eps << ", rounds " << finitize_rounds(sched, eps) << '\n';
            out << serialize_machine(a, fm);
        }
    }
    if (f.json)
        out << j.dump(2) << '\n';
    return kExitOk;
}

ordered_json
lasso_json(const Arena& a, const LassoAnalysis& l)
{
    ordered_json j;
    std::vector<NodeId> p = l.prefix, c = l.cycle;
    j["prefix"] = names(a, p);
    j["cycle"] = names(a, c);
    j["fair_on_cycle"] = l.fair_on_cycle;
    j["cycle_mean"] = l.cycle_mean.to_fraction_string();
    j["cycle_weight"] = l.cycle_weight.str();
    j["min_prefix_weight"] = l.min_prefix_weight.str();
    return j;
}

int
cmd_simulate(const Flags& f, std::ostream& out)
{
    auto a = parse_arena(read_file(f.file));
    auto spec = spec_of(a, f);
    auto eps = rational_flag(f.epsilon, "--epsilon");
    auto s1 = machine_for(a, spec, Owner::P1, eps, nullptr);
    auto s2 = machine_for(a, spec, Owner::P2, eps, nullptr);
    std::vector<NodeId> starts;
    if (!f.start.empty()) {
        auto q = a.find_node(f.start);
        if (!q)
            throw std::invalid_argument("unknown start node '" + f.start + "'");
        starts.push_back(*q);
    } else {
        for (NodeId q = 0; q < a.num_nodes(); q++)
            starts.push_back(q);
    }
    ordered_json arr = ordered_json::array();
    for (auto q : starts) {
        auto l = simulate(a, s1, s2, q, f.steps);
        if (f.json) {
            auto j = lasso_json(a, l);
            j["start"] = a.name(q);
            arr.push_back(j);
            continue;
        }
        out << "start " << a.name(q) << ": prefix";
        for (auto x : l.prefix)
            out << ' ' << a.name(x);
        out << " | cycle";
        if (l.cycle.size() <= 64) {
            for (auto x : l.cycle)
                out << ' ' << a.name(x);
        } else {
            out << " (" << l.cycle.size() << " nodes)";
        }
        out << " | mean " << l.cycle_mean << " weight " << l.cycle_weight << " min-prefix " << l.min_prefix_weight
            << (l.fair_on_cycle ? " fair" : " unfair") << '\n';
    }
    if (f.json)
        out << arr.dump(2) << '\n';
    return kExitOk;
}

int
cmd_gen(const Flags& f, std::ostream& out)
{
    GenOptions g;
    g.nodes = f.nodes;
    g.max_weight = f.max_weight;
    g.density = f.density;
    g.seed = f.seed;
    if (f.fair == "p1")
        g.fair = FairnessSide::OnP1;
    else if (f.fair == "p2")
        g.fair = FairnessSide::OnP2;
    else if (f.fair == "none")
        g.fair = FairnessSide::None;
    else
        throw UsageError("--fair must be p1, p2 or none");
    if (f.nodes == 0)
        throw UsageError("--nodes must be positive");
    if (f.max_weight < 0)
        throw UsageError("--max-weight must be nonnegative");
    if (!(f.density >= 0.0 && f.density <= 1.0))
        throw UsageError("--density must lie in [0, 1]");
    out << serialize_arena(random_arena(g));
    return kExitOk;
}

int
cmd_oracle(const Flags& f, std::ostream& out, std::ostream& err)
{
    auto a = parse_arena(read_file(f.file));
    auto game = game_of(f);
    auto v = rational_flag(f.threshold, "--threshold");
    WinRegions truth = a.has_fair_edges() ? oracle_fair(a, {game, a.fairness_side(), v}) : oracle_regular(a, game, v);
    auto solved = solve_report(a, game, v);
    std::vector<NodeId> diff;
    for (NodeId q = 0; q < a.num_nodes(); q++)
        if (truth.region[q] != solved.regions.region[q])
            diff.push_back(q);
    if (f.json) {
        ordered_json j;
        j["oracle"]["win1"] = names(a, truth.win1());
        j["oracle"]["win2"] = names(a, truth.win2());
        j["oracle"]["undetermined"] = names(a, truth.undetermined());
        j["solver"]["win1"] = names(a, solved.regions.win1());
        j["solver"]["win2"] = names(a, solved.regions.win2());
        j["solver"]["undetermined"] = names(a, solved.regions.undetermined());
        j["disagreements"] = names(a, diff);
        out << j.dump(2) << '\n';
    } else {
        auto line = [&](const char* label, const std::vector<NodeId>& ids) {
            out << label << ':';
            for (auto q : ids)
                out << ' ' << a.name(q);
            out << '\n';
        };
        line("oracle win1", truth.win1());
        line("oracle win2", truth.win2());
        line("oracle undetermined", truth.undetermined());
        line("solver win1", solved.regions.win1());
        line("solver win2", solved.regions.win2());
        line("solver undetermined", solved.regions.undetermined());
        line("disagreements", diff);
    }
    if (!diff.empty()) {
        err << "oracle disagreement on " << diff.size() << " node(s)\n";
        return kExitDisagreement;
    }
    return kExitOk;
}

} // namespace

int
run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Flags f;
    CLI::App app{"Solver for weighted two-player games with strong transition fairness", "fairgames"};
    app.require_subcommand(1);

    auto add_game = [&](CLI::App* c) {
        c->add_option("--game", f.game, "mp or energy")->check(CLI::IsMember({"mp", "energy"}));
        c->add_option("--threshold", f.threshold, "mean-payoff threshold a/b");
        c->add_flag("--json", f.json, "machine-readable report");
    };
    auto add_file = [&](CLI::App* c) { c->add_option("file", f.file, "arena file, - for stdin")->required(); };

    auto* solve = app.add_subcommand("solve", "winning regions and credits");
    add_file(solve);
    add_game(solve);
    auto* value = app.add_subcommand("value", "optimal mean-payoff values");
    add_file(value);
    add_game(value);
    auto* gadget = app.add_subcommand("gadget", "print the gadget arena");
    add_file(gadget);
    add_game(gadget);
    gadget->add_flag("--dot", f.dot, "emit DOT");
    auto* strategy = app.add_subcommand("strategy", "synthesize a strategy");
    add_file(strategy);
    add_game(strategy);
    strategy->add_option("--player", f.player, "1 or 2");
    strategy->add_option("--epsilon", f.epsilon, "slack for finitizing escalating schedules");
    auto* sim = app.add_subcommand("simulate", "play synthesized strategies against each other");
    add_file(sim);
    add_game(sim);
    sim->add_option("--epsilon", f.epsilon, "slack for finitizing escalating schedules");
    sim->add_option("--steps", f.steps, "step limit per start node");
    sim->add_option("--start", f.start, "start node name (default: every node)");
    auto* gen = app.add_subcommand("gen", "random arena");
    gen->add_option("--nodes", f.nodes, "number of nodes");
    gen->add_option("--max-weight", f.max_weight, "weight bound W");
    gen->add_option("--fair", f.fair, "p1, p2 or none")->check(CLI::IsMember({"p1", "p2", "none"}));
    gen->add_option("--density", f.density, "edge probability");
    gen->add_option("--seed", f.seed, "random seed");
    auto* oracle = app.add_subcommand("oracle", "compare with brute-force enumeration");
    add_file(oracle);
    add_game(oracle);
    app.add_subcommand("dot", "print an arena as DOT")->add_option("file", f.file)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    try {
        if (*solve)
            return cmd_solve(f, out);
        if (*value)
            return cmd_value(f, out);
        if (*gadget)
            return cmd_gadget(f, out);
        if (*strategy)
            return cmd_strategy(f, out);
        if (*sim)
            return cmd_simulate(f, out);
        if (*gen)
            return cmd_gen(f, out);
        if (*oracle)
            return cmd_oracle(f, out, err);
        out << export_dot(parse_arena(read_file(f.file)));
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

} // namespace fairgames::cli

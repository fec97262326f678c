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

#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "fairgames/arena.hpp"

namespace fairgames {
namespace {

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result
run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kPump = std::string(FAIRGAMES_TEST_DATA) + "/pump_then_fair.arena";
const std::string kEscape = std::string(FAIRGAMES_TEST_DATA) + "/fair_escape_loop.arena";

TEST(Cli, SolveReportsWinningRegions)
{
    auto r = run({"solve", "--game", "mp", "--threshold", "0", kPump});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("win1: q p\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("route: gadget:FairMP1"), std::string::npos);
}

TEST(Cli, JsonReportFollowsTheSchema)
{
    auto r = run({"solve", "--game", "energy", "--json", kEscape});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["regions"]["win1"], nlohmann::json::array({"r"}));
    EXPECT_EQ(j["regions"]["win2"], nlohmann::json::array());
    EXPECT_EQ(j["regions"]["undetermined"], nlohmann::json::array({"q"}));
    EXPECT_EQ(j["determinacy"], "not-determined");
    EXPECT_EQ(j["route"], "decomposition:energy+fair-mp2");
    EXPECT_TRUE(j["credits"].is_object());
    EXPECT_TRUE(j["values"].is_object());

    auto v = nlohmann::json::parse(run({"value", "--json", kPump}).out);
    EXPECT_EQ(v["values"]["q"], "1/1");
    EXPECT_EQ(v["values"]["p"], "1/1");
}

TEST(Cli, GenIsDeterministicAndValid)
{
    std::vector<std::string> args{"gen", "--nodes", "4", "--max-weight", "3", "--fair", "p1", "--density", "0.4",
                                  "--seed", "7"};
    auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, cli::kExitOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(validate(parse_arena(a.out)).empty());
    for (int seed = 0; seed < 25; seed++) {
        auto g = run({"gen", "--nodes", std::to_string(1 + seed % 7), "--fair", seed % 2 ? "p2" : "none", "--seed",
                      std::to_string(seed)});
        EXPECT_TRUE(validate(parse_arena(g.out)).empty());
    }
}

TEST(Cli, ReportsAreByteIdentical)
{
    for (auto args : std::vector<std::vector<std::string>>{{"solve", "--json", "--game", "energy", kPump},
                                                            {"strategy", "--player", "1", kPump},
                                                            {"simulate", "--json", kPump},
                                                            {"gadget", "--json", kEscape}})
        EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, StrategyAndSimulate)
{
    auto s = run({"strategy", "--player", "1", "--threshold", "1", kPump});
    ASSERT_EQ(s.code, cli::kExitOk) << s.err;
    EXPECT_NE(s.out.find("escalate at q preferred q fair p"), std::string::npos) << s.out;
    auto sim = nlohmann::json::parse(run({"simulate", "--json", "--threshold", "1", "--start", "q", kPump}).out);
    ASSERT_EQ(sim.size(), 1u);
    EXPECT_EQ(sim[0]["fair_on_cycle"], true);
}

TEST(Cli, GadgetAndDot)
{
    auto g = run({"gadget", kPump});
    ASSERT_EQ(g.code, cli::kExitOk);
    EXPECT_NE(g.out.find("edge q_l q_fair 9"), std::string::npos) << g.out;
    EXPECT_NE(run({"gadget", "--dot", kPump}).out.find("digraph"), std::string::npos);
    EXPECT_NE(run({"dot", kEscape}).out.find("style=dashed"), std::string::npos);
    EXPECT_EQ(run({"gadget", "--game", "energy", kEscape}).code, cli::kExitInvalid);
}

TEST(Cli, OracleAgrees)
{
    auto r = run({"oracle", "--game", "energy", kEscape});
    EXPECT_EQ(r.code, cli::kExitOk) << r.out;
    EXPECT_NE(r.out.find("disagreements:\n"), std::string::npos);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"solve"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"solve", "--game", "chess", kPump}).code, cli::kExitUsage);
    EXPECT_EQ(run({"solve", "--threshold", "1/0", kPump}).code, cli::kExitUsage);
    EXPECT_EQ(run({"strategy", "--player", "3", kPump}).code, cli::kExitUsage);
    EXPECT_EQ(run({"gen", "--nodes", "0"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"solve", "/nonexistent/arena"}).code, cli::kExitInvalid);
    EXPECT_EQ(run({"value", "--game", "energy", kPump}).code, cli::kExitUsage);
    auto help = run({"--help"});
    EXPECT_EQ(help.code, cli::kExitOk);
    EXPECT_NE(help.out.find("solve"), std::string::npos);
}

} // namespace
} // namespace fairgames

// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <trajforge/jsonl.hpp>

#include "test_support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

using namespace trajforge;
using trajforge::testing::TempDir;

namespace
{
struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

auto run_cli(std::vector<std::string> args) -> Outcome
{
    args.insert(args.begin(), "trajforge");
    auto argv = std::vector<char const*> {};
    for (auto const& a: args)
        argv.push_back(a.c_str());
    auto out = std::ostringstream {};
    auto err = std::ostringstream {};
    auto code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return { code, out.str(), err.str() };
}

// Exit status of the real binary, environment variables cleared of credentials.
auto binary_status(std::string const& args) -> int
{
    auto command = std::string("env -u TRAJFORGE_API_KEY ") + TRAJFORGE_CLI_BINARY + " " + args + " >/dev/null 2>&1";
    auto status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct Pipeline
{
    TempDir dir { "cli" };
    std::string instances = dir.file("instances.jsonl");
    std::string trajectories = dir.file("traj.jsonl");

    Pipeline(std::size_t count = 60)
    {
        auto r = run_cli({ "gen-instances", "--count", std::to_string(count), "--seed", "7", "-o", instances });
        REQUIRE_MESSAGE(r.code == 0, r.err);
    }
};
} // namespace

TEST_CASE("gen-instances writes meta plus one record per instance")
{
    auto p = Pipeline(60);
    auto doc = read_jsonl(p.instances);
    REQUIRE(doc.meta);
    CHECK((*doc.meta)["kind"] == "instances");
    CHECK((*doc.meta)["seed"] == 7);
    CHECK((*doc.meta)["config_hash"].get<std::string>().size() == 16);
    CHECK(doc.records.size() == 60);
    CHECK(doc.records[0].contains("ground_truth"));

    auto again = p.dir.file("again.jsonl");
    REQUIRE(run_cli({ "gen-instances", "--count", "60", "--seed", "7", "-o", again }).code == 0);
    CHECK(read_text_file(again) == read_text_file(p.instances));
}

TEST_CASE("explore, filter, export and stats chain together")
{
    auto p = Pipeline(60);
    auto report = p.dir.file("report.json");
    auto r = run_cli({ "explore", "--instances", p.instances, "--target", "30", "--parallelism", "2", "-o",
                       p.trajectories, "--report", report });
    REQUIRE_MESSAGE(r.code == 0, r.err);
    auto traj = read_jsonl(p.trajectories);
    CHECK(traj.records.size() == 30);
    CHECK((*traj.meta)["report"]["accepted"] == 30);
    CHECK(Json::parse(read_text_file(report))["total"] == 30);

    auto accepted = p.dir.file("accepted.jsonl");
    auto f = run_cli({ "filter", "--instances", p.instances, "--trajectories", p.trajectories, "-o", accepted });
    REQUIRE_MESSAGE(f.code == 0, f.err);
    CHECK(f.out.find("total 30  accepted 30") != std::string::npos);
    CHECK(f.err.empty());
    CHECK(read_jsonl(accepted).records.size() == 30);

    auto dataset = p.dir.file("dataset.jsonl");
    auto e = run_cli({ "export", "--instances", p.instances, "--trajectories", accepted, "-o", dataset });
    REQUIRE_MESSAGE(e.code == 0, e.err);
    auto data = read_jsonl(dataset);
    CHECK_FALSE(data.meta.has_value());
    CHECK(data.records.size() == 30);
    CHECK(data.records[0]["messages"][0]["role"] == "system");
    CHECK(Json::parse(read_text_file(dataset + ".meta.json"))["_meta"]["records"] == 30);

    auto s = run_cli({ "stats", "-i", p.trajectories, "--label", "oracle", "--json" });
    REQUIRE_MESSAGE(s.code == 0, s.err);
    CHECK(s.out.find("Structure") != std::string::npos);
    CHECK(s.out.find("oracle") != std::string::npos);
}

TEST_CASE("faulty agent recovers from single faults but not back-to-back ones")
{
    auto p = Pipeline(30);
    auto single = run_cli({ "explore", "--instances", p.instances, "--agent", "faulty", "--faults", "1:swap_toolname",
                            "--target", "10", "-o", p.trajectories });
    REQUIRE_MESSAGE(single.code == 0, single.err);
    auto doc = read_jsonl(p.trajectories);
    CHECK((*doc.meta)["report"]["verdict_histogram"]["ok_recovered"] == 10);

    auto twice = run_cli({ "explore", "--instances", p.instances, "--agent", "faulty", "--faults",
                           "1:drop_required_arg,2:corrupt_structure", "--target", "5", "--budget", "8", "-o",
                           p.trajectories });
    CHECK(twice.code == 1);
    CHECK(read_jsonl(p.trajectories).records.size() == 8);
}

TEST_CASE("stats over sample records")
{
    auto dir = TempDir("cli-stats");
    auto path = dir.file("samples.jsonl");
    auto records = std::vector<Json> {};
    for (int i = 0; i < 4; ++i)
        records.push_back({ { "error_layer", i == 0 ? Json("structure") : Json(nullptr) } });
    write_jsonl(path, std::nullopt, records);
    auto r = run_cli({ "stats", "-i", path, "--label", "s" });
    REQUIRE(r.code == 0);
    CHECK(r.out.find("0.33") != std::string::npos);

    records.push_back({ { "error_layer", "cosmic" } });
    write_jsonl(path, std::nullopt, records);
    CHECK(run_cli({ "stats", "-i", path }).code == 1);
}

TEST_CASE("usage errors")
{
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({ "frobnicate" }).code == 2);
    CHECK(run_cli({ "gen-instances" }).code == 2);
    CHECK(run_cli({ "gen-instances", "--count", "0", "-o", "x" }).code == 2);
    CHECK(run_cli({ "--help" }).code == 0);
    auto v = run_cli({ "--version" });
    CHECK(v.code == 0);
    CHECK(v.out.find("trajforge") != std::string::npos);
}

TEST_CASE("exit codes of the installed binary")
{
    auto dir = TempDir("cli-bin");
    auto instances = dir.file("i.jsonl");
    CHECK(binary_status("") == 2);
    CHECK(binary_status("gen-instances --count 5 -o " + instances) == 0);
    CHECK(binary_status("explore --instances " + instances + " --agent remote --endpoint http://127.0.0.1:9/v1 -o " +
                        dir.file("t.jsonl")) == 2);
    CHECK(binary_status("explore --instances " + instances + " --agent faulty --faults 1:corrupt_structure,2:swap_toolname"
                        " --target 2 --budget 3 -o " + dir.file("t.jsonl")) == 1);
    CHECK(binary_status("filter --instances " + dir.file("missing.jsonl") + " --trajectories x") == 1);
}

TEST_CASE("fixture mismatch is refused")
{
    auto p = Pipeline(5);
    auto r = run_cli({ "explore", "--instances", p.instances, "--fixture-seed", "2", "--target", "1", "-o", p.trajectories });
    CHECK(r.code == 2);
}

TEST_CASE("data directory can be redirected through the environment")
{
    auto empty = TempDir("cli-data");
    ::setenv("TRAJFORGE_DATA_DIR", empty.path().c_str(), 1);
    auto r = run_cli({ "gen-instances", "--count", "1", "-o", empty.file("i.jsonl") });
    ::unsetenv("TRAJFORGE_DATA_DIR");
    CHECK(r.code == 1);
    CHECK(r.err.find(empty.path().string()) != std::string::npos);
    CHECK(run_cli({ "gen-instances", "--count", "1", "-o", empty.file("i.jsonl") }).code == 0);
}

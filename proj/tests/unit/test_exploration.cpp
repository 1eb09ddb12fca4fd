// SPDX-License-Identifier: Apache-2.0
#include <trajforge/agents.hpp>
#include <trajforge/exploration.hpp>
#include <trajforge/seed.hpp>

#include "test_support.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace trajforge;
using namespace trajforge::exploration;
using trajforge::testing::load_corpus;

namespace
{
auto sorted_accepted(ExplorationResult const& r) -> std::vector<Json>
{
    auto out = std::vector<Json> {};
    for (auto const& t: r.accepted)
        out.push_back(t.to_json());
    std::ranges::sort(out, {}, [](Json const& j) { return j["episode_id"].get<std::string>(); });
    return out;
}

struct Boom final: agents::AgentPolicy
{
    auto next_action(agents::ConversationView const&) -> std::string override
    {
        throw std::runtime_error("boom");
    }
};
} // namespace

TEST_CASE("oracle collection reaches 500 in 500 attempts")
{
    auto const& corpus = load_corpus();
    auto instances = trajforge::testing::generate(corpus, 400, 11);
    auto environment = env::Environment(corpus.registry);
    auto config = ExplorationConfig {};
    config.target_accepted = 500;
    config.seed = 5;
    auto result = run_exploration(environment, instances, corpus.store, agents::oracle_factory(corpus.templates_by_id()),
                                  config);
    CHECK(result.target_reached);
    CHECK(result.accepted.size() == 500);
    CHECK(result.attempts.size() == 500);
    CHECK(result.report.total == 500);
    CHECK(result.report.accepted == 500);

    // reuse is expected: 500 attempts over 400 instances
    auto used = std::set<std::string> {};
    for (auto const& t: result.accepted)
        used.insert(t.instance_id);
    CHECK(used.size() < 500);
}

TEST_CASE("an always-failing agent exhausts the budget")
{
    auto const& corpus = load_corpus();
    auto instances = trajforge::testing::generate(corpus, 20, 2);
    auto environment = env::Environment(corpus.registry);
    auto factory = agents::AgentFactory([](querygen::QueryInstance const&) -> std::unique_ptr<agents::AgentPolicy> {
        return std::make_unique<agents::ScriptedAgent>(std::vector<std::string> { "not an action" });
    });
    auto config = ExplorationConfig {};
    config.target_accepted = 3;
    config.attempt_budget = 10;
    try
    {
        (void)run_exploration(environment, instances, corpus.store, factory, config);
        FAIL("expected TargetUnreachable");
    }
    catch (TargetUnreachable const& e)
    {
        CHECK(e.code() == ErrorCode::TargetUnreachable);
        CHECK(e.partial().attempts.size() == 10);
        CHECK(e.partial().accepted.empty());
        CHECK_FALSE(e.partial().target_reached);
        CHECK(e.partial().report.total == 10);
    }
}

TEST_CASE("the default budget is twenty times the target")
{
    auto const& corpus = load_corpus();
    auto instances = trajforge::testing::generate(corpus, 5, 2);
    auto environment = env::Environment(corpus.registry);
    auto factory = agents::AgentFactory([](querygen::QueryInstance const&) -> std::unique_ptr<agents::AgentPolicy> {
        return std::make_unique<Boom>();
    });
    auto config = ExplorationConfig {};
    config.target_accepted = 2;
    try
    {
        (void)run_exploration(environment, instances, corpus.store, factory, config);
        FAIL("expected TargetUnreachable");
    }
    catch (TargetUnreachable const& e)
    {
        CHECK(e.partial().attempts.size() == 40);
    }
}

TEST_CASE("parallelism does not change the result")
{
    auto const& corpus = load_corpus();
    auto instances = trajforge::testing::generate(corpus, 60, 4);
    auto environment = env::Environment(corpus.registry);
    auto factory = agents::oracle_factory(corpus.templates_by_id());

    // a faulty agent on some instances, so the accepted set is not trivially everything
    auto mixed = agents::AgentFactory([&](querygen::QueryInstance const& i) -> std::unique_ptr<agents::AgentPolicy> {
        auto inner = factory(i);
        if (fnv1a(i.instance_id) % 3 == 0)
            return std::make_unique<agents::FaultInjectingAgent>(
                std::move(inner), std::map<std::size_t, agents::Mutation> { { 1, agents::Mutation::SwapToolname },
                                                                           { 2, agents::Mutation::CorruptStructure } });
        return inner;
    });

    auto config = ExplorationConfig {};
    config.target_accepted = 40;
    config.seed = 9;
    config.parallelism = 1;
    auto serial = run_exploration(environment, instances, corpus.store, mixed, config);
    config.parallelism = 4;
    auto parallel = run_exploration(environment, instances, corpus.store, mixed, config);

    CHECK(serial.accepted.size() == 40);
    CHECK(serial.report.total > 40);
    CHECK(sorted_accepted(serial) == sorted_accepted(parallel));
    CHECK(serial.report == parallel.report);
    CHECK(serial.attempts.size() == parallel.attempts.size());
}

TEST_CASE("a throwing policy only aborts its own episode")
{
    auto const& corpus = load_corpus();
    auto instances = trajforge::testing::generate(corpus, 30, 6);
    auto environment = env::Environment(corpus.registry);
    auto oracle = agents::oracle_factory(corpus.templates_by_id());
    auto factory = agents::AgentFactory([&](querygen::QueryInstance const& i) -> std::unique_ptr<agents::AgentPolicy> {
        if (i.instance_id == instances[0].instance_id)
            return std::make_unique<Boom>();
        return oracle(i);
    });
    auto config = ExplorationConfig {};
    config.target_accepted = 30;
    config.parallelism = 3;
    auto result = run_exploration(environment, instances, corpus.store, factory, config);
    for (auto const& a: result.attempts)
    {
        if (a.trajectory.instance_id == instances[0].instance_id)
        {
            CHECK(a.trajectory.terminal == trajectory::TerminalStatus::Aborted);
            CHECK(a.verdict.reason == trajectory::VerdictReason::Aborted);
        }
        else
            CHECK(a.verdict.accepted);
    }
}

TEST_CASE("attempt instance draw")
{
    CHECK(attempt_instance(1, 0, 400) < 400);
    CHECK(attempt_instance(1, 7, 400) == attempt_instance(1, 7, 400));
    CHECK(attempt_instance(3, 0, 1) == 0);
    auto hits = std::set<std::size_t> {};
    for (std::size_t k = 0; k < 200; ++k)
        hits.insert(attempt_instance(42, k, 10));
    CHECK(hits.size() == 10);
}

TEST_CASE("bad exploration configs")
{
    auto const& corpus = load_corpus();
    auto environment = env::Environment(corpus.registry);
    auto factory = agents::oracle_factory(corpus.templates_by_id());
    auto config = ExplorationConfig {};
    CHECK(trajforge::testing::error_code_of([&] {
              (void)run_exploration(environment, std::span<querygen::QueryInstance const> {}, corpus.store, factory,
                                    config);
          }) == ErrorCode::InvalidArgument);
    auto instances = trajforge::testing::generate(corpus, 2, 1);
    config.target_accepted = 0;
    CHECK(trajforge::testing::error_code_of(
              [&] { (void)run_exploration(environment, instances, corpus.store, factory, config); }) ==
          ErrorCode::InvalidArgument);
}

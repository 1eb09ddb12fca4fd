// SPDX-License-Identifier: Apache-2.0
#include <trajforge/agents.hpp>
#include <trajforge/exploration.hpp>
#include <trajforge/query_gen.hpp>

#include <benchmark/benchmark.h>

using namespace trajforge;

namespace
{
struct Bundle
{
    tools::ToolRegistry registry = tools::ToolRegistry::load_catalog(TRAJFORGE_BENCH_DATA "/tools.json");
    std::vector<querygen::QueryTemplate> templates = querygen::load_templates(TRAJFORGE_BENCH_DATA "/templates.json");
    tools::FixtureStore store = tools::FixtureStore::generate(1);

    auto instances(std::size_t count, std::uint64_t seed) const -> std::vector<querygen::QueryInstance>
    {
        auto provider = querygen::PoolValueProvider {};
        auto paraphraser = querygen::IdentityParaphraser {};
        return querygen::generate_instances(templates, count, { provider, paraphraser, registry, store }, seed);
    }

    auto by_id() const -> std::map<std::string, querygen::QueryTemplate>
    {
        auto out = std::map<std::string, querygen::QueryTemplate> {};
        for (auto const& t: templates)
            out.emplace(t.template_id, t);
        return out;
    }
};

auto bundle() -> Bundle const&
{
    static auto const b = Bundle {};
    return b;
}
} // namespace

static void parse_action(benchmark::State& state)
{
    auto raw = std::string("I should look up the movie first.\n"
                           R"({"tool_name": "get_search_movie_for_movie_tools", "arguments": {"query": "The Dark Knight"}})");
    for (auto _: state)
        benchmark::DoNotOptimize(env::parse_action(raw));
}
BENCHMARK(parse_action);

static void environment_step(benchmark::State& state)
{
    auto const& b = bundle();
    auto environment = env::Environment(b.registry);
    auto instance = b.instances(1, 3).front();
    auto action = env::format_action({ "Finish", { { "answer", "x" } } });
    for (auto _: state)
    {
        auto episode = environment.start(instance, b.store);
        benchmark::DoNotOptimize(environment.step(episode, action));
    }
}
BENCHMARK(environment_step);

static void generate_instances(benchmark::State& state)
{
    auto const& b = bundle();
    for (auto _: state)
        benchmark::DoNotOptimize(b.instances(static_cast<std::size_t>(state.range(0)), 7));
}
BENCHMARK(generate_instances)->Arg(40)->Arg(400)->Unit(benchmark::kMillisecond);

static void run_exploration(benchmark::State& state)
{
    auto const& b = bundle();
    auto instances = b.instances(400, 1);
    auto environment = env::Environment(b.registry);
    auto factory = agents::oracle_factory(b.by_id());
    auto config = exploration::ExplorationConfig {};
    config.target_accepted = 500;
    config.parallelism = static_cast<std::size_t>(state.range(0));
    for (auto _: state)
        benchmark::DoNotOptimize(exploration::run_exploration(environment, instances, b.store, factory, config));
}
BENCHMARK(run_exploration)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

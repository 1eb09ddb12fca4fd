// SPDX-License-Identifier: Apache-2.0
#include <trajforge/environment.hpp>

#include "test_support.hpp"

#include <doctest.h>

using namespace trajforge;
using namespace trajforge::env;
using trajforge::testing::call;
using trajforge::testing::error_code_of;
using trajforge::testing::finish;
using trajforge::testing::load_corpus;
using trajforge::testing::make_instance;

namespace
{
auto movie_instance() -> querygen::QueryInstance
{
    return make_instance("m-1", "x",
                         { "get_search_movie_for_movie_tools", "get_movie_details_for_movie_tools",
                           "calculate_population_density_for_geo_tools", "Finish" });
}

auto dark_knight(tools::FixtureStore const& store) -> Json
{
    for (auto const& r: store.table("movies"))
        if (r["title"] == "The Dark Knight")
            return r;
    return nullptr;
}
} // namespace

TEST_CASE("parse_action accepts the wire format")
{
    auto a = parse_action(R"({"tool_name": "get_movie_details_for_movie_tools", "arguments": {"id": 155}})");
    REQUIRE(a.parsed.has_value());
    CHECK(a.parsed->tool_name == "get_movie_details_for_movie_tools");
    CHECK(a.parsed->arguments == Json { { "id", 155 } });
    CHECK(a.thought.empty());
    CHECK(a.fault.empty());
}

TEST_CASE("parse_action keeps a leading thought")
{
    auto a = parse_action("I need the id first.\n" + call("get_search_movie_for_movie_tools", { { "movie_name", "Up" } }));
    REQUIRE(a.parsed.has_value());
    CHECK(a.thought == "I need the id first.");

    auto env = parse_action(R"({"thought": "look it up", "action": {"tool_name": "Finish", "arguments": {"final_answer": "1"}}})");
    REQUIRE(env.parsed.has_value());
    CHECK(env.thought == "look it up");
    CHECK(env.parsed->tool_name == "Finish");
}

TEST_CASE("parse_action structure faults")
{
    CHECK_FALSE(parse_action("let me think about this").parsed.has_value());
    CHECK_FALSE(parse_action("").parsed.has_value());
    CHECK_FALSE(parse_action(R"({"tool_name": "a", "arguments": {})").parsed.has_value());
    CHECK_FALSE(parse_action(R"({"arguments": {}})").parsed.has_value());
    CHECK_FALSE(parse_action(R"({"tool_name": "a", "arguments": [1]})").parsed.has_value());
    CHECK_FALSE(parse_action(R"({"tool_name": 5, "arguments": {}})").parsed.has_value());
    // two calls at once break the one-call-per-step protocol
    auto two = parse_action(call("a") + "\n" + call("b"));
    CHECK_FALSE(two.parsed.has_value());
    CHECK_FALSE(two.fault.empty());
    CHECK_FALSE(parse_action("[" + call("a") + "," + call("b") + "]").parsed.has_value());
}

TEST_CASE("parse_action edge cases that still parse")
{
    auto nullArgs = parse_action(R"({"tool_name": "a", "arguments": null})");
    REQUIRE(nullArgs.parsed.has_value());
    CHECK(nullArgs.parsed->arguments == Json::object());
    CHECK(parse_action(R"({"tool_name": "a"})").parsed->arguments == Json::object());

    auto braces = parse_action(R"({"tool_name": "Finish", "arguments": {"final_answer": "use } and { freely"}})");
    REQUIRE(braces.parsed.has_value());
    CHECK(braces.parsed->arguments["final_answer"] == "use } and { freely");

    CHECK(parse_action("[" + call("a") + "]").parsed.has_value());
}

TEST_CASE("format_action is the inverse of parse_action")
{
    auto c = ToolCall { "search_movie_for_imdb", { { "query", "Heat" } } };
    auto plain = parse_action(format_action(c));
    REQUIRE(plain.parsed.has_value());
    CHECK(*plain.parsed == c);
    auto withThought = parse_action(format_action(c, "search first"));
    REQUIRE(withThought.parsed.has_value());
    CHECK(*withThought.parsed == c);
    CHECK(withThought.thought == "search first");
}

TEST_CASE("error layers have stable names")
{
    for (auto layer: { ErrorLayer::Structure, ErrorLayer::Toolname, ErrorLayer::Arguments, ErrorLayer::Execution })
        CHECK(parse_error_layer(to_string(layer)) == layer);
    CHECK(to_string(ErrorLayer::Toolname) == "toolname");
    CHECK_FALSE(parse_error_layer("semantic").has_value());
}

TEST_CASE("classification picks the first failing layer")
{
    auto const& corpus = load_corpus();
    auto environment = Environment(corpus.registry);
    auto state = environment.start(movie_instance(), corpus.store);

    auto structure = environment.classify_and_handle(state, parse_action("not an action"));
    CHECK(structure.is_error);
    CHECK(structure.error_layer == ErrorLayer::Structure);
    CHECK(structure.text.rfind("ERROR[structure]: ", 0) == 0);

    // registered but not offered for this instance
    auto notOffered = environment.classify_and_handle(state, parse_action(call("get_capital_for_geo_tools", { { "country", "France" } })));
    CHECK(notOffered.error_layer == ErrorLayer::Toolname);
    CHECK(notOffered.text ==
          "ERROR[toolname]: tool \"get_capital_for_geo_tools\" is not available. Available tools: "
          "get_search_movie_for_movie_tools, get_movie_details_for_movie_tools, "
          "calculate_population_density_for_geo_tools, Finish");

    // a hallucinated name with bad arguments is still a toolname error
    auto invented = environment.classify_and_handle(state, parse_action(call("get_movie_v2", { { "bogus", 1 } })));
    CHECK(invented.error_layer == ErrorLayer::Toolname);

    auto args = environment.classify_and_handle(
        state, parse_action(call("get_movie_details_for_movie_tools", { { "id", "155" }, { "verbose", true } })));
    CHECK(args.error_layer == ErrorLayer::Arguments);
    CHECK(args.text == "ERROR[arguments]: tool \"get_movie_details_for_movie_tools\": parameter \"id\" has the wrong "
                       "type; unknown parameter \"verbose\"");

    auto exec = environment.classify_and_handle(
        state, parse_action(call("get_search_movie_for_movie_tools", { { "movie_name", "Nonexistent Film 123" } })));
    CHECK(exec.error_layer == ErrorLayer::Execution);
    CHECK(exec.text.rfind("ERROR[execution]: tool \"get_search_movie_for_movie_tools\" failed: ", 0) == 0);

    CHECK(state.history().empty());
}

TEST_CASE("a valid call returns the fixture payload")
{
    auto const& corpus = load_corpus();
    auto environment = Environment(corpus.registry);
    auto state = environment.start(movie_instance(), corpus.store);
    auto record = dark_knight(corpus.store);
    auto obs = environment.classify_and_handle(
        state, parse_action(call("get_movie_details_for_movie_tools", { { "id", record["id"] } })));
    REQUIRE_FALSE(obs.is_error);
    CHECK_FALSE(obs.error_layer.has_value());
    auto payload = Json::parse(obs.text);
    for (auto const& key: { "id", "title", "year", "genres", "rating", "runtime", "director", "language" })
        CHECK(payload[key] == record[key]);
}

TEST_CASE("finishing on the first step")
{
    auto const& corpus = load_corpus();
    auto environment = Environment(corpus.registry);
    auto state = environment.start(movie_instance(), corpus.store);
    auto obs = environment.step(state, finish("42"));
    CHECK_FALSE(obs.is_error);
    CHECK(state.status() == EpisodeStatus::Finished);
    CHECK(state.final_answer() == "42");
    CHECK(state.step_index() == 1);
    CHECK(error_code_of([&] { (void)environment.step(state, finish("43")); }) == ErrorCode::SteppingTerminatedEpisode);
    CHECK(error_code_of([&] { (void)environment.classify_and_handle(state, parse_action(finish("43"))); }) ==
          ErrorCode::SteppingTerminatedEpisode);
}

TEST_CASE("the step limit ends an episode")
{
    auto const& corpus = load_corpus();
    auto config = EnvironmentConfig {};
    config.max_steps = 3;
    auto environment = Environment(corpus.registry, config);
    auto state = environment.start(movie_instance(), corpus.store);
    auto density = call("calculate_population_density_for_geo_tools", { { "population", 100 }, { "area_km2", 4 } });
    for (int i = 0; i < 3; ++i)
    {
        REQUIRE(state.running());
        CHECK_FALSE(environment.step(state, density).is_error);
    }
    CHECK(state.status() == EpisodeStatus::StepLimitExceeded);
    CHECK_FALSE(state.final_answer().has_value());

    config.max_steps = 0;
    CHECK(error_code_of([&] { Environment(corpus.registry, config); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("an error mid-episode is recorded and fed back")
{
    auto const& corpus = load_corpus();
    auto environment = Environment(corpus.registry);
    auto state = environment.start(movie_instance(), corpus.store);
    (void)environment.step(state, call("get_search_movie_for_movie_tools", { { "movie_name", "Heat" } }));
    auto obs = environment.step(state, call("get_movie_details_for_movie_tools"));
    CHECK(obs.is_error);
    CHECK(obs.text.find("missing required parameter \"id\"") != std::string::npos);
    CHECK(state.running());
    CHECK(state.error_history() == std::vector<ErrorRecord> { { 2, ErrorLayer::Arguments } });
    CHECK(state.history()[1].observation.text == obs.text);
}

TEST_CASE("episodes work on their own copy of the store")
{
    auto const& corpus = load_corpus();
    auto environment = Environment(corpus.registry);
    auto instance = make_instance("crm", "x", { "update_case_status_for_crm_tools", "Finish" });
    auto state = environment.start(instance, corpus.store);
    (void)environment.step(state, call("update_case_status_for_crm_tools", { { "case_id", 1 }, { "status", "Frozen" } }));
    CHECK(state.store().table("cases")[0]["status"] == "Frozen");
    CHECK(corpus.store.table("cases")[0]["status"] != "Frozen");
}

TEST_CASE("lenient argument mode drops unknown parameters")
{
    auto const& corpus = load_corpus();
    auto config = EnvironmentConfig {};
    config.strict_args = false;
    auto environment = Environment(corpus.registry, config);
    auto state = environment.start(movie_instance(), corpus.store);
    auto obs = environment.step(state, call("get_search_movie_for_movie_tools", { { "movie_name", "Heat" }, { "page", 2 } }));
    CHECK_FALSE(obs.is_error);
}

TEST_CASE("without action monitoring errors carry no layer")
{
    auto const& corpus = load_corpus();
    auto config = EnvironmentConfig {};
    config.monitoring.action_monitoring = false;
    auto environment = Environment(corpus.registry, config);
    auto state = environment.start(movie_instance(), corpus.store);

    auto hallucinated = environment.step(state, call("get_movie_v2", { { "id", 1 } }));
    CHECK(hallucinated.is_error);
    CHECK_FALSE(hallucinated.error_layer.has_value());
    CHECK(hallucinated.text == "ERROR: tool \"get_movie_v2\" failed: no such tool");

    auto garbage = environment.step(state, "garbage");
    CHECK_FALSE(garbage.error_layer.has_value());
    CHECK(garbage.text == "ERROR: the action could not be executed");

    // executes any registered tool, offered or not
    auto unoffered = environment.step(state, call("get_capital_for_geo_tools", { { "country", "France" } }));
    CHECK_FALSE(unoffered.is_error);

    CHECK(state.error_history().empty());
}

TEST_CASE("with both monitors on the default pipeline is unchanged")
{
    auto const& corpus = load_corpus();
    auto config = EnvironmentConfig {};
    config.monitoring = { true, true };
    auto a = Environment(corpus.registry, config);
    auto b = Environment(corpus.registry);
    auto sa = a.start(movie_instance(), corpus.store);
    auto sb = b.start(movie_instance(), corpus.store);
    for (auto const& raw: { std::string("junk"), call("nope"), finish("1") })
    {
        auto oa = a.step(sa, raw);
        auto ob = b.step(sb, raw);
        CHECK(oa.text == ob.text);
        CHECK(oa.error_layer == ob.error_layer);
    }
}

TEST_CASE("long observations are truncated on a character boundary")
{
    auto const& corpus = load_corpus();
    auto config = EnvironmentConfig {};
    config.observation_budget = 40;
    auto environment = Environment(corpus.registry, config);
    auto instance = make_instance("long", "x", { "Finish" });
    auto state = environment.start(instance, corpus.store);
    auto obs = environment.step(state, finish(std::string(10, 'a') + "\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9" + std::string(40, 'b')));
    CHECK(obs.text.find(" ...[truncated ") != std::string::npos);
    auto kept = obs.text.substr(0, obs.text.find(" ...[truncated "));
    CHECK(kept.size() <= 40);
    // no dangling continuation byte
    CHECK((static_cast<unsigned char>(kept.back()) & 0xC0) != 0xC0);
    // the final answer itself is never truncated
    CHECK(state.final_answer()->size() == 10 + 10 + 40);
}

TEST_CASE("offered tools follow the instance order")
{
    auto const& corpus = load_corpus();
    auto environment = Environment(corpus.registry);
    auto specs = environment.offered_tools(movie_instance());
    REQUIRE(specs.size() == 4);
    CHECK(specs[0]->name == "get_search_movie_for_movie_tools");
    CHECK(specs[3]->is_terminal);
}

TEST_CASE("default system prompt")
{
    auto const& prompt = default_system_prompt();
    CHECK(prompt.rfind("[BEGIN OF TASK INSTRUCTION]", 0) == 0);
    CHECK(prompt.find("call exactly 1 tool") != std::string::npos);
    CHECK(prompt.find("\"Finish\"") != std::string::npos);
    CHECK(EnvironmentConfig {}.system_prompt == prompt);
}

// SPDX-License-Identifier: Apache-2.0
#include <trajforge/tool_registry.hpp>

#include "test_support.hpp"

#include <doctest.h>

using namespace trajforge;
using namespace trajforge::tools;
using trajforge::testing::error_code_of;
using trajforge::testing::load_corpus;

namespace
{
// Independent scan of the raw movies table.
auto movie_record(FixtureStore const& store, std::string const& title) -> Json
{
    for (auto const& r: store.table("movies"))
        if (r["title"] == title)
            return r;
    return nullptr;
}

auto tool_doc(std::string name, Json binding, Json params = Json::array()) -> Json
{
    return { { "name", std::move(name) }, { "description", "t" }, { "params", std::move(params) }, { "binding", std::move(binding) } };
}
} // namespace

TEST_CASE("bundled catalog registers 57 tools with one terminal")
{
    auto const& registry = load_corpus().registry;
    CHECK(registry.size() == 57);
    CHECK(registry.has_terminal());
    CHECK(registry.terminal().name == "Finish");
    CHECK(registry.contains("get_search_movie_for_movie_tools"));
    CHECK(registry.names().front() == "get_search_movie_for_movie_tools");
}

TEST_CASE("registering a name twice is rejected")
{
    auto registry = ToolRegistry {};
    auto doc = tool_doc("echo", { { "kind", "arithmetic" }, { "op", "add" }, { "operands", { "a" } } });
    registry.register_tool(ToolSpec::from_json(doc));
    CHECK(registry.find("echo") != nullptr);
    CHECK(error_code_of([&] { registry.register_tool(ToolSpec::from_json(doc)); }) == ErrorCode::DuplicateToolName);
}

TEST_CASE("terminal tools are constrained")
{
    auto finishParams = Json::array({ { { "name", "final_answer" }, { "type", "text" } } });
    auto registry = ToolRegistry {};
    registry.register_tool(ToolSpec::from_json(tool_doc("Done", { { "kind", "terminal" } }, finishParams)));
    CHECK(error_code_of([&] {
              registry.register_tool(ToolSpec::from_json(tool_doc("Done2", { { "kind", "terminal" } }, finishParams)));
          }) == ErrorCode::InvalidArgument);

    auto bare = ToolRegistry {};
    CHECK(error_code_of([&] { bare.register_tool(ToolSpec::from_json(tool_doc("X", { { "kind", "terminal" } }))); }) ==
          ErrorCode::InvalidArgument);
    CHECK(error_code_of([&] { (void)bare.terminal(); }) == ErrorCode::UnknownTool);
    CHECK(error_code_of([&] { (void)bare.at("nope"); }) == ErrorCode::UnknownTool);
}

TEST_CASE("malformed tool documents")
{
    CHECK(error_code_of([] { (void)ToolSpec::from_json(Json { { "description", "no name" } }); }) ==
          ErrorCode::MalformedDocument);
    auto badType = tool_doc("t", { { "kind", "terminal" } }, Json::array({ { { "name", "a" }, { "type", "blob" } } }));
    CHECK(error_code_of([&] { (void)ToolSpec::from_json(badType); }) == ErrorCode::MalformedDocument);
    auto dup = tool_doc("t", Json::object(),
                        Json::array({ { { "name", "a" }, { "type", "text" } }, { { "name", "a" }, { "type", "text" } } }));
    CHECK(error_code_of([&] { (void)ToolSpec::from_json(dup); }) == ErrorCode::MalformedDocument);
    CHECK(error_code_of([] { (void)ToolRegistry::from_catalog(Json(3)); }) == ErrorCode::MalformedDocument);
}

TEST_CASE("catalog round-trips through its document form")
{
    auto const& registry = load_corpus().registry;
    auto again = ToolRegistry::from_catalog(registry.to_catalog());
    CHECK(again.names() == registry.names());
    CHECK(again.to_catalog() == registry.to_catalog());
}

TEST_CASE("value conformance has no coercion")
{
    CHECK(conforms(Json(155), ValueType::Integer));
    CHECK_FALSE(conforms(Json("155"), ValueType::Integer));
    CHECK_FALSE(conforms(Json(1.5), ValueType::Integer));
    CHECK(conforms(Json(3), ValueType::Decimal));
    CHECK(conforms(Json(3.25), ValueType::Decimal));
    CHECK_FALSE(conforms(Json(true), ValueType::Decimal));
    CHECK(conforms(Json("x"), ValueType::Text));
    CHECK(conforms(Json::array(), ValueType::List));
    CHECK(conforms(Json::object(), ValueType::Object));
    CHECK(conforms(Json(false), ValueType::Boolean));
    CHECK(parse_value_type("integer") == ValueType::Integer);
    CHECK_FALSE(parse_value_type("blob").has_value());
}

TEST_CASE("validate_args reports every fault")
{
    auto const& details = load_corpus().registry.at("get_movie_details_for_movie_tools");
    CHECK(validate_args(details, { { "id", 155 } }).empty());
    CHECK(validate_args(details, Json::object()) ==
          std::vector<ArgumentFault> { { ArgumentFault::Kind::MissingRequired, "id" } });
    CHECK(validate_args(details, { { "id", 155 }, { "verbose", true } }) ==
          std::vector<ArgumentFault> { { ArgumentFault::Kind::UnknownParam, "verbose" } });
    CHECK(validate_args(details, { { "id", 155 }, { "verbose", true } }, false).empty());
    CHECK(validate_args(details, { { "id", "155" } }) ==
          std::vector<ArgumentFault> { { ArgumentFault::Kind::TypeMismatch, "id" } });
    CHECK(validate_args(details, Json::array()).size() == 1);
    CHECK(ArgumentFault { ArgumentFault::Kind::MissingRequired, "id" }.describe().find("\"id\"") != std::string::npos);
}

TEST_CASE("search finds the fixture record by title")
{
    auto const& corpus = load_corpus();
    auto store = corpus.store;
    auto expected = movie_record(store, "The Dark Knight");
    REQUIRE(expected.is_object());

    auto result = execute(corpus.registry.at("get_search_movie_for_movie_tools"), { { "movie_name", "The Dark Knight" } }, store);
    REQUIRE(result.is_ok());
    CHECK_FALSE(result.terminal);
    CHECK(result.payload["results"][0]["id"] == expected["id"]);
    CHECK(result.payload["results"][0]["title"] == "The Dark Knight");

    auto details = execute(corpus.registry.at("get_movie_details_for_movie_tools"), { { "id", expected["id"] } }, store);
    REQUIRE(details.is_ok());
    CHECK(details.payload["genres"] == expected["genres"]);
}

TEST_CASE("search ranks an exact title ahead of partial matches")
{
    auto const& corpus = load_corpus();
    auto store = corpus.store;
    // "Up" is also a substring of other titles.
    auto result = execute(corpus.registry.at("get_search_movie_for_movie_tools"), { { "movie_name", "Up" } }, store);
    REQUIRE(result.is_ok());
    CHECK(result.payload["results"][0]["title"] == "Up");
}

TEST_CASE("execution failures come back as error results")
{
    auto const& corpus = load_corpus();
    auto store = corpus.store;
    auto missing = execute(corpus.registry.at("get_search_movie_for_movie_tools"),
                           { { "movie_name", "Nonexistent Film 123" } }, store);
    CHECK_FALSE(missing.is_ok());
    CHECK(missing.message().find("Nonexistent Film 123") != std::string::npos);

    auto noArg = execute(corpus.registry.at("get_movie_details_for_movie_tools"), Json::object(), store);
    CHECK_FALSE(noArg.is_ok());

    auto zero = execute(corpus.registry.at("calculate_population_density_for_geo_tools"),
                        { { "population", 10 }, { "area_km2", 0 } }, store);
    CHECK_FALSE(zero.is_ok());
    CHECK(zero.message() == "division by zero");
}

TEST_CASE("terminal tool echoes the answer and signals termination")
{
    auto const& corpus = load_corpus();
    auto store = corpus.store;
    auto result = execute(corpus.registry.terminal(), { { "final_answer", "x" } }, store);
    REQUIRE(result.is_ok());
    CHECK(result.terminal);
    CHECK(result.payload == Json { { "final_answer", "x" } });
}

TEST_CASE("arithmetic rounds to cents")
{
    auto const& corpus = load_corpus();
    auto store = corpus.store;
    auto f = execute(corpus.registry.at("convert_celsius_to_fahrenheit"), { { "celsius", 21 } }, store);
    CHECK(f.payload["fahrenheit"].get<double>() == doctest::Approx(69.8));
    auto d = execute(corpus.registry.at("calculate_price_per_sqft_for_realty_tools"), { { "price", 100000 }, { "sqft", 3 } },
                     store);
    CHECK(d.payload["price_per_sqft"].get<double>() == 33333.33);
}

TEST_CASE("execute is a pure function of its store snapshot")
{
    auto const& corpus = load_corpus();
    auto a = corpus.store;
    auto b = corpus.store;
    auto const& tool = corpus.registry.at("get_average_price_for_realty_tools");
    CHECK(execute(tool, { { "city", "Austin" } }, a).payload == execute(tool, { { "city", "Austin" } }, b).payload);
}

TEST_CASE("updates and inserts touch only the given store")
{
    auto const& corpus = load_corpus();
    auto const before = corpus.store.to_json();
    auto store = corpus.store;
    auto routed = execute(corpus.registry.at("route_case_for_crm_tools"), { { "case_id", 3 }, { "agent_id", 7 } }, store);
    REQUIRE(routed.is_ok());
    CHECK(routed.payload == Json { { "id", 3 }, { "agent_id", 7 }, { "status", "Escalated" } });
    CHECK(store.table("cases")[2]["agent_id"] == 7);

    auto created = execute(corpus.registry.at("create_case_for_crm_tools"), { { "account_id", 1 }, { "issue", "Login" } }, store);
    REQUIRE(created.is_ok());
    CHECK(created.payload["id"] == store.table("cases").size());
    CHECK(created.payload["status"] == "Open");
    CHECK(corpus.store.to_json() == before);
    CHECK(store.to_json() != before);
}

TEST_CASE("grouped aggregates break ties by group name")
{
    auto tables = Json { { "t",
                           Json::array({ { { "k", "b" }, { "g", "z" } },
                                         { { "k", "b" }, { "g", "a" } },
                                         { { "k", "b" }, { "g", "m" } },
                                         { { "k", "b" }, { "g", "m" } },
                                         { { "k", "b" }, { "g", "a" } } }) } };
    auto store = FixtureStore(tables, 0);
    auto handler = make_handler({ { "kind", "aggregate" },
                                  { "table", "t" },
                                  { "match", { { "key", "k" } } },
                                  { "op", "count" },
                                  { "group_by", "g" },
                                  { "select", "max" },
                                  { "result_key", "n" } });
    auto result = handler({ { "key", "b" } }, store);
    REQUIRE(result.is_ok());
    // a and m both have 2; a sorts first
    CHECK(result.payload["g"] == "a");
    CHECK(result.payload["n"] == 2);
}

TEST_CASE("unknown binding kinds are rejected")
{
    CHECK(error_code_of([] { (void)make_handler({ { "kind", "teleport" } }); }) == ErrorCode::MalformedDocument);
}

TEST_CASE("fixture generation is seeded")
{
    auto a = FixtureStore::generate(5);
    auto b = FixtureStore::generate(5);
    auto c = FixtureStore::generate(6);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_json() != c.to_json());
    CHECK(a.seed() == 5);
    CHECK(a.tables().size() == 11);
    CHECK(error_code_of([&] { (void)a.table("nope"); }) == ErrorCode::ToolExecutionFailure);

    auto dir = trajforge::testing::TempDir("fixtures");
    a.save(dir.file("f.json"));
    auto loaded = FixtureStore::load(dir.file("f.json"));
    CHECK(loaded.to_json() == a.to_json());
    CHECK(FixtureStore::from_json(a.to_json()).seed() == 5);
}

TEST_CASE("parameters_schema is a JSON-schema object")
{
    auto schema = load_corpus().registry.at("search_properties_for_realty_tools").parameters_schema();
    CHECK(schema["type"] == "object");
    CHECK(schema["properties"]["bedrooms"]["type"] == "integer");
    CHECK(schema["properties"]["city"]["type"] == "string");
    CHECK(schema["required"] == Json::array({ "city", "bedrooms" }));
}

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <trajforge/json_util.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trajforge::tools
{

enum class ValueType
{
    Text,
    Integer,
    Decimal,
    Boolean,
    List,
    Object,
};

auto to_string(ValueType type) -> std::string_view;
auto parse_value_type(std::string_view name) -> std::optional<ValueType>;

/// No coercion: "155" is not an integer. Integers are accepted as decimals.
bool conforms(Json const& value, ValueType type);

struct ParamSpec
{
    std::string name;
    ValueType type = ValueType::Text;
    bool required = true;
    std::string description;

    bool operator==(ParamSpec const&) const = default;
};

/// Seeded, episode-copyable tables of records standing in for remote backends.
class FixtureStore
{
  public:
    FixtureStore() = default;
    FixtureStore(Json tables, std::uint64_t seed);

    /// Builds every bundled table (movies, weather, geo, books, housing,
    /// finance, chemistry, music, CRM) from `seed`.
    static auto generate(std::uint64_t seed) -> FixtureStore;
    static auto from_json(Json const& document) -> FixtureStore;
    static auto load(std::string const& path) -> FixtureStore;

    [[nodiscard]] auto to_json() const -> Json;
    void save(std::string const& path) const;

    [[nodiscard]] auto seed() const noexcept -> std::uint64_t { return _seed; }
    [[nodiscard]] bool has_table(std::string const& name) const;
    [[nodiscard]] auto table(std::string const& name) const -> Json const&;
    auto table(std::string const& name) -> Json&;
    [[nodiscard]] auto tables() const noexcept -> Json const& { return _tables; }

  private:
    Json _tables = Json::object();
    std::uint64_t _seed = 0;
};

struct ToolResult
{
    enum class Status
    {
        Ok,
        Error,
    };

    Status status = Status::Ok;
    Json payload;
    bool terminal = false;

    static auto ok(Json payload) -> ToolResult;
    static auto error(std::string message) -> ToolResult;
    static auto finish(std::string finalAnswer) -> ToolResult;

    [[nodiscard]] bool is_ok() const noexcept { return status == Status::Ok; }
    [[nodiscard]] auto message() const -> std::string;
};

using ToolHandler = std::function<ToolResult(Json const& args, FixtureStore& store)>;

struct ToolSpec
{
    std::string name;
    std::string description;
    std::vector<ParamSpec> params;
    Json binding = Json::object();
    bool is_terminal = false;
    ToolHandler handler;

    [[nodiscard]] auto param(std::string_view name) const -> ParamSpec const*;

    /// Catalog document form (handler omitted; `binding` reproduces it).
    [[nodiscard]] auto to_json() const -> Json;
    static auto from_json(Json const& document) -> ToolSpec;

    /// JSON-schema object for chat-completions `parameters`.
    [[nodiscard]] auto parameters_schema() const -> Json;
};

struct ArgumentFault
{
    enum class Kind
    {
        MissingRequired,
        UnknownParam,
        TypeMismatch,
    };

    Kind kind;
    std::string param;

    [[nodiscard]] auto describe() const -> std::string;
    bool operator==(ArgumentFault const&) const = default;
};

/// Every fault in `args`; empty means the call is well formed. With
/// `strict` off unknown parameters are tolerated.
auto validate_args(ToolSpec const& spec, Json const& args, bool strict = true) -> std::vector<ArgumentFault>;

/// Runs the tool's handler against the episode-local store. Handler
/// failures come back as status=error, never as exceptions.
auto execute(ToolSpec const& spec, Json const& args, FixtureStore& store) -> ToolResult;

/// Builds a handler from a catalog binding such as
/// {"kind": "lookup", "table": "movies", "match": {"id": "id"}}.
auto make_handler(Json const& binding) -> ToolHandler;

class ToolRegistry
{
  public:
    ToolRegistry() = default;

    /// Throws DuplicateToolName, or InvalidArgument for a second terminal
    /// tool or a terminal without a sole required `final_answer` parameter.
    void register_tool(ToolSpec spec);

    [[nodiscard]] auto find(std::string_view name) const -> ToolSpec const*;
    [[nodiscard]] auto at(std::string_view name) const -> ToolSpec const&;
    [[nodiscard]] bool contains(std::string_view name) const { return find(name) != nullptr; }
    [[nodiscard]] auto size() const noexcept -> std::size_t { return _tools.size(); }
    [[nodiscard]] auto names() const -> std::vector<std::string>;
    [[nodiscard]] auto terminal() const -> ToolSpec const&;
    [[nodiscard]] bool has_terminal() const noexcept { return _terminal.has_value(); }

    [[nodiscard]] auto to_catalog() const -> Json;
    static auto from_catalog(Json const& catalog) -> ToolRegistry;
    static auto load_catalog(std::string const& path) -> ToolRegistry;

  private:
    std::map<std::string, ToolSpec, std::less<>> _tools;
    std::vector<std::string> _order;
    std::optional<std::string> _terminal;
};

} // namespace trajforge::tools

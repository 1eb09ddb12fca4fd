// SPDX-License-Identifier: Apache-2.0
#include <trajforge/error.hpp>
#include <trajforge/tool_registry.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace trajforge::tools
{

auto to_string(ValueType type) -> std::string_view
{
    switch (type)
    {
        case ValueType::Text: return "text";
        case ValueType::Integer: return "integer";
        case ValueType::Decimal: return "decimal";
        case ValueType::Boolean: return "boolean";
        case ValueType::List: return "list";
        case ValueType::Object: return "object";
    }
    return "text";
}

auto parse_value_type(std::string_view name) -> std::optional<ValueType>
{
    auto const lower = to_lower(name);
    if (lower == "text" || lower == "str" || lower == "string")
        return ValueType::Text;
    if (lower == "integer" || lower == "int")
        return ValueType::Integer;
    if (lower == "decimal" || lower == "float" || lower == "number")
        return ValueType::Decimal;
    if (lower == "boolean" || lower == "bool")
        return ValueType::Boolean;
    if (lower == "list" || lower == "array")
        return ValueType::List;
    if (lower == "object" || lower == "dict")
        return ValueType::Object;
    return std::nullopt;
}

bool conforms(Json const& value, ValueType type)
{
    switch (type)
    {
        case ValueType::Text: return value.is_string();
        case ValueType::Integer: return value.is_number_integer();
        case ValueType::Decimal: return value.is_number();
        case ValueType::Boolean: return value.is_boolean();
        case ValueType::List: return value.is_array();
        case ValueType::Object: return value.is_object();
    }
    return false;
}

// --- ToolResult -------------------------------------------------------------

auto ToolResult::ok(Json payload) -> ToolResult
{
    return ToolResult { .status = Status::Ok, .payload = std::move(payload), .terminal = false };
}

auto ToolResult::error(std::string message) -> ToolResult
{
    if (message.empty())
        message = "tool execution failed";
    return ToolResult { .status = Status::Error, .payload = std::move(message), .terminal = false };
}

auto ToolResult::finish(std::string finalAnswer) -> ToolResult
{
    return ToolResult { .status = Status::Ok,
                        .payload = Json { { "final_answer", std::move(finalAnswer) } },
                        .terminal = true };
}

auto ToolResult::message() const -> std::string
{
    return payload.is_string() ? payload.get<std::string>() : payload.dump();
}

// --- ToolSpec ---------------------------------------------------------------

auto ToolSpec::param(std::string_view wanted) const -> ParamSpec const*
{
    auto it = std::ranges::find(params, wanted, &ParamSpec::name);
    return it == params.end() ? nullptr : &*it;
}

auto ToolSpec::to_json() const -> Json
{
    auto paramDocs = Json::array();
    for (auto const& p: params)
    {
        paramDocs.push_back({ { "name", p.name },
                              { "type", to_string(p.type) },
                              { "required", p.required },
                              { "description", p.description } });
    }
    return Json {
        { "name", name },
        { "description", description },
        { "params", std::move(paramDocs) },
        { "binding", binding },
    };
}

auto ToolSpec::from_json(Json const& document) -> ToolSpec
{
    if (!document.is_object() || !document.contains("name") || !document["name"].is_string())
        throw Error(ErrorCode::MalformedDocument, "tool spec needs a string 'name'");

    auto spec = ToolSpec {};
    spec.name = document["name"].get<std::string>();
    spec.description = document.value("description", "");
    spec.binding = document.value("binding", Json::object());

    auto seen = std::set<std::string> {};
    for (auto const& p: document.value("params", Json::array()))
    {
        auto param = ParamSpec {};
        param.name = p.at("name").get<std::string>();
        auto type = parse_value_type(p.value("type", "text"));
        if (!type)
            throw Error(ErrorCode::MalformedDocument,
                        fmt::format("tool '{}': unknown parameter type '{}'", spec.name, p.value("type", "")));
        param.type = *type;
        param.required = p.value("required", true);
        param.description = p.value("description", "");
        if (!seen.insert(param.name).second)
            throw Error(ErrorCode::MalformedDocument,
                        fmt::format("tool '{}': duplicate parameter '{}'", spec.name, param.name));
        spec.params.push_back(std::move(param));
    }

    spec.is_terminal = spec.binding.value("kind", "") == "terminal" || document.value("is_terminal", false);
    spec.handler = make_handler(spec.binding);
    return spec;
}

auto ToolSpec::parameters_schema() const -> Json
{
    auto properties = Json::object();
    auto required = Json::array();
    for (auto const& p: params)
    {
        auto jsonType = [&]() -> std::string_view {
            switch (p.type)
            {
                case ValueType::Text: return "string";
                case ValueType::Integer: return "integer";
                case ValueType::Decimal: return "number";
                case ValueType::Boolean: return "boolean";
                case ValueType::List: return "array";
                case ValueType::Object: return "object";
            }
            return "string";
        }();
        properties[p.name] = { { "type", jsonType }, { "description", p.description } };
        if (p.required)
            required.push_back(p.name);
    }
    return Json { { "type", "object" }, { "properties", properties }, { "required", required } };
}

// --- validation & execution -------------------------------------------------

auto ArgumentFault::describe() const -> std::string
{
    switch (kind)
    {
        case Kind::MissingRequired: return fmt::format("missing required parameter \"{}\"", param);
        case Kind::UnknownParam: return fmt::format("unknown parameter \"{}\"", param);
        case Kind::TypeMismatch: return fmt::format("parameter \"{}\" has the wrong type", param);
    }
    return param;
}

auto validate_args(ToolSpec const& spec, Json const& args, bool strict) -> std::vector<ArgumentFault>
{
    auto faults = std::vector<ArgumentFault> {};
    if (!args.is_object())
    {
        for (auto const& p: spec.params)
            if (p.required)
                faults.push_back({ ArgumentFault::Kind::MissingRequired, p.name });
        return faults;
    }

    for (auto const& p: spec.params)
    {
        auto it = args.find(p.name);
        if (it == args.end())
        {
            if (p.required)
                faults.push_back({ ArgumentFault::Kind::MissingRequired, p.name });
            continue;
        }
        if (!conforms(*it, p.type))
            faults.push_back({ ArgumentFault::Kind::TypeMismatch, p.name });
    }

    if (strict)
    {
        for (auto const& [key, _]: args.items())
            if (spec.param(key) == nullptr)
                faults.push_back({ ArgumentFault::Kind::UnknownParam, key });
    }
    return faults;
}

auto execute(ToolSpec const& spec, Json const& args, FixtureStore& store) -> ToolResult
{
    if (!spec.handler)
        return ToolResult::error(fmt::format("tool \"{}\" has no executable behavior", spec.name));
    try
    {
        return spec.handler(args.is_object() ? args : Json::object(), store);
    }
    catch (std::exception const& e)
    {
        return ToolResult::error(fmt::format("tool \"{}\" raised: {}", spec.name, e.what()));
    }
}

// --- ToolRegistry -----------------------------------------------------------

void ToolRegistry::register_tool(ToolSpec spec)
{
    if (_tools.contains(spec.name))
        throw Error(ErrorCode::DuplicateToolName, fmt::format("tool \"{}\" is already registered", spec.name),
                    { { ErrorCode::DuplicateToolName, spec.name } });
    if (spec.is_terminal)
    {
        if (_terminal)
            throw Error(ErrorCode::InvalidArgument,
                        fmt::format("registry already has terminal tool \"{}\"; cannot add \"{}\"", *_terminal,
                                    spec.name));
        auto const* answer = spec.param("final_answer");
        if (spec.params.size() != 1 || answer == nullptr || !answer->required)
            throw Error(ErrorCode::InvalidArgument,
                        fmt::format("terminal tool \"{}\" must take exactly one required 'final_answer'", spec.name));
        _terminal = spec.name;
    }
    if (!spec.handler)
        spec.handler = make_handler(spec.binding);
    _order.push_back(spec.name);
    auto name = spec.name;
    _tools.emplace(std::move(name), std::move(spec));
}

auto ToolRegistry::find(std::string_view name) const -> ToolSpec const*
{
    auto it = _tools.find(name);
    return it == _tools.end() ? nullptr : &it->second;
}

auto ToolRegistry::at(std::string_view name) const -> ToolSpec const&
{
    if (auto const* spec = find(name))
        return *spec;
    throw Error(ErrorCode::UnknownTool, fmt::format("tool \"{}\" is not registered", name),
                { { ErrorCode::UnknownTool, std::string(name) } });
}

auto ToolRegistry::names() const -> std::vector<std::string>
{
    return _order;
}

auto ToolRegistry::terminal() const -> ToolSpec const&
{
    if (!_terminal)
        throw Error(ErrorCode::UnknownTool, "registry has no terminal tool");
    return at(*_terminal);
}

auto ToolRegistry::to_catalog() const -> Json
{
    auto tools = Json::array();
    for (auto const& name: _order)
        tools.push_back(at(name).to_json());
    return Json { { "tools", std::move(tools) } };
}

auto ToolRegistry::from_catalog(Json const& catalog) -> ToolRegistry
{
    auto const& list = catalog.is_object() ? catalog.value("tools", Json::array()) : catalog;
    if (!list.is_array())
        throw Error(ErrorCode::MalformedDocument, "tool catalog must be an array or {\"tools\": [...]}");
    auto registry = ToolRegistry {};
    for (auto const& doc: list)
        registry.register_tool(ToolSpec::from_json(doc));
    return registry;
}

auto ToolRegistry::load_catalog(std::string const& path) -> ToolRegistry
{
    return from_catalog(parse_document(read_text_file(path), path));
}

} // namespace trajforge::tools

// SPDX-License-Identifier: Apache-2.0
//
// Data-driven tool behaviors. Each catalog entry names a `kind` and the table,
// parameter-to-field mapping and output shape; the handler runs against the
// caller's episode-local FixtureStore.

#include <trajforge/error.hpp>
#include <trajforge/tool_registry.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>

namespace trajforge::tools
{

namespace
{
    enum class MatchOp
    {
        Equal,
        Contains,
    };

    struct Criterion
    {
        std::string param;
        std::string field;
        MatchOp op = MatchOp::Equal;
    };

    auto round2(double value) -> double
    {
        return std::round(value * 100.0) / 100.0;
    }

    auto parse_criteria(Json const& binding) -> std::vector<Criterion>
    {
        auto criteria = std::vector<Criterion> {};
        auto const match = binding.value("match", Json::object());
        for (auto const& [param, target]: match.items())
        {
            auto c = Criterion { .param = param, .field = param };
            if (target.is_string())
                c.field = target.get<std::string>();
            else if (target.is_object())
            {
                c.field = target.value("field", param);
                auto op = target.value("op", "eq");
                if (op == "contains")
                    c.op = MatchOp::Contains;
                else if (op != "eq")
                    throw Error(ErrorCode::MalformedDocument, fmt::format("unknown match op '{}'", op));
            }
            criteria.push_back(std::move(c));
        }
        return criteria;
    }

    bool values_equal(Json const& field, Json const& arg)
    {
        if (field.is_string() && arg.is_string())
            return to_lower(field.get<std::string>()) == to_lower(arg.get<std::string>());
        if (field.is_number() && arg.is_number())
        {
            if (field.is_number_integer() && arg.is_number_integer())
                return field.get<std::int64_t>() == arg.get<std::int64_t>();
            return field.get<double>() == arg.get<double>();
        }
        return field == arg;
    }

    bool matches(Json const& record, Criterion const& c, Json const& arg)
    {
        auto it = record.find(c.field);
        if (it == record.end())
            return false;
        if (c.op == MatchOp::Equal)
            return values_equal(*it, arg);
        if (it->is_array())
            return std::ranges::any_of(*it, [&](Json const& element) { return values_equal(element, arg); });
        if (it->is_string() && arg.is_string())
            return to_lower(it->get<std::string>()).find(to_lower(arg.get<std::string>())) != std::string::npos;
        return values_equal(*it, arg);
    }

    /// Returns the missing parameter name, if any.
    auto missing_argument(std::vector<Criterion> const& criteria, Json const& args) -> std::optional<std::string>
    {
        for (auto const& c: criteria)
            if (!args.contains(c.param) || args[c.param].is_null())
                return c.param;
        return std::nullopt;
    }

    bool matches_all(Json const& record, std::vector<Criterion> const& criteria, Json const& args)
    {
        return std::ranges::all_of(criteria, [&](Criterion const& c) { return matches(record, c, args[c.param]); });
    }

    auto describe_criteria(std::vector<Criterion> const& criteria, Json const& args) -> std::string
    {
        auto parts = std::vector<std::string> {};
        for (auto const& c: criteria)
            parts.push_back(fmt::format("{}=\"{}\"", c.field, display_text(args[c.param])));
        return fmt::format("{}", fmt::join(parts, ", "));
    }

    auto project(Json const& record, Json const& fields) -> Json
    {
        if (!fields.is_array() || fields.empty())
            return record;
        auto out = Json::object();
        for (auto const& f: fields)
        {
            auto key = f.get<std::string>();
            if (auto it = record.find(key); it != record.end())
                out[key] = *it;
        }
        return out;
    }

    auto table_or_error(FixtureStore& store, std::string const& name) -> Json*
    {
        if (!store.has_table(name))
            return nullptr;
        return &store.table(name);
    }

    auto missing_arg_error(std::string const& param) -> ToolResult
    {
        return ToolResult::error(fmt::format("missing argument \"{}\"", param));
    }

    auto lookup_handler(Json const& binding) -> ToolHandler
    {
        auto table = binding.at("table").get<std::string>();
        auto criteria = parse_criteria(binding);
        auto fields = binding.value("fields", Json::array());
        auto wrap = binding.value("wrap", "");
        return [=](Json const& args, FixtureStore& store) -> ToolResult {
            if (auto missing = missing_argument(criteria, args))
                return missing_arg_error(*missing);
            auto const* rows = table_or_error(store, table);
            if (rows == nullptr)
                return ToolResult::error(fmt::format("table \"{}\" is unavailable", table));
            for (auto const& record: *rows)
            {
                if (!matches_all(record, criteria, args))
                    continue;
                auto out = project(record, fields);
                return ToolResult::ok(wrap.empty() ? out : Json { { wrap, out } });
            }
            return ToolResult::error(
                fmt::format("no record in \"{}\" with {}", table, describe_criteria(criteria, args)));
        };
    }

    auto search_handler(Json const& binding) -> ToolHandler
    {
        auto table = binding.at("table").get<std::string>();
        auto criteria = parse_criteria(binding);
        auto fields = binding.value("fields", Json::array());
        auto resultsKey = binding.value("results_key", "results");
        auto limit = binding.value("limit", std::size_t { 10 });
        return [=](Json const& args, FixtureStore& store) -> ToolResult {
            if (auto missing = missing_argument(criteria, args))
                return missing_arg_error(*missing);
            auto const* rows = table_or_error(store, table);
            if (rows == nullptr)
                return ToolResult::error(fmt::format("table \"{}\" is unavailable", table));

            // Exact matches rank ahead of partial ones; table order otherwise.
            auto exact = Json::array();
            auto partial = Json::array();
            for (auto const& record: *rows)
            {
                if (!matches_all(record, criteria, args))
                    continue;
                auto isExact = std::ranges::all_of(criteria, [&](Criterion const& c) {
                    return values_equal(record[c.field], args[c.param]);
                });
                (isExact ? exact : partial).push_back(project(record, fields));
            }
            auto results = Json::array();
            for (auto const* group: { &exact, &partial })
                for (auto const& r: *group)
                    if (results.size() < limit)
                        results.push_back(r);
            if (results.empty())
                return ToolResult::error(
                    fmt::format("no results in \"{}\" for {}", table, describe_criteria(criteria, args)));
            return ToolResult::ok(Json { { resultsKey, results }, { "count", results.size() } });
        };
    }

    auto aggregate_values(std::string const& op, std::vector<Json const*> const& values) -> Json
    {
        if (op == "count")
            return values.size();
        auto allIntegers = std::ranges::all_of(values, [](Json const* v) { return v->is_number_integer(); });
        if (op == "sum")
        {
            if (allIntegers)
            {
                std::int64_t total = 0;
                for (auto const* v: values)
                    total += v->get<std::int64_t>();
                return total;
            }
            auto total = 0.0;
            for (auto const* v: values)
                total += v->get<double>();
            return round2(total);
        }
        if (op == "mean")
        {
            auto total = 0.0;
            for (auto const* v: values)
                total += v->get<double>();
            return round2(total / static_cast<double>(values.size()));
        }
        if (op == "min" || op == "max")
        {
            auto best = values.front();
            for (auto const* v: values)
            {
                auto better = op == "min" ? v->get<double>() < best->get<double>()
                                          : v->get<double>() > best->get<double>();
                if (better)
                    best = v;
            }
            return *best;
        }
        throw Error(ErrorCode::MalformedDocument, fmt::format("unknown aggregate op '{}'", op));
    }

    auto aggregate_handler(Json const& binding) -> ToolHandler
    {
        auto table = binding.at("table").get<std::string>();
        auto criteria = parse_criteria(binding);
        auto op = binding.value("op", "count");
        auto field = binding.value("field", "");
        auto groupBy = binding.value("group_by", "");
        auto select = binding.value("select", "");
        auto groupKey = binding.value("group_key", groupBy);
        auto resultKey = binding.value("result_key", "value");
        if (op != "count" && field.empty())
            throw Error(ErrorCode::MalformedDocument, fmt::format("aggregate op '{}' needs a 'field'", op));

        return [=](Json const& args, FixtureStore& store) -> ToolResult {
            if (auto missing = missing_argument(criteria, args))
                return missing_arg_error(*missing);
            auto const* rows = table_or_error(store, table);
            if (rows == nullptr)
                return ToolResult::error(fmt::format("table \"{}\" is unavailable", table));

            auto out = Json::object();
            for (auto const& c: criteria)
                out[c.param] = args[c.param];

            auto groups = std::map<std::string, std::vector<Json const*>> {};
            auto selected = std::vector<Json const*> {};
            for (auto const& record: *rows)
            {
                if (!matches_all(record, criteria, args))
                    continue;
                Json const* value = &record;
                if (op != "count")
                {
                    auto it = record.find(field);
                    if (it == record.end() || !it->is_number())
                        continue;
                    value = &*it;
                }
                if (groupBy.empty())
                    selected.push_back(value);
                else if (auto g = record.find(groupBy); g != record.end())
                    groups[display_text(*g)].push_back(value);
            }

            if (groupBy.empty())
            {
                if (selected.empty() && op != "count")
                    return ToolResult::error(
                        fmt::format("no records in \"{}\" with {}", table, describe_criteria(criteria, args)));
                out[resultKey] = aggregate_values(op, selected);
                return ToolResult::ok(std::move(out));
            }

            if (groups.empty())
                return ToolResult::error(
                    fmt::format("no records in \"{}\" with {}", table, describe_criteria(criteria, args)));
            auto summary = Json::object();
            for (auto const& [name, values]: groups)
                summary[name] = aggregate_values(op, values);
            if (select.empty())
            {
                out["groups"] = std::move(summary);
                return ToolResult::ok(std::move(out));
            }
            // Ties resolve to the first group in key order.
            auto best = summary.begin();
            for (auto it = summary.begin(); it != summary.end(); ++it)
            {
                auto better = select == "min" ? it->get<double>() < best->get<double>()
                                              : it->get<double>() > best->get<double>();
                if (better)
                    best = it;
            }
            out[groupKey] = best.key();
            out[resultKey] = *best;
            return ToolResult::ok(std::move(out));
        };
    }

    auto update_handler(Json const& binding) -> ToolHandler
    {
        auto table = binding.at("table").get<std::string>();
        auto criteria = parse_criteria(binding);
        auto assignments = binding.value("set", Json::object());
        auto constants = binding.value("constants", Json::object());
        auto fields = binding.value("fields", Json::array());
        return [=](Json const& args, FixtureStore& store) -> ToolResult {
            if (auto missing = missing_argument(criteria, args))
                return missing_arg_error(*missing);
            for (auto const& [param, _]: assignments.items())
                if (!args.contains(param))
                    return missing_arg_error(param);
            auto* rows = table_or_error(store, table);
            if (rows == nullptr)
                return ToolResult::error(fmt::format("table \"{}\" is unavailable", table));
            for (auto& record: *rows)
            {
                if (!matches_all(record, criteria, args))
                    continue;
                for (auto const& [param, target]: assignments.items())
                    record[target.get<std::string>()] = args[param];
                for (auto const& [key, value]: constants.items())
                    record[key] = value;
                return ToolResult::ok(project(record, fields));
            }
            return ToolResult::error(
                fmt::format("no record in \"{}\" with {}", table, describe_criteria(criteria, args)));
        };
    }

    auto insert_handler(Json const& binding) -> ToolHandler
    {
        auto table = binding.at("table").get<std::string>();
        auto assignments = binding.value("fields", Json::object());
        auto constants = binding.value("constants", Json::object());
        auto idField = binding.value("id_field", "id");
        return [=](Json const& args, FixtureStore& store) -> ToolResult {
            for (auto const& [param, _]: assignments.items())
                if (!args.contains(param))
                    return missing_arg_error(param);
            auto* rows = table_or_error(store, table);
            if (rows == nullptr)
                return ToolResult::error(fmt::format("table \"{}\" is unavailable", table));
            std::int64_t next = 1;
            for (auto const& record: *rows)
                if (auto it = record.find(idField); it != record.end() && it->is_number_integer())
                    next = std::max(next, it->get<std::int64_t>() + 1);
            auto record = Json { { idField, next } };
            for (auto const& [param, target]: assignments.items())
                record[target.get<std::string>()] = args[param];
            for (auto const& [key, value]: constants.items())
                record[key] = value;
            rows->push_back(record);
            return ToolResult::ok(std::move(record));
        };
    }

    auto arithmetic_handler(Json const& binding) -> ToolHandler
    {
        auto op = binding.at("op").get<std::string>();
        auto operands = binding.value("operands", Json::array());
        auto resultKey = binding.value("result_key", "result");
        auto scale = binding.value("scale", 1.0);
        auto offset = binding.value("offset", 0.0);
        return [=](Json const& args, FixtureStore&) -> ToolResult {
            auto values = std::vector<double> {};
            for (auto const& name: operands)
            {
                auto key = name.get<std::string>();
                if (!args.contains(key))
                    return missing_arg_error(key);
                if (!args[key].is_number())
                    return ToolResult::error(fmt::format("argument \"{}\" must be numeric", key));
                values.push_back(args[key].get<double>());
            }
            if (values.empty())
                return ToolResult::error("no operands");
            auto result = values.front();
            if (op == "linear")
                result = result * scale + offset;
            else
            {
                for (std::size_t i = 1; i < values.size(); ++i)
                {
                    if (op == "add")
                        result += values[i];
                    else if (op == "subtract")
                        result -= values[i];
                    else if (op == "multiply")
                        result *= values[i];
                    else if (op == "divide")
                    {
                        if (values[i] == 0.0)
                            return ToolResult::error("division by zero");
                        result /= values[i];
                    }
                    else
                        return ToolResult::error(fmt::format("unsupported operation '{}'", op));
                }
            }
            return ToolResult::ok(Json { { resultKey, round2(result) } });
        };
    }

    auto terminal_handler() -> ToolHandler
    {
        return [](Json const& args, FixtureStore&) -> ToolResult {
            auto it = args.find("final_answer");
            if (it == args.end())
                return missing_arg_error("final_answer");
            if (!it->is_string())
                return ToolResult::error("\"final_answer\" must be text");
            return ToolResult::finish(it->get<std::string>());
        };
    }
} // namespace

auto make_handler(Json const& binding) -> ToolHandler
{
    auto kind = binding.value("kind", "");
    if (kind == "lookup")
        return lookup_handler(binding);
    if (kind == "search")
        return search_handler(binding);
    if (kind == "aggregate")
        return aggregate_handler(binding);
    if (kind == "update")
        return update_handler(binding);
    if (kind == "insert")
        return insert_handler(binding);
    if (kind == "arithmetic")
        return arithmetic_handler(binding);
    if (kind == "terminal")
        return terminal_handler();
    if (kind == "constant")
    {
        auto value = binding.value("value", Json::object());
        return [value](Json const&, FixtureStore&) { return ToolResult::ok(value); };
    }
    if (kind.empty())
        return {};
    throw Error(ErrorCode::MalformedDocument, fmt::format("unknown tool binding kind '{}'", kind));
}

} // namespace trajforge::tools

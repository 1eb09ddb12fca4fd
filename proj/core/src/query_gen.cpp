// SPDX-License-Identifier: Apache-2.0
#include <trajforge/query_gen.hpp>
#include <trajforge/seed.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <limits>

namespace trajforge::querygen
{

using tools::FixtureStore;
using tools::ToolRegistry;

auto to_string(PlaceholderType type) -> std::string_view
{
    switch (type)
    {
        case PlaceholderType::Text: return "text";
        case PlaceholderType::Integer: return "integer";
        case PlaceholderType::Decimal: return "decimal";
        case PlaceholderType::Enum: return "enum";
    }
    return "text";
}

namespace
{
    auto parse_placeholder_type(std::string_view name) -> std::optional<PlaceholderType>
    {
        auto lower = to_lower(name);
        if (lower == "text" || lower == "str" || lower == "string")
            return PlaceholderType::Text;
        if (lower == "integer" || lower == "int")
            return PlaceholderType::Integer;
        if (lower == "decimal" || lower == "float" || lower == "number")
            return PlaceholderType::Decimal;
        if (lower == "enum")
            return PlaceholderType::Enum;
        return std::nullopt;
    }

    bool is_identifier_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    bool is_identifier_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    /// Calls `visit(begin, end, name)` for each `{identifier}` marker.
    template <typename Visitor>
    void for_each_marker(std::string_view text, Visitor&& visit)
    {
        for (std::size_t pos = 0; pos < text.size(); ++pos)
        {
            if (text[pos] != '{' || pos + 1 >= text.size() || !is_identifier_start(text[pos + 1]))
                continue;
            auto end = pos + 1;
            while (end < text.size() && is_identifier_char(text[end]))
                ++end;
            if (end < text.size() && text[end] == '}')
            {
                visit(pos, end + 1, text.substr(pos + 1, end - pos - 1));
                pos = end;
            }
        }
    }

    auto parse_arguments(Json const& doc) -> std::map<std::string, ArgumentSource>
    {
        auto out = std::map<std::string, ArgumentSource> {};
        if (doc.is_null())
            return out;
        if (!doc.is_object())
            throw Error(ErrorCode::MalformedDocument, "solution step 'arguments' must be an object");
        for (auto const& [param, value]: doc.items())
        {
            if (value.is_null())
                out.emplace(param, ResolveRef { param });
            else if (value.is_object() && value.size() == 1 && value.contains("$resolve"))
                out.emplace(param, ResolveRef { value["$resolve"].get<std::string>() });
            else
                out.emplace(param, value);
        }
        return out;
    }

    auto serialize_arguments(std::map<std::string, ArgumentSource> const& args) -> Json
    {
        auto out = Json::object();
        for (auto const& [param, source]: args)
        {
            if (auto const* ref = std::get_if<ResolveRef>(&source))
                out[param] = ref->key == param ? Json(nullptr) : Json { { "$resolve", ref->key } };
            else
                out[param] = std::get<Json>(source);
        }
        return out;
    }

    auto parse_step(Json const& doc) -> SolutionStep
    {
        if (!doc.is_object())
            throw Error(ErrorCode::MalformedDocument, "solution step must be an object");
        auto name = doc.contains("tool_call") ? doc["tool_call"] : doc.value("tool_name", Json());
        if (!name.is_string() || name.get<std::string>().empty())
            throw Error(ErrorCode::MalformedDocument, "solution step needs a 'tool_call' name");
        return SolutionStep { .tool_name = name.get<std::string>(),
                              .arguments = parse_arguments(doc.value("arguments", Json::object())) };
    }

    auto serialize_step(SolutionStep const& step) -> Json
    {
        return Json { { "tool_call", step.tool_name }, { "arguments", serialize_arguments(step.arguments) } };
    }

    auto string_list(Json const& doc, std::string_view what) -> std::vector<std::string>
    {
        if (!doc.is_array())
            throw Error(ErrorCode::MalformedDocument, fmt::format("'{}' must be a list of names", what));
        auto out = std::vector<std::string> {};
        for (auto const& item: doc)
        {
            if (!item.is_string())
                throw Error(ErrorCode::MalformedDocument, fmt::format("'{}' must be a list of names", what));
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    auto value_key(PlaceholderValues const& values) -> std::string
    {
        auto doc = Json::object();
        for (auto const& [k, v]: values)
            doc[k] = v;
        return doc.dump();
    }
} // namespace

bool conforms(Json const& value, PlaceholderSpec const& spec)
{
    switch (spec.type)
    {
        case PlaceholderType::Text: return value.is_string();
        case PlaceholderType::Integer: return value.is_number_integer();
        case PlaceholderType::Decimal: return value.is_number();
        case PlaceholderType::Enum:
            return value.is_string()
                   && (spec.candidate_pool.empty() || std::ranges::find(spec.candidate_pool, value) != spec.candidate_pool.end());
    }
    return false;
}

auto QueryTemplate::alternative_for(std::string_view tool) const -> Alternative const*
{
    auto it = std::ranges::find(toolset.alternatives, tool, &Alternative::replaces);
    return it == toolset.alternatives.end() ? nullptr : &*it;
}

// --- instance records -------------------------------------------------------

auto QueryInstance::to_json() const -> Json
{
    auto values = Json::object();
    for (auto const& [k, v]: placeholder_values)
        values[k] = v;
    return Json {
        { "instance_id", instance_id },
        { "template_id", template_id },
        { "placeholder_values", std::move(values) },
        { "query_text", query_text },
        { "available_tools", available_tools },
        { "ground_truth", ground_truth },
        { "seed", seed },
    };
}

auto QueryInstance::from_json(Json const& record) -> QueryInstance
{
    try
    {
        auto instance = QueryInstance {};
        instance.instance_id = record.at("instance_id").get<std::string>();
        instance.template_id = record.at("template_id").get<std::string>();
        auto const placeholderValues = record.value("placeholder_values", Json::object());
        for (auto const& [k, v]: placeholderValues.items())
            instance.placeholder_values.emplace(k, v);
        instance.query_text = record.at("query_text").get<std::string>();
        instance.available_tools = record.at("available_tools").get<std::vector<std::string>>();
        instance.ground_truth = record.at("ground_truth").get<std::string>();
        instance.seed = record.value("seed", std::uint64_t { 0 });
        return instance;
    }
    catch (Json::exception const& e)
    {
        throw Error(ErrorCode::MalformedDocument, fmt::format("bad instance record: {}", e.what()));
    }
}

// --- templates --------------------------------------------------------------

auto template_markers(std::string_view text) -> std::set<std::string>
{
    auto names = std::set<std::string> {};
    for_each_marker(text, [&](std::size_t, std::size_t, std::string_view name) { names.emplace(name); });
    return names;
}

auto parse_template(Json const& doc) -> QueryTemplate
{
    if (!doc.is_object())
        throw Error(ErrorCode::MalformedDocument, "template document must be an object");
    if (!doc.contains("query_template") || !doc["query_template"].is_string())
        throw Error(ErrorCode::MalformedDocument, "template document needs a string 'query_template'");

    auto tmpl = QueryTemplate {};
    tmpl.template_text = doc["query_template"].get<std::string>();
    tmpl.template_id = doc.contains("template_id")
                           ? doc["template_id"].get<std::string>()
                           : fmt::format("tpl-{:016x}", fnv1a(tmpl.template_text));
    tmpl.answer_extraction = doc.value("answer_extraction", "");

    auto issues = std::vector<Issue> {};

    auto const& metadata = doc.value("placeholders_metadata", Json::object());
    if (!metadata.is_object())
        throw Error(ErrorCode::MalformedDocument, "'placeholders_metadata' must be an object");
    for (auto const& [name, meta]: metadata.items())
    {
        auto spec = PlaceholderSpec {};
        spec.name = name;
        auto typeName = meta.is_object() ? meta.value("type", "text") : std::string("text");
        auto type = parse_placeholder_type(typeName);
        if (!type)
            throw Error(ErrorCode::MalformedDocument,
                        fmt::format("placeholder '{}': unknown type '{}'", name, typeName));
        spec.type = *type;
        if (meta.is_object())
        {
            spec.description = meta.value("description", "");
            for (auto const& v: meta.value("candidate_pool", Json::array()))
                spec.candidate_pool.push_back(v);
        }
        if (spec.type == PlaceholderType::Enum && spec.candidate_pool.empty())
            throw Error(ErrorCode::MalformedDocument,
                        fmt::format("enum placeholder '{}' needs a non-empty candidate_pool", name));
        tmpl.placeholders.emplace(name, std::move(spec));
    }

    auto const& steps = doc.value("solution_paths", Json::array());
    if (!steps.is_array())
        throw Error(ErrorCode::MalformedDocument, "'solution_paths' must be a list");
    for (auto const& step: steps)
        tmpl.solution_path.push_back(parse_step(step));
    if (tmpl.solution_path.empty())
        issues.push_back({ ErrorCode::EmptySolutionPath, tmpl.template_id });

    auto markers = template_markers(tmpl.template_text);
    for (auto const& name: markers)
        if (!tmpl.placeholders.contains(name))
            issues.push_back({ ErrorCode::UnknownPlaceholderMarker, name });
    for (auto const& name: template_markers(tmpl.answer_extraction))
        if (!tmpl.placeholders.contains(name) && !markers.contains(name))
            issues.push_back({ ErrorCode::UnknownPlaceholderMarker, name });
    for (auto const& [name, _]: tmpl.placeholders)
        if (!markers.contains(name))
            issues.push_back({ ErrorCode::UnusedPlaceholderSpec, name });

    if (doc.contains("toolset_policy"))
    {
        auto const& policy = doc["toolset_policy"];
        if (!policy.is_object())
            throw Error(ErrorCode::MalformedDocument, "'toolset_policy' must be an object");
        tmpl.toolset.required_tools = string_list(policy.value("required_tools", Json::array()), "required_tools");
        auto distractors = policy.value("distractor_count", Json(0));
        if (!distractors.is_number_unsigned() && !(distractors.is_number_integer() && distractors.get<std::int64_t>() >= 0))
            throw Error(ErrorCode::MalformedDocument, "'distractor_count' must be a non-negative integer");
        tmpl.toolset.distractor_count = distractors.get<std::size_t>();
        tmpl.toolset.include_terminal = policy.value("include_terminal", true);
        for (auto const& alt: policy.value("alternatives", Json::array()))
        {
            if (!alt.is_object() || !alt.contains("replaces"))
                throw Error(ErrorCode::MalformedDocument, "alternative needs 'replaces' and 'tool_call'");
            tmpl.toolset.alternatives.push_back(
                Alternative { .replaces = alt["replaces"].get<std::string>(), .step = parse_step(alt) });
        }
    }
    else if (doc.contains("task_available_tools"))
    {
        tmpl.toolset.required_tools = string_list(doc["task_available_tools"], "task_available_tools");
    }
    else
    {
        for (auto const& step: tmpl.solution_path)
            if (std::ranges::find(tmpl.toolset.required_tools, step.tool_name) == tmpl.toolset.required_tools.end())
                tmpl.toolset.required_tools.push_back(step.tool_name);
    }

    if (!issues.empty())
    {
        auto parts = std::vector<std::string> {};
        for (auto const& issue: issues)
            parts.push_back(fmt::format("{}(\"{}\")", to_string(issue.code), issue.subject));
        auto const code = issues.front().code;
        throw Error(code,
                    fmt::format("template '{}' is invalid: {}", tmpl.template_id, fmt::join(parts, ", ")),
                    std::move(issues));
    }
    return tmpl;
}

auto parse_template(std::string_view text) -> QueryTemplate
{
    return parse_template(parse_document(text, "template"));
}

auto serialize_template(QueryTemplate const& tmpl) -> Json
{
    auto metadata = Json::object();
    for (auto const& [name, spec]: tmpl.placeholders)
    {
        auto entry = Json { { "type", to_string(spec.type) }, { "description", spec.description } };
        if (!spec.candidate_pool.empty())
            entry["candidate_pool"] = spec.candidate_pool;
        metadata[name] = std::move(entry);
    }
    auto steps = Json::array();
    for (auto const& step: tmpl.solution_path)
        steps.push_back(serialize_step(step));
    auto alternatives = Json::array();
    for (auto const& alt: tmpl.toolset.alternatives)
    {
        auto entry = serialize_step(alt.step);
        entry["replaces"] = alt.replaces;
        alternatives.push_back(std::move(entry));
    }
    return Json {
        { "template_id", tmpl.template_id },
        { "query_template", tmpl.template_text },
        { "placeholders_metadata", std::move(metadata) },
        { "solution_paths", std::move(steps) },
        { "answer_extraction", tmpl.answer_extraction },
        { "toolset_policy",
          { { "required_tools", tmpl.toolset.required_tools },
            { "distractor_count", tmpl.toolset.distractor_count },
            { "include_terminal", tmpl.toolset.include_terminal },
            { "alternatives", std::move(alternatives) } } },
    };
}

auto parse_template_set(Json const& document) -> std::vector<QueryTemplate>
{
    auto const* list = &document;
    if (document.is_object() && document.contains("templates"))
        list = &document["templates"];
    auto out = std::vector<QueryTemplate> {};
    if (list->is_array())
    {
        for (auto const& doc: *list)
            out.push_back(parse_template(doc));
    }
    else
        out.push_back(parse_template(*list));

    auto ids = std::set<std::string> {};
    for (auto const& t: out)
        if (!ids.insert(t.template_id).second)
            throw Error(ErrorCode::MalformedDocument, fmt::format("duplicate template_id '{}'", t.template_id));
    return out;
}

auto load_templates(std::string const& path) -> std::vector<QueryTemplate>
{
    return parse_template_set(parse_document(read_text_file(path), path));
}

// --- placeholder values -----------------------------------------------------

PoolValueProvider::PoolValueProvider(std::map<std::string, std::vector<Json>> overrides):
    _overrides(std::move(overrides))
{
}

auto PoolValueProvider::pool_for(PlaceholderSpec const& spec) const -> std::vector<Json> const&
{
    if (auto it = _overrides.find(spec.name); it != _overrides.end())
        return it->second;
    return spec.candidate_pool;
}

auto PoolValueProvider::provide(QueryTemplate const& tmpl, std::uint64_t seed) -> PlaceholderValues
{
    auto rng = make_rng(seed);
    auto values = PlaceholderValues {};
    for (auto const& [name, spec]: tmpl.placeholders)
    {
        auto const& pool = pool_for(spec);
        if (pool.empty())
            throw Error(ErrorCode::EmptyPool, fmt::format("placeholder '{}' has no candidate values", name),
                        { { ErrorCode::EmptyPool, name } });
        values.emplace(name, pool[draw_index(rng, pool.size())]);
    }
    return values;
}

auto PoolValueProvider::combination_count(QueryTemplate const& tmpl) const -> std::optional<std::size_t>
{
    std::size_t total = 1;
    for (auto const& [_, spec]: tmpl.placeholders)
    {
        auto distinct = std::set<std::string> {};
        for (auto const& v: pool_for(spec))
            distinct.insert(v.dump());
        if (distinct.empty())
            return 0;
        if (total > std::numeric_limits<std::size_t>::max() / distinct.size())
            return std::nullopt;
        total *= distinct.size();
    }
    return total;
}

auto sample_placeholders(QueryTemplate const& tmpl, ValueProvider& provider, std::uint64_t seed)
    -> PlaceholderValues
{
    auto provided = provider.provide(tmpl, seed);
    auto values = PlaceholderValues {};
    for (auto const& [name, spec]: tmpl.placeholders)
    {
        auto it = provided.find(name);
        if (it == provided.end())
            throw Error(ErrorCode::MissingValue, fmt::format("provider supplied no value for '{}'", name),
                        { { ErrorCode::MissingValue, name } });
        if (!conforms(it->second, spec))
            throw Error(ErrorCode::TypeMismatch,
                        fmt::format("value {} for '{}' is not of type {}", it->second.dump(), name, to_string(spec.type)),
                        { { ErrorCode::TypeMismatch, name } });
        values.emplace(name, it->second);
    }
    return values;
}

auto substitute_markers(std::string_view text, PlaceholderValues const& values) -> std::string
{
    auto out = std::string {};
    std::size_t copied = 0;
    for_each_marker(text, [&](std::size_t begin, std::size_t end, std::string_view name) {
        auto it = values.find(std::string(name));
        if (it == values.end())
            throw Error(ErrorCode::MissingValue, fmt::format("no value for placeholder '{}'", name),
                        { { ErrorCode::MissingValue, std::string(name) } });
        out.append(text.substr(copied, begin - copied));
        out.append(display_text(it->second));
        copied = end;
    });
    out.append(text.substr(copied));
    return out;
}

auto render_query(QueryTemplate const& tmpl, PlaceholderValues const& values, Paraphraser& paraphraser,
                  std::uint64_t seed) -> std::string
{
    for (auto const& [name, _]: tmpl.placeholders)
        if (!values.contains(name))
            throw Error(ErrorCode::MissingValue, fmt::format("no value for placeholder '{}'", name),
                        { { ErrorCode::MissingValue, name } });
    return paraphraser.paraphrase(substitute_markers(tmpl.template_text, values), seed);
}

// --- argument resolution & ground truth -------------------------------------

auto find_key_depth_first(Json const& node, std::string_view key) -> Json const*
{
    if (node.is_object())
    {
        if (auto it = node.find(std::string(key)); it != node.end())
            return &*it;
        for (auto const& [_, child]: node.items())
            if (auto const* hit = find_key_depth_first(child, key))
                return hit;
    }
    else if (node.is_array())
    {
        for (auto const& child: node)
            if (auto const* hit = find_key_depth_first(child, key))
                return hit;
    }
    return nullptr;
}

auto resolve_argument(std::string_view key, PlaceholderValues const& values, std::span<Json const> response_stack)
    -> Json
{
    if (auto it = values.find(std::string(key)); it != values.end())
        return it->second;
    for (auto it = response_stack.rbegin(); it != response_stack.rend(); ++it)
        if (auto const* hit = find_key_depth_first(*it, key))
            return *hit;
    throw Error(ErrorCode::UnresolvableArgument,
                fmt::format("argument '{}' is neither a placeholder nor present in any prior result", key),
                { { ErrorCode::UnresolvableArgument, std::string(key) } });
}

auto build_step_arguments(SolutionStep const& step, PlaceholderValues const& values,
                          std::span<Json const> response_stack) -> Json
{
    auto args = Json::object();
    for (auto const& [param, source]: step.arguments)
    {
        if (auto const* ref = std::get_if<ResolveRef>(&source))
            args[param] = resolve_argument(ref->key, values, response_stack);
        else
            args[param] = std::get<Json>(source);
    }
    return args;
}

auto extract_answer(QueryTemplate const& tmpl, PlaceholderValues const& values, Json const& final_result)
    -> std::string
{
    auto path = substitute_markers(tmpl.answer_extraction, values);
    auto const* node = find_path(final_result, path);
    if (node == nullptr)
        throw Error(ErrorCode::ExtractionPathMissing,
                    fmt::format("extraction path '{}' not found in final result", path),
                    { { ErrorCode::ExtractionPathMissing, path } });
    auto answer = canonical_text(*node);
    if (answer.empty())
        throw Error(ErrorCode::ExtractionPathMissing, fmt::format("extraction path '{}' yields an empty answer", path),
                    { { ErrorCode::ExtractionPathMissing, path } });
    return answer;
}

auto compute_ground_truth(QueryTemplate const& tmpl, PlaceholderValues const& values, ToolRegistry const& registry,
                          FixtureStore const& store) -> std::string
{
    if (tmpl.solution_path.empty())
        throw Error(ErrorCode::EmptySolutionPath, fmt::format("template '{}' has no solution path", tmpl.template_id));

    auto local = store;
    auto responses = std::vector<Json> {};
    for (auto const& step: tmpl.solution_path)
    {
        auto const& spec = registry.at(step.tool_name);
        auto args = build_step_arguments(step, values, responses);
        if (auto faults = tools::validate_args(spec, args); !faults.empty())
            throw Error(ErrorCode::ToolExecutionFailure,
                        fmt::format("solution step '{}' has invalid arguments: {}", step.tool_name, faults.front().describe()));
        auto result = tools::execute(spec, args, local);
        if (!result.is_ok())
            throw Error(ErrorCode::ToolExecutionFailure,
                        fmt::format("solution step '{}' failed: {}", step.tool_name, result.message()),
                        { { ErrorCode::ToolExecutionFailure, step.tool_name } });
        responses.push_back(std::move(result.payload));
    }
    return extract_answer(tmpl, values, responses.back());
}

// --- tool sets --------------------------------------------------------------

auto assemble_toolset(QueryTemplate const& tmpl, ToolRegistry const& registry, std::uint64_t seed)
    -> std::vector<std::string>
{
    auto const terminal = registry.terminal().name;
    auto tools = std::vector<std::string> {};
    auto excluded = std::set<std::string> { terminal };

    for (auto const& name: tmpl.toolset.required_tools)
    {
        if (name == terminal)
            continue;
        auto const* spec = registry.find(name);
        if (spec == nullptr)
            throw Error(ErrorCode::UnknownRequiredTool, fmt::format("required tool '{}' is not registered", name),
                        { { ErrorCode::UnknownRequiredTool, name } });
        if (spec->is_terminal)
            continue;
        if (excluded.insert(name).second)
            tools.push_back(name);
    }
    // Solution tools and their declared alternatives are never offered as
    // distractors: the template alone decides whether they appear.
    for (auto const& step: tmpl.solution_path)
        excluded.insert(step.tool_name);
    for (auto const& alt: tmpl.toolset.alternatives)
        excluded.insert(alt.step.tool_name);

    auto pool = std::vector<std::string> {};
    for (auto const& name: registry.names())
        if (!excluded.contains(name))
            pool.push_back(name);

    auto const wanted = tmpl.toolset.distractor_count;
    if (wanted > pool.size())
        throw Error(ErrorCode::InsufficientDistractors,
                    fmt::format("template '{}' wants {} distractors but only {} tools are eligible", tmpl.template_id,
                                wanted, pool.size()));

    auto rng = Rng(derive_seed(seed, { 0x7001 }));
    for (std::size_t i = 0; i < wanted; ++i)
    {
        auto j = i + draw_index(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
        tools.push_back(pool[i]);
    }
    if (tmpl.toolset.include_terminal)
        tools.push_back(terminal);
    return tools;
}

// --- generation -------------------------------------------------------------

UniquenessExhausted::UniquenessExhausted(std::size_t requested, std::vector<QueryInstance> partial):
    Error(ErrorCode::UniquenessExhausted,
          fmt::format("only {} of {} requested unique instances could be generated", partial.size(), requested),
          { { ErrorCode::UniquenessExhausted, std::to_string(partial.size()) } }),
    _requested(requested),
    _partial(std::move(partial))
{
}

auto generate_instances(std::span<QueryTemplate const> templates, std::size_t count, GenerationContext ctx,
                        std::uint64_t seed) -> std::vector<QueryInstance>
{
    if (count == 0)
        throw Error(ErrorCode::InvalidArgument, "instance count must be at least 1");
    if (templates.empty())
        throw Error(ErrorCode::InvalidArgument, "no templates to generate from");

    constexpr std::size_t kAttemptsPerInstance = 256;

    auto used = std::vector<std::set<std::string>>(templates.size());
    auto exhausted = std::vector<bool>(templates.size(), false);
    auto instances = std::vector<QueryInstance> {};
    instances.reserve(count);
    std::size_t cursor = 0;

    while (instances.size() < count)
    {
        auto next = std::optional<std::size_t> {};
        for (std::size_t k = 0; k < templates.size(); ++k)
        {
            auto candidate = (cursor + k) % templates.size();
            if (!exhausted[candidate])
            {
                next = candidate;
                break;
            }
        }
        if (!next)
            throw UniquenessExhausted(count, std::move(instances));

        auto const ti = *next;
        auto const& tmpl = templates[ti];
        cursor = ti + 1;

        if (auto total = ctx.provider.combination_count(tmpl); total && used[ti].size() >= *total)
        {
            exhausted[ti] = true;
            continue;
        }

        auto found = std::optional<std::pair<PlaceholderValues, std::uint64_t>> {};
        for (std::size_t attempt = 0; attempt < kAttemptsPerInstance && !found; ++attempt)
        {
            auto instanceSeed = derive_seed(seed, { ti, used[ti].size(), attempt });
            auto values = sample_placeholders(tmpl, ctx.provider, instanceSeed);
            if (used[ti].insert(value_key(values)).second)
                found.emplace(std::move(values), instanceSeed);
        }
        if (!found)
        {
            exhausted[ti] = true;
            continue;
        }

        auto& [values, instanceSeed] = *found;
        auto instance = QueryInstance {};
        instance.instance_id = fmt::format("{}-{:04d}", tmpl.template_id, instances.size());
        instance.template_id = tmpl.template_id;
        instance.query_text = render_query(tmpl, values, ctx.paraphraser, instanceSeed);
        instance.available_tools = assemble_toolset(tmpl, ctx.registry, instanceSeed);
        instance.ground_truth = compute_ground_truth(tmpl, values, ctx.registry, ctx.store);
        instance.placeholder_values = std::move(values);
        instance.seed = instanceSeed;
        instances.push_back(std::move(instance));
    }
    return instances;
}

} // namespace trajforge::querygen

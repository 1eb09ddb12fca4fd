// SPDX-License-Identifier: Apache-2.0
#include <trajforge/environment.hpp>

#include <fmt/format.h>

#include <algorithm>

namespace trajforge::env
{

using querygen::QueryInstance;
using tools::FixtureStore;
using tools::ToolRegistry;
using tools::ToolSpec;

auto to_string(ErrorLayer layer) -> std::string_view
{
    switch (layer)
    {
        case ErrorLayer::Structure: return "structure";
        case ErrorLayer::Toolname: return "toolname";
        case ErrorLayer::Arguments: return "arguments";
        case ErrorLayer::Execution: return "execution";
    }
    return "structure";
}

auto parse_error_layer(std::string_view name) -> std::optional<ErrorLayer>
{
    for (auto layer: { ErrorLayer::Structure, ErrorLayer::Toolname, ErrorLayer::Arguments, ErrorLayer::Execution })
        if (to_string(layer) == name)
            return layer;
    return std::nullopt;
}

auto default_system_prompt() -> std::string const&
{
    // Kept byte-for-byte, spelling included: agents trained on exported data
    // see exactly this text.
    static std::string const prompt =
        R"([BEGIN OF TASK INSTRUCTION]
You are an expert in agentic task. You will be given a task, and you can use many tools sequentially to solve the task. At each time step, you will call exactly 1 tool, and based on the environment feedback, you will be able to decide your next step. Keep repeating this action until you gather enough information to solve the task. By that time, call the special function "Finish" given to use to return the final answer in the exact format.

Remember:
1. MOST IMPORTANT, in your response of the "Finish" step, you MUST strictly follow the response format of what to be written inside "final_answer".
2. The state change is irreversible, you can't go back to one of the former state.
3. All the thought is short, at most in 5 sentences.
4. Your action must be calling one of the given tools (functions).
5. Your action input must be in json format, where action inputs must be realistic and from the user. Never generate any action input by yourself or copy the input description. Do not add unrelated parameters if not needed. Do not add optional parameters when it is not required or when these information is not needed.
6. You can do more then one trys, so if your plan is to continusly try some conditions, you can do one of the conditions per try.

Task description:
You should use functions to help handle the real time user querys. Remember:
1. ALWAYS call "Finish" function at the end of the task. And the final answer should contain enough information to show to the user.
[END OF TASK INSTRUCTION])";
    return prompt;
}

// --- wire syntax ------------------------------------------------------------

namespace
{
    struct Fragment
    {
        std::size_t begin;
        Json value;
    };

    /// End (exclusive) of the balanced bracket group opening at `pos`, or npos.
    auto balanced_end(std::string_view text, std::size_t pos) -> std::size_t
    {
        auto depth = 0;
        auto inString = false;
        for (auto i = pos; i < text.size(); ++i)
        {
            auto c = text[i];
            if (inString)
            {
                if (c == '\\')
                    ++i;
                else if (c == '"')
                    inString = false;
                continue;
            }
            if (c == '"')
                inString = true;
            else if (c == '{' || c == '[')
                ++depth;
            else if (c == '}' || c == ']')
            {
                if (--depth == 0)
                    return i + 1;
            }
        }
        return std::string_view::npos;
    }

    /// Every top-level JSON object/array embedded in `text`.
    auto json_fragments(std::string_view text) -> std::vector<Fragment>
    {
        auto out = std::vector<Fragment> {};
        for (std::size_t pos = 0; pos < text.size(); ++pos)
        {
            if (text[pos] != '{' && text[pos] != '[')
                continue;
            auto end = balanced_end(text, pos);
            if (end == std::string_view::npos)
                continue;
            auto value = Json::parse(text.substr(pos, end - pos), nullptr, false);
            if (value.is_discarded())
                continue;
            out.push_back({ pos, std::move(value) });
            pos = end - 1;
        }
        return out;
    }

    bool looks_like_call(Json const& v) { return v.is_object() && v.contains("tool_name"); }

    bool looks_like_envelope(Json const& v)
    {
        return v.is_object() && v.contains("action") && looks_like_call(v["action"]);
    }

    struct Candidate
    {
        Json call;
        std::string thought;
    };

    void collect_calls(Json const& value, std::vector<Candidate>& out)
    {
        if (looks_like_envelope(value))
        {
            auto thought = value.value("thought", Json(""));
            out.push_back({ value["action"], thought.is_string() ? thought.get<std::string>() : thought.dump() });
        }
        else if (looks_like_call(value))
            out.push_back({ value, {} });
        else if (value.is_array())
            for (auto const& item: value)
                collect_calls(item, out);
    }
} // namespace

auto parse_action(std::string_view raw) -> Action
{
    auto action = Action { .raw = std::string(raw), .thought = {}, .parsed = std::nullopt, .fault = {} };
    auto fragments = json_fragments(raw);

    auto candidates = std::vector<Candidate> {};
    std::size_t firstCall = raw.size();
    for (auto const& fragment: fragments)
    {
        auto before = candidates.size();
        collect_calls(fragment.value, candidates);
        if (before == 0 && !candidates.empty())
            firstCall = fragment.begin;
    }

    if (candidates.empty())
    {
        action.fault = "no tool call found; expected one JSON object {\"tool_name\": ..., \"arguments\": {...}}";
        return action;
    }
    if (candidates.size() > 1)
    {
        action.fault = fmt::format("{} tool calls found; call exactly one tool per step", candidates.size());
        return action;
    }

    auto const& [call, envelopeThought] = candidates.front();
    auto const& name = call["tool_name"];
    if (!name.is_string() || trim(name.get<std::string>()).empty())
    {
        action.fault = "\"tool_name\" must be a non-empty string";
        return action;
    }
    auto args = call.value("arguments", Json::object());
    if (args.is_null())
        args = Json::object();
    if (!args.is_object())
    {
        action.fault = "\"arguments\" must be a JSON object";
        return action;
    }

    action.thought = envelopeThought.empty() ? trim(raw.substr(0, firstCall)) : trim(envelopeThought);
    action.parsed = ToolCall { .tool_name = name.get<std::string>(), .arguments = std::move(args) };
    return action;
}

auto format_action(ToolCall const& call, std::string_view thought) -> std::string
{
    auto body = Json { { "tool_name", call.tool_name }, { "arguments", call.arguments } }.dump();
    if (thought.empty())
        return body;
    return fmt::format("{}\n{}", thought, body);
}

// --- episode state ----------------------------------------------------------

EpisodeState::EpisodeState(QueryInstance instance, FixtureStore store):
    _instance(std::move(instance)), _store(std::move(store))
{
}

Environment::Environment(ToolRegistry const& registry, EnvironmentConfig config):
    _registry(&registry), _config(std::move(config))
{
    if (_config.max_steps == 0)
        throw Error(ErrorCode::InvalidArgument, "max_steps must be at least 1");
}

auto Environment::start(QueryInstance instance, FixtureStore const& store) const -> EpisodeState
{
    return EpisodeState(std::move(instance), store);
}

auto Environment::offered_tools(QueryInstance const& instance) const -> std::vector<ToolSpec const*>
{
    auto out = std::vector<ToolSpec const*> {};
    for (auto const& name: instance.available_tools)
        if (auto const* spec = _registry->find(name))
            out.push_back(spec);
    return out;
}

auto Environment::render_payload(Json const& payload) const -> std::string
{
    auto text = payload.is_string() ? payload.get<std::string>() : payload.dump();
    auto const budget = _config.observation_budget;
    if (budget == 0 || text.size() <= budget)
        return text;
    auto cut = budget;
    // don't split a UTF-8 sequence
    while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80)
        --cut;
    auto dropped = text.size() - cut;
    text.resize(cut);
    text += fmt::format(" ...[truncated {} bytes]", dropped);
    return text;
}

auto Environment::run_tool(ToolSpec const& spec, Json const& args, EpisodeState& state,
                           std::optional<ErrorLayer> layer) const -> Outcome
{
    auto result = tools::execute(spec, args, state._store);
    if (!result.is_ok())
    {
        auto text = layer ? fmt::format("ERROR[execution]: tool \"{}\" failed: {}", spec.name, result.message())
                          : fmt::format("ERROR: tool \"{}\" failed: {}", spec.name, result.message());
        return { Observation { std::move(text), true, layer }, std::nullopt };
    }
    auto outcome = Outcome { Observation { render_payload(result.payload), false, std::nullopt }, std::nullopt };
    if (result.terminal)
        outcome.final_answer = result.payload.value("final_answer", "");
    return outcome;
}

auto Environment::handle(EpisodeState& state, Action const& action) const -> Outcome
{
    if (!_config.monitoring.action_monitoring)
        return handle_unmonitored(state, action);

    if (!action.parsed)
        return { Observation { fmt::format("ERROR[structure]: {}", action.fault.empty() ? "unparseable action" : action.fault),
                               true, ErrorLayer::Structure },
                 std::nullopt };

    auto const& call = *action.parsed;
    auto const& offered = state._instance.available_tools;
    auto const* spec = std::ranges::find(offered, call.tool_name) != offered.end() ? _registry->find(call.tool_name)
                                                                                    : nullptr;
    if (spec == nullptr)
        return { Observation { fmt::format("ERROR[toolname]: tool \"{}\" is not available. Available tools: {}",
                                           call.tool_name, fmt::join(offered, ", ")),
                               true, ErrorLayer::Toolname },
                 std::nullopt };

    auto faults = tools::validate_args(*spec, call.arguments, _config.strict_args);
    if (!faults.empty())
    {
        auto parts = std::vector<std::string> {};
        for (auto const& fault: faults)
            parts.push_back(fault.describe());
        return { Observation { fmt::format("ERROR[arguments]: tool \"{}\": {}", call.tool_name, fmt::join(parts, "; ")),
                               true, ErrorLayer::Arguments },
                 std::nullopt };
    }

    auto args = call.arguments;
    if (!_config.strict_args)
        for (auto it = args.begin(); it != args.end();)
            it = spec->param(it.key()) == nullptr ? args.erase(it) : std::next(it);
    return run_tool(*spec, args, state, ErrorLayer::Execution);
}

// Ablation: no structure/name/argument checks. Whatever cannot run fails as
// a plain, unclassified error.
auto Environment::handle_unmonitored(EpisodeState& state, Action const& action) const -> Outcome
{
    if (!action.parsed)
        return { Observation { "ERROR: the action could not be executed", true, std::nullopt }, std::nullopt };
    auto const& call = *action.parsed;
    auto const* spec = _registry->find(call.tool_name);
    if (spec == nullptr)
        return { Observation { fmt::format("ERROR: tool \"{}\" failed: no such tool", call.tool_name), true, std::nullopt },
                 std::nullopt };
    return run_tool(*spec, call.arguments, state, std::nullopt);
}

auto Environment::classify_and_handle(EpisodeState& state, Action const& action) const -> Observation
{
    if (!state.running())
        throw Error(ErrorCode::SteppingTerminatedEpisode, "episode has already terminated");
    return handle(state, action).observation;
}

auto Environment::step(EpisodeState& state, std::string_view raw) const -> Observation
{
    if (!state.running())
        throw Error(ErrorCode::SteppingTerminatedEpisode,
                    fmt::format("episode for '{}' has already terminated", state._instance.instance_id));

    auto action = parse_action(raw);
    auto outcome = handle(state, action);
    state._history.push_back({ std::move(action), outcome.observation });

    auto const step = state._history.size();
    if (outcome.observation.error_layer)
        state._errors.push_back({ step, *outcome.observation.error_layer });

    if (outcome.final_answer)
    {
        state._status = EpisodeStatus::Finished;
        state._final = std::move(outcome.final_answer);
    }
    else if (step >= _config.max_steps)
        state._status = EpisodeStatus::StepLimitExceeded;
    return outcome.observation;
}

} // namespace trajforge::env

// SPDX-License-Identifier: Apache-2.0
#include <trajforge/agents.hpp>

#include <fmt/format.h>

#include <algorithm>

namespace trajforge::agents
{

using querygen::QueryInstance;
using querygen::QueryTemplate;

auto ConversationView::tool(std::string_view name) const -> ToolInfo const*
{
    auto it = std::ranges::find(tools, name, &ToolInfo::name);
    return it == tools.end() ? nullptr : &*it;
}

auto ConversationView::terminal_name() const -> std::string
{
    auto it = std::ranges::find_if(tools, &ToolInfo::is_terminal);
    return it == tools.end() ? std::string("Finish") : it->name;
}

auto make_view(env::Environment const& environment, env::EpisodeState const& state) -> ConversationView
{
    auto view = ConversationView {};
    view.system_prompt = environment.config().system_prompt;
    view.query_text = state.instance().query_text;
    for (auto const* spec: environment.offered_tools(state.instance()))
        view.tools.push_back({ spec->name, spec->description, spec->params, spec->is_terminal, spec->parameters_schema() });
    for (auto const& [action, obs]: state.history())
        view.turns.push_back({ action.raw, obs.text, obs.is_error });
    return view;
}

// --- oracle -----------------------------------------------------------------

OracleAgent::OracleAgent(QueryTemplate tmpl, QueryInstance instance):
    _template(std::move(tmpl)), _instance(std::move(instance))
{
    if (_template.template_id != _instance.template_id)
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("instance '{}' was not generated from template '{}'", _instance.instance_id,
                                _template.template_id));
}

auto OracleAgent::next_action(ConversationView const& view) -> std::string
{
    auto results = std::vector<Json> {};
    for (auto const& turn: view.turns)
    {
        if (turn.is_error)
            continue;
        auto parsed = Json::parse(turn.observation, nullptr, false);
        if (parsed.is_discarded())
            throw Error(ErrorCode::OracleResolutionFailure,
                        fmt::format("observation is not a JSON result: {}", turn.observation.substr(0, 80)));
        results.push_back(std::move(parsed));
    }

    auto const progress = results.size();
    auto const& path = _template.solution_path;
    try
    {
        if (progress < path.size())
        {
            auto const* step = &path[progress];
            auto const& offered = _instance.available_tools;
            if (std::ranges::find(offered, step->tool_name) == offered.end())
            {
                auto const* alt = _template.alternative_for(step->tool_name);
                if (alt == nullptr)
                    throw Error(ErrorCode::OracleResolutionFailure,
                                fmt::format("tool '{}' is not offered and has no alternative", step->tool_name));
                step = &alt->step;
            }
            auto args = querygen::build_step_arguments(*step, _instance.placeholder_values, results);
            return env::format_action({ step->tool_name, std::move(args) });
        }
        if (results.empty())
            throw Error(ErrorCode::OracleResolutionFailure, "no tool result to extract an answer from");
        auto answer = querygen::extract_answer(_template, _instance.placeholder_values, results.at(path.size() - 1));
        return env::format_action({ view.terminal_name(), Json { { "final_answer", answer } } });
    }
    catch (Error const& e)
    {
        if (e.code() == ErrorCode::OracleResolutionFailure)
            throw;
        throw Error(ErrorCode::OracleResolutionFailure, e.what());
    }
}

auto oracle_factory(std::map<std::string, QueryTemplate> templates) -> AgentFactory
{
    auto shared = std::make_shared<std::map<std::string, QueryTemplate> const>(std::move(templates));
    return [shared](QueryInstance const& instance) -> std::unique_ptr<AgentPolicy> {
        auto it = shared->find(instance.template_id);
        if (it == shared->end())
            throw Error(ErrorCode::OracleResolutionFailure,
                        fmt::format("no template '{}' for instance '{}'", instance.template_id, instance.instance_id));
        return std::make_unique<OracleAgent>(it->second, instance);
    };
}

// --- scripted ---------------------------------------------------------------

ScriptedAgent::ScriptedAgent(std::vector<std::string> script): _script(std::move(script))
{
    if (_script.empty())
        throw Error(ErrorCode::InvalidArgument, "script must contain at least one action");
}

auto ScriptedAgent::next_action(ConversationView const& view) -> std::string
{
    auto index = view.turns.size();
    if (index < _script.size())
        return _script[index];
    return env::format_action({ view.terminal_name(), Json { { "final_answer", "" } } });
}

// --- fault injection --------------------------------------------------------

auto to_string(Mutation mutation) -> std::string_view
{
    switch (mutation)
    {
        case Mutation::CorruptStructure: return "corrupt_structure";
        case Mutation::SwapToolname: return "swap_toolname";
        case Mutation::DropRequiredArg: return "drop_required_arg";
    }
    return "corrupt_structure";
}

auto parse_mutation(std::string_view name) -> std::optional<Mutation>
{
    for (auto m: { Mutation::CorruptStructure, Mutation::SwapToolname, Mutation::DropRequiredArg })
        if (to_string(m) == name)
            return m;
    return std::nullopt;
}

namespace
{
    auto corrupt(std::string_view raw) -> std::string
    {
        auto text = std::string(raw);
        if (auto pos = text.rfind('}'); pos != std::string::npos)
            text.erase(pos, 1);
        else
            text += " {";
        return text;
    }
} // namespace

auto mutate_action(std::string_view raw, Mutation mutation, ConversationView const& view) -> std::string
{
    auto action = env::parse_action(raw);
    if (mutation == Mutation::CorruptStructure || !action.parsed)
        return corrupt(raw);

    auto call = *action.parsed;
    if (mutation == Mutation::SwapToolname)
    {
        call.tool_name += "_v2";
        return env::format_action(call, action.thought);
    }

    if (auto const* info = view.tool(call.tool_name))
    {
        for (auto const& param: info->params)
        {
            if (param.required && call.arguments.contains(param.name))
            {
                call.arguments.erase(param.name);
                return env::format_action(call, action.thought);
            }
        }
    }
    return corrupt(raw);
}

FaultInjectingAgent::FaultInjectingAgent(std::unique_ptr<AgentPolicy> inner, std::map<std::size_t, Mutation> faults):
    _inner(std::move(inner)), _faults(std::move(faults))
{
    if (!_inner)
        throw Error(ErrorCode::InvalidArgument, "fault injection needs an inner policy");
}

auto FaultInjectingAgent::next_action(ConversationView const& view) -> std::string
{
    auto raw = _inner->next_action(view);
    auto it = _faults.find(view.turns.size() + 1);
    return it == _faults.end() ? raw : mutate_action(raw, it->second, view);
}

} // namespace trajforge::agents

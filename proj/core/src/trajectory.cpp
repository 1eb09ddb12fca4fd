// SPDX-License-Identifier: Apache-2.0
#include <trajforge/trajectory.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <set>

namespace trajforge::trajectory
{

using querygen::QueryInstance;

auto to_string(TerminalStatus status) -> std::string_view
{
    switch (status)
    {
        case TerminalStatus::Finished: return "finished";
        case TerminalStatus::StepLimitExceeded: return "step_limit_exceeded";
        case TerminalStatus::Aborted: return "aborted";
    }
    return "aborted";
}

auto to_string(MatchMode mode) -> std::string_view
{
    switch (mode)
    {
        case MatchMode::Exact: return "exact";
        case MatchMode::Normalized: return "normalized";
        case MatchMode::Containment: return "containment";
    }
    return "normalized";
}

auto parse_match_mode(std::string_view name) -> std::optional<MatchMode>
{
    for (auto mode: { MatchMode::Exact, MatchMode::Normalized, MatchMode::Containment })
        if (to_string(mode) == name)
            return mode;
    return std::nullopt;
}

auto to_string(VerdictReason reason) -> std::string_view
{
    switch (reason)
    {
        case VerdictReason::OkClean: return "ok_clean";
        case VerdictReason::OkRecovered: return "ok_recovered";
        case VerdictReason::AnswerMismatch: return "answer_mismatch";
        case VerdictReason::UnrecoveredError: return "unrecovered_error";
        case VerdictReason::NoFinalAnswer: return "no_final_answer";
        case VerdictReason::Aborted: return "aborted";
    }
    return "aborted";
}

auto parse_verdict_reason(std::string_view name) -> std::optional<VerdictReason>
{
    for (auto reason: { VerdictReason::OkClean, VerdictReason::OkRecovered, VerdictReason::AnswerMismatch,
                        VerdictReason::UnrecoveredError, VerdictReason::NoFinalAnswer, VerdictReason::Aborted })
        if (to_string(reason) == name)
            return reason;
    return std::nullopt;
}

// --- records ----------------------------------------------------------------

namespace
{
    auto layer_json(std::optional<ErrorLayer> layer) -> Json
    {
        return layer ? Json(std::string(env::to_string(*layer))) : Json(nullptr);
    }

    auto layer_from(Json const& value) -> std::optional<ErrorLayer>
    {
        if (value.is_null())
            return std::nullopt;
        auto layer = env::parse_error_layer(value.get<std::string>());
        if (!layer)
            throw Error(ErrorCode::MalformedDocument, fmt::format("unknown error layer {}", value.dump()));
        return layer;
    }
} // namespace

auto Trajectory::to_json() const -> Json
{
    auto stepsJson = Json::array();
    for (auto const& step: steps)
        stepsJson.push_back({ { "raw", step.raw },
                              { "observation", step.observation },
                              { "error_layer", layer_json(step.error_layer) },
                              { "is_error", step.is_error } });
    auto errors = Json::array();
    for (auto const& e: error_history)
        errors.push_back({ { "step", e.step }, { "layer", env::to_string(e.layer) } });

    auto doc = Json {
        { "episode_id", episode_id },
        { "instance_id", instance_id },
        { "steps", std::move(stepsJson) },
        { "terminal", to_string(terminal) },
        { "final_answer", final_answer ? Json(*final_answer) : Json(nullptr) },
        { "error_history", std::move(errors) },
    };
    if (!abort_reason.empty())
        doc["abort_reason"] = abort_reason;
    return doc;
}

auto Trajectory::from_json(Json const& record) -> Trajectory
{
    try
    {
        auto traj = Trajectory {};
        traj.episode_id = record.value("episode_id", "");
        traj.instance_id = record.at("instance_id").get<std::string>();
        for (auto const& step: record.at("steps"))
        {
            auto layer = layer_from(step.value("error_layer", Json()));
            traj.steps.push_back({ step.at("raw").get<std::string>(), step.at("observation").get<std::string>(),
                                   layer, step.value("is_error", layer.has_value()) });
        }
        auto terminal = record.at("terminal").get<std::string>();
        if (terminal == "finished")
            traj.terminal = TerminalStatus::Finished;
        else if (terminal == "step_limit_exceeded")
            traj.terminal = TerminalStatus::StepLimitExceeded;
        else if (terminal == "aborted")
            traj.terminal = TerminalStatus::Aborted;
        else
            throw Error(ErrorCode::MalformedDocument, fmt::format("unknown terminal status '{}'", terminal));
        if (auto const& answer = record.value("final_answer", Json()); !answer.is_null())
            traj.final_answer = answer.get<std::string>();
        for (auto const& e: record.value("error_history", Json::array()))
        {
            auto layer = layer_from(e.at("layer"));
            if (!layer)
                throw Error(ErrorCode::MalformedDocument, "error_history entry without a layer");
            traj.error_history.push_back({ e.at("step").get<std::size_t>(), *layer });
        }
        traj.abort_reason = record.value("abort_reason", "");
        return traj;
    }
    catch (Json::exception const& e)
    {
        throw Error(ErrorCode::MalformedDocument, fmt::format("bad trajectory record: {}", e.what()));
    }
}

auto Trajectory::from_episode(env::EpisodeState const& state, std::string episode_id) -> Trajectory
{
    auto traj = Trajectory {};
    traj.episode_id = std::move(episode_id);
    traj.instance_id = state.instance().instance_id;
    for (auto const& [action, obs]: state.history())
        traj.steps.push_back({ action.raw, obs.text, obs.error_layer, obs.is_error });
    traj.error_history = state.error_history();
    switch (state.status())
    {
        case env::EpisodeStatus::Finished:
            traj.terminal = TerminalStatus::Finished;
            traj.final_answer = state.final_answer();
            break;
        case env::EpisodeStatus::StepLimitExceeded: traj.terminal = TerminalStatus::StepLimitExceeded; break;
        case env::EpisodeStatus::Running:
            traj.terminal = TerminalStatus::Aborted;
            traj.abort_reason = "episode did not terminate";
            break;
    }
    return traj;
}

// --- filtering --------------------------------------------------------------

bool match_answer(std::string_view final_answer, std::string_view ground_truth, MatchMode mode)
{
    switch (mode)
    {
        case MatchMode::Exact: return final_answer == ground_truth;
        case MatchMode::Normalized: return normalize_text(final_answer) == normalize_text(ground_truth);
        case MatchMode::Containment:
        {
            auto needle = normalize_text(ground_truth);
            return !needle.empty() && normalize_text(final_answer).find(needle) != std::string::npos;
        }
    }
    return false;
}

bool check_error_recovery(Trajectory const& traj)
{
    auto errorSteps = std::set<std::size_t> {};
    for (auto const& e: traj.error_history)
        errorSteps.insert(e.step);
    for (auto step: errorSteps)
        if (step >= traj.steps.size() || errorSteps.contains(step + 1))
            return false;
    return true;
}

auto filter_trajectory(Trajectory const& traj, QueryInstance const& instance, FilterOptions options) -> FilterVerdict
{
    if (traj.instance_id != instance.instance_id)
        throw Error(ErrorCode::InstanceMismatch,
                    fmt::format("trajectory '{}' belongs to '{}', not '{}'", traj.episode_id, traj.instance_id,
                                instance.instance_id));

    auto reject = [](VerdictReason reason) { return FilterVerdict { false, reason }; };

    if (traj.terminal == TerminalStatus::Aborted)
        return reject(VerdictReason::Aborted);
    if (traj.terminal != TerminalStatus::Finished || !traj.final_answer || trim(*traj.final_answer).empty())
        return reject(VerdictReason::NoFinalAnswer);
    if (options.trajectory_monitoring && !match_answer(*traj.final_answer, instance.ground_truth, options.mode))
        return reject(VerdictReason::AnswerMismatch);
    if (!check_error_recovery(traj))
        return reject(VerdictReason::UnrecoveredError);
    return { true, traj.error_history.empty() ? VerdictReason::OkClean : VerdictReason::OkRecovered };
}

void FilterReport::add(FilterVerdict verdict)
{
    ++total;
    if (verdict.accepted)
        ++accepted;
    ++histogram[verdict.reason];
}

auto FilterReport::to_json() const -> Json
{
    auto hist = Json::object();
    for (auto const& [reason, n]: histogram)
        hist[std::string(to_string(reason))] = n;
    return Json {
        { "total", total },
        { "accepted", accepted },
        { "verdict_histogram", std::move(hist) },
        { "pass_rate", total == 0 ? Json(nullptr) : Json(static_cast<double>(accepted) / static_cast<double>(total)) },
    };
}

auto FilterReport::from_json(Json const& document) -> FilterReport
{
    auto report = FilterReport {};
    report.total = document.at("total").get<std::size_t>();
    report.accepted = document.at("accepted").get<std::size_t>();
    auto const histogram = document.value("verdict_histogram", Json::object());
    for (auto const& [name, n]: histogram.items())
    {
        auto reason = parse_verdict_reason(name);
        if (!reason)
            throw Error(ErrorCode::MalformedDocument, fmt::format("unknown verdict reason '{}'", name));
        report.histogram[*reason] = n.get<std::size_t>();
    }
    return report;
}

// --- export -----------------------------------------------------------------

auto export_record(Trajectory const& traj, QueryInstance const& instance, tools::ToolRegistry const& registry,
                   std::string_view system_prompt, ExportOptions options) -> Json
{
    if (auto verdict = filter_trajectory(traj, instance, options.filter); !verdict.accepted)
        throw Error(ErrorCode::UnacceptedTrajectory,
                    fmt::format("trajectory '{}' was rejected ({})", traj.episode_id, to_string(verdict.reason)));

    auto messages = Json::array();
    messages.push_back({ { "role", "system" }, { "content", system_prompt } });
    messages.push_back({ { "role", "user" }, { "content", instance.query_text } });
    for (auto const& step: traj.steps)
    {
        if (options.elide_errors && step.is_error)
            continue;
        auto action = env::parse_action(step.raw);
        auto toolMessage = Json { { "role", "tool" }, { "content", step.observation } };
        if (action.parsed)
        {
            messages.push_back({ { "role", "assistant" }, { "content", env::format_action(*action.parsed, action.thought) } });
            toolMessage["name"] = action.parsed->tool_name;
        }
        else
            messages.push_back({ { "role", "assistant" }, { "content", step.raw } });
        messages.push_back(std::move(toolMessage));
    }

    auto toolsJson = Json::array();
    for (auto const& name: instance.available_tools)
        if (auto const* spec = registry.find(name))
            toolsJson.push_back({ { "type", "function" },
                                  { "function",
                                    { { "name", spec->name },
                                      { "description", spec->description },
                                      { "parameters", spec->parameters_schema() } } } });

    return Json {
        { "episode_id", traj.episode_id },
        { "instance_id", traj.instance_id },
        { "messages", std::move(messages) },
        { "tools", std::move(toolsJson) },
    };
}

auto export_chat_dataset(std::span<Trajectory const> accepted, std::map<std::string, QueryInstance> const& instances,
                         tools::ToolRegistry const& registry, std::string_view system_prompt, ExportOptions options)
    -> std::vector<Json>
{
    auto order = std::vector<Trajectory const*> {};
    for (auto const& t: accepted)
        order.push_back(&t);
    std::ranges::stable_sort(order, {}, &Trajectory::episode_id);

    auto records = std::vector<Json> {};
    for (auto const* traj: order)
    {
        auto it = instances.find(traj->instance_id);
        if (it == instances.end())
            throw Error(ErrorCode::InstanceMismatch,
                        fmt::format("no instance '{}' for trajectory '{}'", traj->instance_id, traj->episode_id));
        records.push_back(export_record(*traj, it->second, registry, system_prompt, options));
    }
    return records;
}

} // namespace trajforge::trajectory

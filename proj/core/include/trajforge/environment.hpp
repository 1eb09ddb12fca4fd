// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <trajforge/error.hpp>
#include <trajforge/json_util.hpp>
#include <trajforge/query_gen.hpp>
#include <trajforge/tool_registry.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trajforge::env
{

enum class ErrorLayer
{
    Structure,
    Toolname,
    Arguments,
    Execution,
};

auto to_string(ErrorLayer layer) -> std::string_view;
auto parse_error_layer(std::string_view name) -> std::optional<ErrorLayer>;

struct ToolCall
{
    std::string tool_name;
    Json arguments = Json::object();

    bool operator==(ToolCall const&) const = default;
};

struct Action
{
    std::string raw;
    /// Free text preceding the call, or the envelope's "thought".
    std::string thought;
    std::optional<ToolCall> parsed;
    /// Why parsing failed; empty when `parsed` is set.
    std::string fault;
};

/// Wire syntax: one JSON object {"tool_name": ..., "arguments": {...}},
/// optionally preceded by a free-text thought, or wrapped as
/// {"thought": ..., "action": {...}}. Anything else leaves `parsed` empty.
auto parse_action(std::string_view raw) -> Action;

/// Inverse of parse_action.
auto format_action(ToolCall const& call, std::string_view thought = {}) -> std::string;

struct Observation
{
    std::string text;
    bool is_error = false;
    /// Absent on errors only when action monitoring is disabled.
    std::optional<ErrorLayer> error_layer;
};

struct ErrorRecord
{
    /// 1-based step number of the faulty action.
    std::size_t step = 0;
    ErrorLayer layer = ErrorLayer::Structure;

    bool operator==(ErrorRecord const&) const = default;
};

struct Monitoring
{
    bool action_monitoring = true;
    bool trajectory_monitoring = true;
};

auto default_system_prompt() -> std::string const&;

struct EnvironmentConfig
{
    std::size_t max_steps = 10;
    bool strict_args = true;
    std::size_t observation_budget = 4096;
    Monitoring monitoring;
    std::string system_prompt = default_system_prompt();
};

enum class EpisodeStatus
{
    Running,
    Finished,
    StepLimitExceeded,
};

struct HistoryEntry
{
    Action action;
    Observation observation;
};

class Environment;

class EpisodeState
{
  public:
    EpisodeState(querygen::QueryInstance instance, tools::FixtureStore store);

    [[nodiscard]] auto instance() const noexcept -> querygen::QueryInstance const& { return _instance; }
    [[nodiscard]] auto step_index() const noexcept -> std::size_t { return _history.size(); }
    [[nodiscard]] auto history() const noexcept -> std::vector<HistoryEntry> const& { return _history; }
    [[nodiscard]] auto error_history() const noexcept -> std::vector<ErrorRecord> const& { return _errors; }
    [[nodiscard]] auto store() const noexcept -> tools::FixtureStore const& { return _store; }
    [[nodiscard]] auto status() const noexcept -> EpisodeStatus { return _status; }
    [[nodiscard]] bool running() const noexcept { return _status == EpisodeStatus::Running; }
    /// Set once the terminal tool succeeded.
    [[nodiscard]] auto final_answer() const noexcept -> std::optional<std::string> const& { return _final; }

  private:
    friend class Environment;

    querygen::QueryInstance _instance;
    tools::FixtureStore _store;
    std::vector<HistoryEntry> _history;
    std::vector<ErrorRecord> _errors;
    EpisodeStatus _status = EpisodeStatus::Running;
    std::optional<std::string> _final;
};

/// Stateless apart from configuration; one instance may serve any number of
/// concurrent episodes. The registry must outlive it.
class Environment
{
  public:
    explicit Environment(tools::ToolRegistry const& registry, EnvironmentConfig config = {});

    [[nodiscard]] auto registry() const noexcept -> tools::ToolRegistry const& { return *_registry; }
    [[nodiscard]] auto config() const noexcept -> EnvironmentConfig const& { return _config; }

    /// Episode-local copy of `store`.
    [[nodiscard]] auto start(querygen::QueryInstance instance, tools::FixtureStore const& store) const
        -> EpisodeState;

    /// Validates and, if valid, executes `action` against the state's store.
    /// Does not append to the history.
    auto classify_and_handle(EpisodeState& state, Action const& action) const -> Observation;

    /// Throws SteppingTerminatedEpisode once the episode is over.
    auto step(EpisodeState& state, std::string_view raw) const -> Observation;

    /// Specs of the instance's available tools, in offered order.
    [[nodiscard]] auto offered_tools(querygen::QueryInstance const& instance) const
        -> std::vector<tools::ToolSpec const*>;

  private:
    struct Outcome
    {
        Observation observation;
        std::optional<std::string> final_answer;
    };

    auto handle(EpisodeState& state, Action const& action) const -> Outcome;
    auto handle_unmonitored(EpisodeState& state, Action const& action) const -> Outcome;
    auto run_tool(tools::ToolSpec const& spec, Json const& args, EpisodeState& state,
                  std::optional<ErrorLayer> layer) const -> Outcome;
    [[nodiscard]] auto render_payload(Json const& payload) const -> std::string;

    tools::ToolRegistry const* _registry;
    EnvironmentConfig _config;
};

} // namespace trajforge::env

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <trajforge/environment.hpp>
#include <trajforge/query_gen.hpp>
#include <trajforge/tool_registry.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trajforge::agents
{

struct ToolInfo
{
    std::string name;
    std::string description;
    std::vector<tools::ParamSpec> params;
    bool is_terminal = false;
    /// JSON-schema object for `params`.
    Json parameters = Json::object();
};

struct Turn
{
    std::string raw;
    std::string observation;
    bool is_error = false;
};

/// Everything a policy may look at. turns.size() equals the episode's step index.
struct ConversationView
{
    std::string system_prompt;
    std::string query_text;
    std::vector<ToolInfo> tools;
    std::vector<Turn> turns;

    [[nodiscard]] auto tool(std::string_view name) const -> ToolInfo const*;
    /// Name of the offered terminal tool; "Finish" if none is flagged.
    [[nodiscard]] auto terminal_name() const -> std::string;
};

auto make_view(env::Environment const& environment, env::EpisodeState const& state) -> ConversationView;

class AgentPolicy
{
  public:
    virtual ~AgentPolicy() = default;
    virtual auto next_action(ConversationView const& view) -> std::string = 0;
};

using AgentFactory = std::function<std::unique_ptr<AgentPolicy>(querygen::QueryInstance const&)>;

/// Replays the template's solution path (switching to a declared alternative
/// when the original tool is not offered), then submits the extracted answer.
/// Progress is read from the view: one solution step per error-free turn.
class OracleAgent final: public AgentPolicy
{
  public:
    OracleAgent(querygen::QueryTemplate tmpl, querygen::QueryInstance instance);

    /// Throws OracleResolutionFailure.
    auto next_action(ConversationView const& view) -> std::string override;

  private:
    querygen::QueryTemplate _template;
    querygen::QueryInstance _instance;
};

/// Factory building an OracleAgent for each instance from its template.
auto oracle_factory(std::map<std::string, querygen::QueryTemplate> templates) -> AgentFactory;

/// Emits script[i] at step i+1; once the script runs out, submits an empty answer.
class ScriptedAgent final: public AgentPolicy
{
  public:
    explicit ScriptedAgent(std::vector<std::string> script);

    auto next_action(ConversationView const& view) -> std::string override;

  private:
    std::vector<std::string> _script;
};

enum class Mutation
{
    CorruptStructure,
    SwapToolname,
    DropRequiredArg,
};

auto to_string(Mutation mutation) -> std::string_view;
auto parse_mutation(std::string_view name) -> std::optional<Mutation>;

/// Applies a mutation to a raw action. DropRequiredArg needs the tool's
/// params from `view`; if there is nothing to drop it corrupts the structure.
auto mutate_action(std::string_view raw, Mutation mutation, ConversationView const& view) -> std::string;

/// Wraps another policy and corrupts its output at chosen (1-based) steps.
/// The inner policy still sees the real history, so it can recover.
class FaultInjectingAgent final: public AgentPolicy
{
  public:
    FaultInjectingAgent(std::unique_ptr<AgentPolicy> inner, std::map<std::size_t, Mutation> faults);

    auto next_action(ConversationView const& view) -> std::string override;

  private:
    std::unique_ptr<AgentPolicy> _inner;
    std::map<std::size_t, Mutation> _faults;
};

} // namespace trajforge::agents

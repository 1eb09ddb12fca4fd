// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <trajforge/environment.hpp>
#include <trajforge/json_util.hpp>
#include <trajforge/query_gen.hpp>
#include <trajforge/tool_registry.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trajforge::trajectory
{

using env::ErrorLayer;
using env::ErrorRecord;

enum class TerminalStatus
{
    Finished,
    StepLimitExceeded,
    Aborted,
};

auto to_string(TerminalStatus status) -> std::string_view;

struct TrajectoryStep
{
    std::string raw;
    std::string observation;
    std::optional<ErrorLayer> error_layer;
    bool is_error = false;

    bool operator==(TrajectoryStep const&) const = default;
};

struct Trajectory
{
    std::string episode_id;
    std::string instance_id;
    std::vector<TrajectoryStep> steps;
    TerminalStatus terminal = TerminalStatus::Aborted;
    std::optional<std::string> final_answer;
    std::vector<ErrorRecord> error_history;
    std::string abort_reason;

    bool operator==(Trajectory const&) const = default;

    [[nodiscard]] auto to_json() const -> Json;
    static auto from_json(Json const& record) -> Trajectory;

    /// Snapshot of an episode. A still-running episode is recorded as aborted.
    static auto from_episode(env::EpisodeState const& state, std::string episode_id) -> Trajectory;
};

enum class MatchMode
{
    Exact,
    Normalized,
    Containment,
};

auto to_string(MatchMode mode) -> std::string_view;
auto parse_match_mode(std::string_view name) -> std::optional<MatchMode>;

bool match_answer(std::string_view final_answer, std::string_view ground_truth, MatchMode mode = MatchMode::Normalized);

/// True iff every error at step t is followed by an error-free step t+1.
bool check_error_recovery(Trajectory const& traj);

enum class VerdictReason
{
    OkClean,
    OkRecovered,
    AnswerMismatch,
    UnrecoveredError,
    NoFinalAnswer,
    Aborted,
};

auto to_string(VerdictReason reason) -> std::string_view;
auto parse_verdict_reason(std::string_view name) -> std::optional<VerdictReason>;

struct FilterVerdict
{
    bool accepted = false;
    VerdictReason reason = VerdictReason::Aborted;

    bool operator==(FilterVerdict const&) const = default;
};

struct FilterOptions
{
    MatchMode mode = MatchMode::Normalized;
    bool trajectory_monitoring = true;
};

/// Throws InstanceMismatch when `instance` is not the trajectory's.
auto filter_trajectory(Trajectory const& traj, querygen::QueryInstance const& instance, FilterOptions options = {})
    -> FilterVerdict;

struct FilterReport
{
    std::size_t total = 0;
    std::size_t accepted = 0;
    std::map<VerdictReason, std::size_t> histogram;

    bool operator==(FilterReport const&) const = default;

    void add(FilterVerdict verdict);
    [[nodiscard]] auto to_json() const -> Json;
    static auto from_json(Json const& document) -> FilterReport;
};

struct ExportOptions
{
    /// Drop erroneous steps (and their feedback) from the chat record.
    bool elide_errors = false;
    FilterOptions filter;
};

/// One chat record: {"episode_id", "instance_id", "messages", "tools"}.
/// Throws UnacceptedTrajectory when the trajectory does not pass the filter.
auto export_record(Trajectory const& traj, querygen::QueryInstance const& instance,
                   tools::ToolRegistry const& registry, std::string_view system_prompt, ExportOptions options = {})
    -> Json;

/// Records in episode-id order. Throws InstanceMismatch for a trajectory
/// whose instance is not in `instances`.
auto export_chat_dataset(std::span<Trajectory const> accepted,
                         std::map<std::string, querygen::QueryInstance> const& instances,
                         tools::ToolRegistry const& registry, std::string_view system_prompt,
                         ExportOptions options = {}) -> std::vector<Json>;

} // namespace trajforge::trajectory

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <trajforge/agents.hpp>
#include <trajforge/environment.hpp>
#include <trajforge/trajectory.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trajforge::exploration
{

using trajectory::FilterReport;
using trajectory::FilterVerdict;
using trajectory::Trajectory;

/// Drives one episode to termination. A throwing policy yields an aborted
/// trajectory instead of propagating.
auto run_episode(env::Environment const& environment, querygen::QueryInstance const& instance,
                 tools::FixtureStore const& store, agents::AgentPolicy& agent, std::string episode_id) -> Trajectory;

struct ExplorationConfig
{
    std::size_t target_accepted = 1;
    std::size_t parallelism = 1;
    /// Maximum episodes to attempt; defaults to 20 x target.
    std::optional<std::size_t> attempt_budget;
    std::uint64_t seed = 0;
    trajectory::FilterOptions filter;
};

struct Attempt
{
    Trajectory trajectory;
    FilterVerdict verdict;
};

struct ExplorationResult
{
    /// Every attempt up to and including the one that reached the target,
    /// in attempt order.
    std::vector<Attempt> attempts;
    std::vector<Trajectory> accepted;
    FilterReport report;
    bool target_reached = false;
};

class TargetUnreachable: public Error
{
  public:
    explicit TargetUnreachable(ExplorationResult partial);

    [[nodiscard]] auto partial() const noexcept -> ExplorationResult const& { return _partial; }

  private:
    ExplorationResult _partial;
};

/// Attempt k explores the instance drawn with derive_seed(seed, k), with
/// replacement. Results depend only on the seed, never on parallelism, as
/// long as the policies are deterministic. Throws TargetUnreachable when
/// the budget runs out first.
auto run_exploration(env::Environment const& environment, std::span<querygen::QueryInstance const> instances,
                     tools::FixtureStore const& store, agents::AgentFactory const& factory,
                     ExplorationConfig const& config) -> ExplorationResult;

/// Instance index explored by attempt `attempt`.
auto attempt_instance(std::uint64_t seed, std::size_t attempt, std::size_t instance_count) -> std::size_t;

} // namespace trajforge::exploration

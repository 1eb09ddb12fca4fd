// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <trajforge/environment.hpp>
#include <trajforge/trajectory.hpp>

#include <string>
#include <vector>

namespace trajforge::testing
{

struct FilterCase
{
    std::string name;
    trajectory::Trajectory trajectory;
    /// Expected verdict with trajectory monitoring on / off.
    trajectory::VerdictReason monitored;
    trajectory::VerdictReason unmonitored;
};

/// The instance every case runs against: "capital of France", answer Paris.
auto suite_instance() -> querygen::QueryInstance const&;

/// Scripted episodes run through the real environment (plus one hand-built
/// trajectory for a failure the environment cannot produce). `config` lets
/// callers switch monitoring; max_steps is forced to 4.
auto build_filter_suite(env::EnvironmentConfig config = {}) -> std::vector<FilterCase>;

} // namespace trajforge::testing

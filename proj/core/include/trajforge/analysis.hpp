// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <trajforge/environment.hpp>
#include <trajforge/trajectory.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trajforge::analysis
{

using env::ErrorLayer;

inline constexpr std::array kLayers { ErrorLayer::Structure, ErrorLayer::Toolname, ErrorLayer::Arguments,
                                      ErrorLayer::Execution };

struct ErrorStats
{
    std::size_t samples = 0;
    std::array<std::size_t, kLayers.size()> per_layer {};

    bool operator==(ErrorStats const&) const = default;

    [[nodiscard]] auto count(ErrorLayer layer) const -> std::size_t { return per_layer[static_cast<std::size_t>(layer)]; }
    [[nodiscard]] auto total_errors() const -> std::size_t;

    /// Errors per sample, all four layers.
    [[nodiscard]] auto mean_errors() const -> double;

    /// Mean of the structure, toolname and arguments counts. This is the
    /// "ALL" column of the error table (25, 1, 24 gives 16.67).
    [[nodiscard]] auto layer_average() const -> double;

    [[nodiscard]] auto to_json() const -> Json;
};

/// Each sampled state contributes one sample; its next action's layer, if faulty.
auto error_taxonomy_stats(std::span<std::optional<ErrorLayer> const> samples) -> ErrorStats;

/// Every step of every trajectory is one sample.
auto error_taxonomy_stats(std::span<trajectory::Trajectory const> trajectories) -> ErrorStats;

/// Throws EmptyReport for a report with no verdicts.
auto pass_rate(trajectory::FilterReport const& report) -> double;

struct StatsRow
{
    std::string label;
    ErrorStats stats;
};

/// Aligned plain-text table: Model, ALL, Structure, Toolname, Arguments, Execution.
auto format_stats_table(std::span<StatsRow const> rows) -> std::string;

} // namespace trajforge::analysis

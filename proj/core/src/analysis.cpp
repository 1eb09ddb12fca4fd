// SPDX-License-Identifier: Apache-2.0
#include <trajforge/analysis.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace trajforge::analysis
{

auto ErrorStats::total_errors() const -> std::size_t
{
    return std::accumulate(per_layer.begin(), per_layer.end(), std::size_t { 0 });
}

auto ErrorStats::mean_errors() const -> double
{
    return samples == 0 ? 0.0 : static_cast<double>(total_errors()) / static_cast<double>(samples);
}

auto ErrorStats::layer_average() const -> double
{
    auto sum = count(ErrorLayer::Structure) + count(ErrorLayer::Toolname) + count(ErrorLayer::Arguments);
    return static_cast<double>(sum) / 3.0;
}

auto ErrorStats::to_json() const -> Json
{
    auto layers = Json::object();
    for (auto layer: kLayers)
        layers[std::string(env::to_string(layer))] = count(layer);
    return Json {
        { "samples", samples },
        { "per_layer", std::move(layers) },
        { "total_errors", total_errors() },
        { "mean_errors", mean_errors() },
        { "layer_average", layer_average() },
    };
}

auto error_taxonomy_stats(std::span<std::optional<ErrorLayer> const> samples) -> ErrorStats
{
    auto stats = ErrorStats {};
    stats.samples = samples.size();
    for (auto const& layer: samples)
        if (layer)
            ++stats.per_layer[static_cast<std::size_t>(*layer)];
    return stats;
}

auto error_taxonomy_stats(std::span<trajectory::Trajectory const> trajectories) -> ErrorStats
{
    auto stats = ErrorStats {};
    for (auto const& traj: trajectories)
    {
        stats.samples += traj.steps.size();
        for (auto const& step: traj.steps)
            if (step.error_layer)
                ++stats.per_layer[static_cast<std::size_t>(*step.error_layer)];
    }
    return stats;
}

auto pass_rate(trajectory::FilterReport const& report) -> double
{
    if (report.total == 0)
        throw Error(ErrorCode::EmptyReport, "pass rate of an empty report is undefined");
    return static_cast<double>(report.accepted) / static_cast<double>(report.total);
}

auto format_stats_table(std::span<StatsRow const> rows) -> std::string
{
    auto header = std::vector<std::string> { "Model", "ALL", "Structure", "Toolname", "Arguments", "Execution" };
    auto cells = std::vector<std::vector<std::string>> { header };
    for (auto const& row: rows)
    {
        auto const& s = row.stats;
        cells.push_back({ row.label, fmt::format("{:.2f}", s.layer_average()),
                          std::to_string(s.count(ErrorLayer::Structure)), std::to_string(s.count(ErrorLayer::Toolname)),
                          std::to_string(s.count(ErrorLayer::Arguments)), std::to_string(s.count(ErrorLayer::Execution)) });
    }

    auto widths = std::vector<std::size_t>(header.size(), 0);
    for (auto const& line: cells)
        for (std::size_t c = 0; c < line.size(); ++c)
            widths[c] = std::max(widths[c], line[c].size());

    auto out = std::string {};
    for (auto const& line: cells)
    {
        auto text = fmt::format("{:<{}}", line[0], widths[0]);
        for (std::size_t c = 1; c < line.size(); ++c)
            text += fmt::format("  {:>{}}", line[c], widths[c]);
        out += text + "\n";
    }
    return out;
}

} // namespace trajforge::analysis

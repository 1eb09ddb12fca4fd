// SPDX-License-Identifier: Apache-2.0
#include <trajforge/exploration.hpp>
#include <trajforge/seed.hpp>

#include <fmt/format.h>

#include <atomic>
#include <mutex>
#include <thread>

namespace trajforge::exploration
{

auto run_episode(env::Environment const& environment, querygen::QueryInstance const& instance,
                 tools::FixtureStore const& store, agents::AgentPolicy& agent, std::string episode_id) -> Trajectory
{
    auto state = environment.start(instance, store);
    std::string abortReason;
    while (state.running())
    {
        std::string raw;
        try
        {
            raw = agent.next_action(agents::make_view(environment, state));
        }
        catch (std::exception const& e)
        {
            abortReason = e.what();
            break;
        }
        environment.step(state, raw);
    }
    auto traj = Trajectory::from_episode(state, std::move(episode_id));
    if (!abortReason.empty())
        traj.abort_reason = fmt::format("{}: {}", to_string(ErrorCode::AgentFailure), abortReason);
    return traj;
}

TargetUnreachable::TargetUnreachable(ExplorationResult partial):
    Error(ErrorCode::TargetUnreachable,
          fmt::format("attempt budget exhausted after {} episodes with {} accepted", partial.attempts.size(),
                      partial.accepted.size())),
    _partial(std::move(partial))
{
}

auto attempt_instance(std::uint64_t seed, std::size_t attempt, std::size_t instance_count) -> std::size_t
{
    auto rng = Rng(derive_seed(seed, { 0xE7, attempt }));
    return draw_index(rng, instance_count);
}

auto run_exploration(env::Environment const& environment, std::span<querygen::QueryInstance const> instances,
                     tools::FixtureStore const& store, agents::AgentFactory const& factory,
                     ExplorationConfig const& config) -> ExplorationResult
{
    if (config.target_accepted == 0)
        throw Error(ErrorCode::InvalidArgument, "target_accepted must be at least 1");
    if (instances.empty())
        throw Error(ErrorCode::InvalidArgument, "no instances to explore");

    auto const budget = config.attempt_budget.value_or(20 * config.target_accepted);
    auto const workers = std::max<std::size_t>(1, config.parallelism);

    // Workers claim attempt numbers in increasing order and stop claiming once
    // enough acceptances are in. Every attempt below the one that reached the
    // target has therefore been claimed, and the prefix is the same for any
    // worker count.
    auto slots = std::vector<std::optional<Attempt>>(budget);
    std::atomic<std::size_t> next { 0 };
    std::atomic<std::size_t> acceptedSoFar { 0 };
    std::mutex failureMutex;
    std::exception_ptr failure;

    auto work = [&] {
        for (;;)
        {
            if (acceptedSoFar.load() >= config.target_accepted)
                return;
            auto k = next.fetch_add(1);
            if (k >= budget)
                return;
            try
            {
                auto const& instance = instances[attempt_instance(config.seed, k, instances.size())];
                auto episodeId = fmt::format("ep-{:06d}", k);
                Trajectory traj;
                try
                {
                    auto agent = factory(instance);
                    traj = run_episode(environment, instance, store, *agent, episodeId);
                }
                catch (std::exception const& e)
                {
                    traj.episode_id = episodeId;
                    traj.instance_id = instance.instance_id;
                    traj.terminal = trajectory::TerminalStatus::Aborted;
                    traj.abort_reason = fmt::format("{}: {}", to_string(ErrorCode::AgentFailure), e.what());
                }
                auto verdict = trajectory::filter_trajectory(traj, instance, config.filter);
                if (verdict.accepted)
                    acceptedSoFar.fetch_add(1);
                slots[k] = Attempt { std::move(traj), verdict };
            }
            catch (...)
            {
                auto lock = std::lock_guard(failureMutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(budget);
                return;
            }
        }
    };

    if (workers == 1)
        work();
    else
    {
        auto pool = std::vector<std::jthread> {};
        for (std::size_t i = 0; i < workers; ++i)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);

    auto result = ExplorationResult {};
    for (auto& slot: slots)
    {
        if (!slot || result.accepted.size() >= config.target_accepted)
            break;
        result.report.add(slot->verdict);
        if (slot->verdict.accepted)
            result.accepted.push_back(slot->trajectory);
        result.attempts.push_back(std::move(*slot));
    }
    result.target_reached = result.accepted.size() >= config.target_accepted;
    if (!result.target_reached)
        throw TargetUnreachable(std::move(result));
    return result;
}

} // namespace trajforge::exploration

// SPDX-License-Identifier: Apache-2.0
#include "filter_suite.hpp"

#include "test_support.hpp"

#include <trajforge/agents.hpp>
#include <trajforge/exploration.hpp>

#include <stdexcept>

namespace trajforge::testing
{

namespace
{
    using trajectory::VerdictReason;

    auto capital(std::string const& country) -> std::string
    {
        return call("get_capital_for_geo_tools", { { "country", country } });
    }

    struct Throwing final: agents::AgentPolicy
    {
        auto next_action(agents::ConversationView const& view) -> std::string override
        {
            if (!view.turns.empty())
                throw std::runtime_error("model endpoint vanished");
            return capital("France");
        }
    };
} // namespace

auto suite_instance() -> querygen::QueryInstance const&
{
    static auto const instance =
        make_instance("suite-france", "Paris", { "get_capital_for_geo_tools", "get_country_info_for_geo_tools", "Finish" });
    return instance;
}

auto build_filter_suite(env::EnvironmentConfig config) -> std::vector<FilterCase>
{
    using V = VerdictReason;
    config.max_steps = 4;
    auto const& corpus = load_corpus();
    auto environment = env::Environment(corpus.registry, config);

    struct Script
    {
        std::string name;
        std::vector<std::string> actions;
        V monitored;
        V unmonitored;
    };
    auto const garbage = std::string("I will now look up the capital");
    auto scripts = std::vector<Script> {
        { "clean_direct_finish", { finish("Paris") }, V::OkClean, V::OkClean },
        { "clean_lookup_then_finish", { capital("France"), finish("Paris") }, V::OkClean, V::OkClean },
        { "clean_normalized_answer", { capital("France"), finish("  paris ") }, V::OkClean, V::OkClean },
        { "recovered_structure", { garbage, capital("France"), finish("Paris") }, V::OkRecovered, V::OkRecovered },
        { "recovered_toolname", { call("get_capital_v2", { { "country", "France" } }), capital("France"), finish("Paris") },
          V::OkRecovered, V::OkRecovered },
        { "recovered_arguments", { call("get_capital_for_geo_tools"), capital("France"), finish("Paris") },
          V::OkRecovered, V::OkRecovered },
        { "recovered_execution", { capital("Atlantis"), capital("France"), finish("Paris") }, V::OkRecovered,
          V::OkRecovered },
        { "recovered_twice_apart", { garbage, capital("France"), garbage, finish("Paris") }, V::OkRecovered,
          V::OkRecovered },
        { "consecutive_errors", { garbage, call("get_capital_v2"), capital("France"), finish("Paris") },
          V::UnrecoveredError, V::UnrecoveredError },
        { "mismatch_clean", { capital("France"), finish("Lyon") }, V::AnswerMismatch, V::OkClean },
        { "mismatch_after_recovery", { garbage, finish("Lyon") }, V::AnswerMismatch, V::OkRecovered },
        { "step_limit_clean", { capital("France"), capital("France"), capital("France"), capital("France") },
          V::NoFinalAnswer, V::NoFinalAnswer },
        { "step_limit_errors", { garbage, garbage, garbage, garbage }, V::NoFinalAnswer, V::NoFinalAnswer },
        { "empty_final_answer", { finish("") }, V::NoFinalAnswer, V::NoFinalAnswer },
    };

    auto cases = std::vector<FilterCase> {};
    for (auto const& s: scripts)
    {
        auto agent = agents::ScriptedAgent(s.actions);
        auto traj = exploration::run_episode(environment, suite_instance(), corpus.store, agent, "ep-" + s.name);
        cases.push_back({ s.name, std::move(traj), s.monitored, s.unmonitored });
    }

    auto throwing = Throwing {};
    cases.push_back({ "aborted_policy",
                      exploration::run_episode(environment, suite_instance(), corpus.store, throwing, "ep-aborted"),
                      V::Aborted, V::Aborted });

    // A finished episode always ends on a successful terminal call, so an
    // error in the last step has to be built by hand.
    auto lastStep = make_trajectory(suite_instance().instance_id,
                                    { ok_step(capital("France")), error_step(env::ErrorLayer::Arguments) },
                                    trajectory::TerminalStatus::Finished, "Paris");
    cases.push_back({ "final_step_error", std::move(lastStep), V::UnrecoveredError, V::UnrecoveredError });
    return cases;
}

} // namespace trajforge::testing

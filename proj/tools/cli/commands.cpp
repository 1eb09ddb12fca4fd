// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <trajforge/analysis.hpp>
#include <trajforge/chat.hpp>
#include <trajforge/exploration.hpp>
#include <trajforge/jsonl.hpp>
#include <trajforge/seed.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cstdlib>
#include <filesystem>
#include <map>

namespace trajforge::cli
{

namespace
{
    using querygen::QueryInstance;
    using querygen::QueryTemplate;
    using trajectory::Trajectory;

    // $TRAJFORGE_DATA_DIR, then the build tree, then the installed copy.
    auto data_file(std::string_view name) -> std::string
    {
        namespace fs = std::filesystem;
        if (auto const* dir = std::getenv("TRAJFORGE_DATA_DIR"); dir != nullptr && *dir != '\0')
            return (fs::path(dir) / name).string();
        auto const build = fs::path(TRAJFORGE_DEFAULT_DATA_DIR) / name;
        auto const installed = fs::path(TRAJFORGE_INSTALLED_DATA_DIR) / name;
        auto ec = std::error_code {};
        return (!fs::exists(build, ec) && fs::exists(installed, ec) ? installed : build).string();
    }

    struct Sources
    {
        std::string tools = data_file("tools.json");
        std::string templates = data_file("templates.json");
        std::string fixtures;
        std::uint64_t fixture_seed = 1;

        void add_to(CLI::App& cmd, bool withTemplates)
        {
            cmd.add_option("--tools", tools, "Tool catalog")->capture_default_str();
            if (withTemplates)
                cmd.add_option("--templates", templates, "Template file")->capture_default_str();
            cmd.add_option("--fixtures", fixtures, "Fixture file (overrides --fixture-seed)");
            cmd.add_option("--fixture-seed", fixture_seed, "Seed for generated fixtures")->capture_default_str();
        }

        [[nodiscard]] auto store() const -> tools::FixtureStore
        {
            return fixtures.empty() ? tools::FixtureStore::generate(fixture_seed) : tools::FixtureStore::load(fixtures);
        }

        [[nodiscard]] auto to_json(bool withTemplates) const -> Json
        {
            auto doc = Json { { "tools", tools }, { "fixture_seed", fixture_seed } };
            if (!fixtures.empty())
                doc["fixtures"] = fixtures;
            if (withTemplates)
                doc["templates"] = templates;
            return doc;
        }
    };

    /// Header record for every output file. Output paths stay out of `config`
    /// so the same run written to two places is byte-identical.
    auto make_meta(std::string_view kind, Json config, std::uint64_t seed) -> Json
    {
        auto hash = fmt::format("{:016x}", fnv1a(config.dump()));
        return Json {
            { "kind", kind },
            { "config", std::move(config) },
            { "config_hash", std::move(hash) },
            { "seed", seed },
        };
    }

    auto load_instances(std::string const& path) -> std::pair<std::vector<QueryInstance>, std::optional<Json>>
    {
        auto doc = read_jsonl(path);
        auto instances = std::vector<QueryInstance> {};
        for (auto const& record: doc.records)
            instances.push_back(QueryInstance::from_json(record));
        return { std::move(instances), std::move(doc.meta) };
    }

    auto index_instances(std::vector<QueryInstance> const& instances) -> std::map<std::string, QueryInstance>
    {
        auto map = std::map<std::string, QueryInstance> {};
        for (auto const& instance: instances)
            map.emplace(instance.instance_id, instance);
        return map;
    }

    auto load_trajectories(std::string const& path) -> std::pair<std::vector<Trajectory>, std::optional<Json>>
    {
        auto doc = read_jsonl(path);
        auto out = std::vector<Trajectory> {};
        for (std::size_t i = 0; i < doc.records.size(); ++i)
        {
            try
            {
                out.push_back(Trajectory::from_json(doc.records[i]));
            }
            catch (Error const& e)
            {
                throw Error(ErrorCode::MalformedDocument, fmt::format("{}: record {}: {}", path, i + 1, e.what()));
            }
        }
        return { std::move(out), std::move(doc.meta) };
    }

    struct FilterFlags
    {
        std::string match_mode = "normalized";
        bool no_trajectory_monitoring = false;

        void add_to(CLI::App& cmd)
        {
            cmd.add_option("--match-mode", match_mode, "Answer matching: exact, normalized or containment")
                ->check(CLI::IsMember({ "exact", "normalized", "containment" }))
                ->capture_default_str();
            cmd.add_flag("--no-trajectory-monitoring", no_trajectory_monitoring,
                         "Accept finished trajectories whatever their answer");
        }

        [[nodiscard]] auto options() const -> trajectory::FilterOptions
        {
            return { *trajectory::parse_match_mode(match_mode), !no_trajectory_monitoring };
        }

        [[nodiscard]] auto to_json() const -> Json
        {
            return { { "match_mode", match_mode }, { "trajectory_monitoring", !no_trajectory_monitoring } };
        }
    };

    auto report_line(trajectory::FilterReport const& report) -> std::string
    {
        auto rate = report.total == 0 ? std::string("n/a") : fmt::format("{:.3f}", analysis::pass_rate(report));
        return fmt::format("total {}  accepted {}  pass_rate {}", report.total, report.accepted, rate);
    }

    // --- gen-fixtures -------------------------------------------------------

    struct GenFixtures
    {
        std::uint64_t seed = 1;
        std::string output;

        void attach(CLI::App& app)
        {
            auto* cmd = app.add_subcommand("gen-fixtures", "Write the seeded fixture tables to a file");
            cmd->add_option("--seed", seed, "Fixture seed")->capture_default_str();
            cmd->add_option("-o,--output", output, "Fixture file")->required();
        }

        auto run(std::ostream& out) const -> int
        {
            auto store = tools::FixtureStore::generate(seed);
            auto doc = store.to_json();
            doc["_meta"] = make_meta("fixtures", { { "seed", seed } }, seed);
            write_text_file(output, doc.dump(1) + "\n");
            out << fmt::format("wrote {} tables to {}\n", store.tables().size(), output);
            return Ok;
        }
    };

    // --- gen-instances ------------------------------------------------------

    struct GenInstances
    {
        Sources sources;
        std::size_t count = 400;
        std::uint64_t seed = 1;
        bool allow_partial = false;
        std::string output;

        void attach(CLI::App& app)
        {
            auto* cmd = app.add_subcommand("gen-instances", "Generate query instances with ground truth");
            sources.add_to(*cmd, true);
            cmd->add_option("--count", count, "Number of unique instances")
                ->check(CLI::Range(std::size_t { 1 }, std::numeric_limits<std::size_t>::max()))
                ->capture_default_str();
            cmd->add_option("--seed", seed, "Generation seed")->capture_default_str();
            cmd->add_flag("--allow-partial", allow_partial, "Keep what was generated if value pools run dry");
            cmd->add_option("-o,--output", output, "Instance file (JSONL)")->required();
        }

        auto run(std::ostream& out, std::ostream& err) const -> int
        {
            auto templates = querygen::load_templates(sources.templates);
            auto registry = tools::ToolRegistry::load_catalog(sources.tools);
            auto store = sources.store();
            auto provider = querygen::PoolValueProvider {};
            auto paraphraser = querygen::IdentityParaphraser {};
            auto ctx = querygen::GenerationContext { provider, paraphraser, registry, store };

            auto status = Ok;
            std::vector<QueryInstance> instances;
            try
            {
                instances = querygen::generate_instances(templates, count, ctx, seed);
            }
            catch (querygen::UniquenessExhausted const& e)
            {
                err << fmt::format("error: {}\n", e.what());
                if (!allow_partial)
                    return DomainError;
                instances = e.partial();
                status = Ok;
            }

            auto config = sources.to_json(true);
            config["fixture_seed"] = store.seed();
            config["count"] = count;
            config["seed"] = seed;
            auto records = std::vector<Json> {};
            for (auto const& instance: instances)
                records.push_back(instance.to_json());
            write_jsonl(output, make_meta("instances", std::move(config), seed), records);
            out << fmt::format("{} unique instances from {} templates (requested {}) -> {}\n", instances.size(),
                               templates.size(), count, output);
            return status;
        }
    };

    // --- explore ------------------------------------------------------------

    struct Explore
    {
        Sources sources;
        FilterFlags filter;
        std::string instances_path;
        std::string agent = "oracle";
        std::size_t target = 500;
        std::size_t parallelism = 1;
        std::size_t budget = 0;
        std::uint64_t seed = 1;
        std::size_t max_steps = 10;
        bool lenient_args = false;
        bool no_action_monitoring = false;
        std::string script;
        std::vector<std::string> faults;
        std::string endpoint;
        std::string model;
        double temperature = chat::kExplorationTemperature;
        std::string output;
        std::string report_path;

        void attach(CLI::App& app)
        {
            auto* cmd = app.add_subcommand("explore", "Run agents on instances until enough trajectories pass");
            sources.add_to(*cmd, true);
            filter.add_to(*cmd);
            cmd->add_option("--instances", instances_path, "Instance file")->required();
            cmd->add_option("--agent", agent, "oracle, scripted, faulty or remote")
                ->check(CLI::IsMember({ "oracle", "scripted", "faulty", "remote" }))
                ->capture_default_str();
            cmd->add_option("--target", target, "Accepted trajectories to collect")
                ->check(CLI::Range(std::size_t { 1 }, std::numeric_limits<std::size_t>::max()))
                ->capture_default_str();
            cmd->add_option("--parallelism", parallelism, "Concurrent episodes")
                ->check(CLI::Range(1, 256))
                ->capture_default_str();
            cmd->add_option("--budget", budget, "Maximum episodes (0 = 20 x target)")->capture_default_str();
            cmd->add_option("--seed", seed, "Sampling seed")->capture_default_str();
            cmd->add_option("--max-steps", max_steps, "Steps per episode")
                ->check(CLI::Range(1, 1000))
                ->capture_default_str();
            cmd->add_flag("--lenient-args", lenient_args, "Ignore unknown tool parameters");
            cmd->add_flag("--no-action-monitoring", no_action_monitoring, "Skip the structure/toolname/arguments checks");
            cmd->add_option("--script", script, "JSON list of raw actions for --agent scripted");
            cmd->add_option("--faults", faults, "step:mutation pairs for --agent faulty, e.g. 1:drop_required_arg")
                ->delimiter(',');
            cmd->add_option("--endpoint", endpoint, "Chat-completions URL for --agent remote");
            cmd->add_option("--model", model, "Model name for --agent remote");
            cmd->add_option("--temperature", temperature, "Sampling temperature for --agent remote")
                ->capture_default_str();
            cmd->add_option("-o,--output", output, "Trajectory file (JSONL)")->required();
            cmd->add_option("--report", report_path, "Also write the filter report as JSON");
        }

        [[nodiscard]] auto fault_map() const -> std::map<std::size_t, agents::Mutation>
        {
            auto map = std::map<std::size_t, agents::Mutation> {};
            for (auto const& item: faults)
            {
                auto colon = item.find(':');
                auto mutation = colon == std::string::npos ? std::nullopt : agents::parse_mutation(item.substr(colon + 1));
                std::size_t step = 0;
                try
                {
                    step = colon == std::string::npos ? 0 : std::stoul(item.substr(0, colon));
                }
                catch (std::exception const&)
                {
                }
                if (!mutation || step == 0)
                    throw Error(ErrorCode::Configuration, fmt::format("bad --faults entry '{}'", item));
                map[step] = *mutation;
            }
            return map;
        }

        [[nodiscard]] auto factory(std::vector<QueryTemplate> const& templates) const -> agents::AgentFactory
        {
            auto byId = std::map<std::string, QueryTemplate> {};
            for (auto const& t: templates)
                byId.emplace(t.template_id, t);

            if (agent == "oracle")
                return agents::oracle_factory(std::move(byId));
            if (agent == "faulty")
            {
                auto oracle = agents::oracle_factory(std::move(byId));
                auto mutations = fault_map();
                return [oracle, mutations](QueryInstance const& instance) -> std::unique_ptr<agents::AgentPolicy> {
                    return std::make_unique<agents::FaultInjectingAgent>(oracle(instance), mutations);
                };
            }
            if (agent == "scripted")
            {
                if (script.empty())
                    throw Error(ErrorCode::Configuration, "--agent scripted needs --script");
                auto doc = parse_document(read_text_file(script), script);
                if (!doc.is_array() || doc.empty())
                    throw Error(ErrorCode::Configuration, "--script must hold a non-empty JSON list of strings");
                auto lines = std::vector<std::string> {};
                for (auto const& item: doc)
                    lines.push_back(item.is_string() ? item.get<std::string>() : item.dump());
                return [lines](QueryInstance const&) -> std::unique_ptr<agents::AgentPolicy> {
                    return std::make_unique<agents::ScriptedAgent>(lines);
                };
            }

            // remote: credentials are checked before anything touches the network
            auto key = chat::credentials_from_env();
            if (!key)
                throw Error(ErrorCode::Configuration,
                            fmt::format("--agent remote needs the {} environment variable", chat::kCredentialsVariable));
            if (endpoint.empty() || model.empty())
                throw Error(ErrorCode::Configuration, "--agent remote needs --endpoint and --model");
            auto settings = chat::ChatSettings { .model = model, .temperature = temperature, .retry = {}, .sleep = {} };
            auto transport = std::make_shared<chat::HttpChatTransport>(endpoint, *key);
            return [transport, settings](QueryInstance const&) -> std::unique_ptr<agents::AgentPolicy> {
                return std::make_unique<chat::RemoteChatAgent>(transport, settings);
            };
        }

        [[nodiscard]] auto config_json() const -> Json
        {
            auto doc = sources.to_json(true);
            doc["instances"] = instances_path;
            doc["agent"] = agent;
            doc["target_accepted"] = target;
            doc["parallelism"] = parallelism;
            doc["attempt_budget"] = budget == 0 ? 20 * target : budget;
            doc["seed"] = seed;
            doc["max_steps"] = max_steps;
            doc["strict_args"] = !lenient_args;
            doc["action_monitoring"] = !no_action_monitoring;
            doc.update(filter.to_json());
            if (agent == "scripted")
                doc["script"] = script;
            if (agent == "faulty")
                doc["faults"] = faults;
            if (agent == "remote")
            {
                doc["endpoint"] = endpoint;
                doc["model"] = model;
                doc["temperature"] = temperature;
            }
            return doc;
        }

        auto run(std::ostream& out, std::ostream& err) const -> int
        {
            auto templates = querygen::load_templates(sources.templates);
            auto agentFactory = factory(templates);
            auto registry = tools::ToolRegistry::load_catalog(sources.tools);
            auto store = sources.store();
            auto [instances, instanceMeta] = load_instances(instances_path);
            if (instanceMeta)
            {
                auto const* recorded = find_path(*instanceMeta, "config.fixture_seed");
                if (recorded != nullptr && recorded->is_number_unsigned() && recorded->get<std::uint64_t>() != store.seed())
                    throw Error(ErrorCode::Configuration,
                                fmt::format("instances were generated with fixture seed {} but this run uses {}",
                                            recorded->get<std::uint64_t>(), store.seed()));
            }

            auto envConfig = env::EnvironmentConfig {};
            envConfig.max_steps = max_steps;
            envConfig.strict_args = !lenient_args;
            envConfig.monitoring = { !no_action_monitoring, !filter.no_trajectory_monitoring };
            auto environment = env::Environment(registry, envConfig);

            auto config = exploration::ExplorationConfig {};
            config.target_accepted = target;
            config.parallelism = parallelism;
            if (budget > 0)
                config.attempt_budget = budget;
            config.seed = seed;
            config.filter = filter.options();

            auto status = Ok;
            exploration::ExplorationResult result;
            try
            {
                result = exploration::run_exploration(environment, instances, store, agentFactory, config);
            }
            catch (exploration::TargetUnreachable const& e)
            {
                err << fmt::format("error: {}\n", e.what());
                result = e.partial();
                status = DomainError;
            }

            auto meta = make_meta("trajectories", config_json(), seed);
            meta["report"] = result.report.to_json();
            auto records = std::vector<Json> {};
            for (auto const& attempt: result.attempts)
                records.push_back(attempt.trajectory.to_json());
            write_jsonl(output, meta, records);
            if (!report_path.empty())
                write_text_file(report_path, result.report.to_json().dump(2) + "\n");

            out << fmt::format("{} attempts -> {}\n{}\n", result.attempts.size(), output, report_line(result.report));
            return status;
        }
    };

    // --- filter -------------------------------------------------------------

    struct Filter
    {
        FilterFlags filter;
        std::string instances_path;
        std::string trajectories_path;
        std::string output;

        void attach(CLI::App& app)
        {
            auto* cmd = app.add_subcommand("filter", "Re-apply the trajectory filter and keep accepted ones");
            filter.add_to(*cmd);
            cmd->add_option("--instances", instances_path, "Instance file")->required();
            cmd->add_option("--trajectories", trajectories_path, "Trajectory file")->required();
            cmd->add_option("-o,--output", output, "Accepted trajectory file");
        }

        auto run(std::ostream& out, std::ostream& err) const -> int
        {
            auto [instances, instanceMeta] = load_instances(instances_path);
            auto byId = index_instances(instances);
            auto [trajectories, trajMeta] = load_trajectories(trajectories_path);
            auto options = filter.options();

            auto report = trajectory::FilterReport {};
            auto accepted = std::vector<Json> {};
            for (auto const& traj: trajectories)
            {
                auto it = byId.find(traj.instance_id);
                if (it == byId.end())
                    throw Error(ErrorCode::InstanceMismatch,
                                fmt::format("trajectory '{}' refers to unknown instance '{}'", traj.episode_id,
                                            traj.instance_id));
                auto verdict = trajectory::filter_trajectory(traj, it->second, options);
                report.add(verdict);
                if (verdict.accepted)
                    accepted.push_back(traj.to_json());
            }

            if (!output.empty())
            {
                auto config = filter.to_json();
                config["instances"] = instances_path;
                config["trajectories"] = trajectories_path;
                auto seed = trajMeta ? trajMeta->value("seed", std::uint64_t { 0 }) : std::uint64_t { 0 };
                auto meta = make_meta("accepted", std::move(config), seed);
                meta["report"] = report.to_json();
                write_jsonl(output, meta, accepted);
            }

            if (trajMeta && trajMeta->contains("report"))
            {
                auto stored = trajectory::FilterReport::from_json((*trajMeta)["report"]);
                if (stored != report)
                    err << "warning: report differs from the one stored in the trajectory file\n";
            }
            out << report.to_json().dump() << "\n" << report_line(report) << "\n";
            return Ok;
        }
    };

    // --- export -------------------------------------------------------------

    struct Export
    {
        FilterFlags filter;
        std::string tools_path = data_file("tools.json");
        std::string instances_path;
        std::string trajectories_path;
        std::string system_prompt_path;
        bool elide_errors = false;
        std::string output;

        void attach(CLI::App& app)
        {
            auto* cmd = app.add_subcommand("export", "Write accepted trajectories as a chat fine-tuning dataset");
            filter.add_to(*cmd);
            cmd->add_option("--tools", tools_path, "Tool catalog")->capture_default_str();
            cmd->add_option("--instances", instances_path, "Instance file")->required();
            cmd->add_option("--trajectories", trajectories_path, "Accepted trajectory file")->required();
            cmd->add_option("--system-prompt", system_prompt_path, "File with a replacement system prompt");
            cmd->add_flag("--elide-errors", elide_errors, "Leave erroneous steps out of the messages");
            cmd->add_option("-o,--output", output, "Dataset file (JSONL)")->required();
        }

        auto run(std::ostream& out, std::ostream& err) const -> int
        {
            auto registry = tools::ToolRegistry::load_catalog(tools_path);
            auto [instances, instanceMeta] = load_instances(instances_path);
            auto [trajectories, trajMeta] = load_trajectories(trajectories_path);
            auto prompt = system_prompt_path.empty() ? env::default_system_prompt() : read_text_file(system_prompt_path);

            auto options = trajectory::ExportOptions { elide_errors, filter.options() };
            auto records = trajectory::export_chat_dataset(trajectories, index_instances(instances), registry, prompt, options);

            // Fine-tuning services reject unknown lines, so the header goes
            // into a sidecar file instead of the dataset itself.
            auto config = filter.to_json();
            config["tools"] = tools_path;
            config["instances"] = instances_path;
            config["trajectories"] = trajectories_path;
            config["elide_errors"] = elide_errors;
            if (!system_prompt_path.empty())
                config["system_prompt"] = system_prompt_path;
            auto seed = trajMeta ? trajMeta->value("seed", std::uint64_t { 0 }) : std::uint64_t { 0 };
            auto meta = make_meta("dataset", std::move(config), seed);
            meta["records"] = records.size();

            write_jsonl(output, std::nullopt, records);
            write_text_file(output + ".meta.json", Json { { "_meta", meta } }.dump(2) + "\n");
            if (records.empty())
                err << "warning: no accepted trajectories; wrote an empty dataset\n";
            out << fmt::format("{} chat records -> {}\n", records.size(), output);
            return Ok;
        }
    };

    // --- stats --------------------------------------------------------------

    struct Stats
    {
        std::vector<std::string> inputs;
        std::vector<std::string> labels;
        bool json = false;

        void attach(CLI::App& app)
        {
            auto* cmd = app.add_subcommand("stats", "Error-layer table over trajectory or sample files");
            cmd->add_option("-i,--input", inputs, "Trajectory file, or samples with an 'error_layer' field")
                ->required();
            cmd->add_option("--label", labels, "Row label per input (default: file name)");
            cmd->add_flag("--json", json, "Also print each row as JSON");
        }

        static auto stats_for(std::string const& path) -> analysis::ErrorStats
        {
            auto doc = read_jsonl(path);
            auto trajectories = std::vector<Trajectory> {};
            auto samples = std::vector<std::optional<env::ErrorLayer>> {};
            for (std::size_t i = 0; i < doc.records.size(); ++i)
            {
                auto const& record = doc.records[i];
                if (record.contains("steps"))
                    trajectories.push_back(Trajectory::from_json(record));
                else if (record.contains("error_layer"))
                {
                    auto const& value = record["error_layer"];
                    auto layer = value.is_null() ? std::nullopt
                                                 : env::parse_error_layer(value.is_string() ? value.get<std::string>() : "");
                    if (!value.is_null() && !layer)
                        throw Error(ErrorCode::MalformedDocument,
                                    fmt::format("{}: record {}: unknown error layer {}", path, i + 1, value.dump()));
                    samples.push_back(layer);
                }
                else
                    throw Error(ErrorCode::MalformedDocument,
                                fmt::format("{}: record {}: neither a trajectory nor a sample", path, i + 1));
            }
            auto stats = analysis::error_taxonomy_stats(std::span<Trajectory const>(trajectories));
            auto fromSamples = analysis::error_taxonomy_stats(std::span<std::optional<env::ErrorLayer> const>(samples));
            stats.samples += fromSamples.samples;
            for (std::size_t k = 0; k < stats.per_layer.size(); ++k)
                stats.per_layer[k] += fromSamples.per_layer[k];
            return stats;
        }

        auto run(std::ostream& out) const -> int
        {
            if (!labels.empty() && labels.size() != inputs.size())
                throw Error(ErrorCode::Configuration, "give one --label per --input");
            auto rows = std::vector<analysis::StatsRow> {};
            for (std::size_t i = 0; i < inputs.size(); ++i)
            {
                auto label = labels.empty() ? std::filesystem::path(inputs[i]).stem().string() : labels[i];
                rows.push_back({ label, stats_for(inputs[i]) });
            }
            out << analysis::format_stats_table(rows);
            if (json)
                for (auto const& row: rows)
                {
                    auto doc = row.stats.to_json();
                    doc["label"] = row.label;
                    out << doc.dump() << "\n";
                }
            return Ok;
        }
    };
} // namespace

auto run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) -> int
{
    auto app = CLI::App("Synthetic tool-use trajectories: instances, exploration, filtering, export, stats.",
                        "trajforge");
    app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");
    app.require_subcommand(1);
    app.set_version_flag("--version", "trajforge 0.3.0");

    auto genFixtures = GenFixtures {};
    auto genInstances = GenInstances {};
    auto explore = Explore {};
    auto filter = Filter {};
    auto exporter = Export {};
    auto stats = Stats {};
    genFixtures.attach(app);
    genInstances.attach(app);
    explore.attach(app);
    filter.attach(app);
    exporter.attach(app);
    stats.attach(app);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        auto code = app.exit(e, out, err);
        return code == 0 ? Ok : UsageError;
    }

    try
    {
        if (app.got_subcommand("gen-fixtures"))
            return genFixtures.run(out);
        if (app.got_subcommand("gen-instances"))
            return genInstances.run(out, err);
        if (app.got_subcommand("explore"))
            return explore.run(out, err);
        if (app.got_subcommand("filter"))
            return filter.run(out, err);
        if (app.got_subcommand("export"))
            return exporter.run(out, err);
        if (app.got_subcommand("stats"))
            return stats.run(out);
    }
    catch (Error const& e)
    {
        err << fmt::format("error: {}\n", e.what());
        return e.code() == ErrorCode::Configuration || e.code() == ErrorCode::InvalidArgument ? UsageError : DomainError;
    }
    catch (std::exception const& e)
    {
        err << fmt::format("error: {}\n", e.what());
        return DomainError;
    }
    return UsageError;
}

} // namespace trajforge::cli

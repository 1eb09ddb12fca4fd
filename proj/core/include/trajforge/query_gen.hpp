// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <trajforge/error.hpp>
#include <trajforge/json_util.hpp>
#include <trajforge/tool_registry.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace trajforge::querygen
{

enum class PlaceholderType
{
    Text,
    Integer,
    Decimal,
    Enum,
};

auto to_string(PlaceholderType type) -> std::string_view;

struct PlaceholderSpec
{
    std::string name;
    PlaceholderType type = PlaceholderType::Text;
    std::string description;
    std::vector<Json> candidate_pool;

    bool operator==(PlaceholderSpec const&) const = default;
};

bool conforms(Json const& value, PlaceholderSpec const& spec);

/// Argument to be looked up by `key` among placeholder values, then prior results.
struct ResolveRef
{
    std::string key;
    bool operator==(ResolveRef const&) const = default;
};

using ArgumentSource = std::variant<Json, ResolveRef>;

struct SolutionStep
{
    std::string tool_name;
    std::map<std::string, ArgumentSource> arguments;

    bool operator==(SolutionStep const&) const = default;
};

/// A tool offered in place of a solution-path tool, with its own argument mapping.
struct Alternative
{
    std::string replaces;
    SolutionStep step;

    bool operator==(Alternative const&) const = default;
};

struct ToolsetPolicy
{
    std::vector<std::string> required_tools;
    std::size_t distractor_count = 0;
    bool include_terminal = true;
    std::vector<Alternative> alternatives;

    bool operator==(ToolsetPolicy const&) const = default;
};

struct QueryTemplate
{
    std::string template_id;
    std::string template_text;
    std::map<std::string, PlaceholderSpec> placeholders;
    std::vector<SolutionStep> solution_path;
    /// Dot/bracket path into the final step's result; may itself contain
    /// `{placeholder}` markers. Empty selects the whole result.
    std::string answer_extraction;
    ToolsetPolicy toolset;

    bool operator==(QueryTemplate const&) const = default;

    [[nodiscard]] auto alternative_for(std::string_view tool) const -> Alternative const*;
};

using PlaceholderValues = std::map<std::string, Json>;

struct QueryInstance
{
    std::string instance_id;
    std::string template_id;
    PlaceholderValues placeholder_values;
    std::string query_text;
    std::vector<std::string> available_tools;
    std::string ground_truth;
    std::uint64_t seed = 0;

    bool operator==(QueryInstance const&) const = default;

    [[nodiscard]] auto to_json() const -> Json;
    static auto from_json(Json const& record) -> QueryInstance;
};

/// `{name}` markers appearing in `text`.
auto template_markers(std::string_view text) -> std::set<std::string>;

auto parse_template(Json const& document) -> QueryTemplate;
auto parse_template(std::string_view text) -> QueryTemplate;
auto serialize_template(QueryTemplate const& tmpl) -> Json;

/// Accepts one template object, an array of them, or {"templates": [...]}.
auto parse_template_set(Json const& document) -> std::vector<QueryTemplate>;
auto load_templates(std::string const& path) -> std::vector<QueryTemplate>;

class ValueProvider
{
  public:
    virtual ~ValueProvider() = default;
    virtual auto provide(QueryTemplate const& tmpl, std::uint64_t seed) -> PlaceholderValues = 0;

    /// Number of distinct value tuples this provider can emit, when known.
    [[nodiscard]] virtual auto combination_count(QueryTemplate const&) const -> std::optional<std::size_t>
    {
        return std::nullopt;
    }
};

/// Draws each placeholder uniformly from its candidate pool (or an override).
class PoolValueProvider final: public ValueProvider
{
  public:
    explicit PoolValueProvider(std::map<std::string, std::vector<Json>> overrides = {});

    auto provide(QueryTemplate const& tmpl, std::uint64_t seed) -> PlaceholderValues override;
    [[nodiscard]] auto combination_count(QueryTemplate const& tmpl) const -> std::optional<std::size_t> override;

  private:
    [[nodiscard]] auto pool_for(PlaceholderSpec const& spec) const -> std::vector<Json> const&;

    std::map<std::string, std::vector<Json>> _overrides;
};

class Paraphraser
{
  public:
    virtual ~Paraphraser() = default;
    virtual auto paraphrase(std::string_view query, std::uint64_t seed) -> std::string = 0;
};

class IdentityParaphraser final: public Paraphraser
{
  public:
    auto paraphrase(std::string_view query, std::uint64_t) -> std::string override { return std::string(query); }
};

/// Throws EmptyPool or TypeMismatch.
auto sample_placeholders(QueryTemplate const& tmpl, ValueProvider& provider, std::uint64_t seed)
    -> PlaceholderValues;

/// Replaces every `{name}` marker; throws MissingValue.
auto substitute_markers(std::string_view text, PlaceholderValues const& values) -> std::string;

auto render_query(QueryTemplate const& tmpl, PlaceholderValues const& values, Paraphraser& paraphraser,
                  std::uint64_t seed = 0) -> std::string;

/// Depth-first search for `key`: at each object the direct key wins, then
/// children in key order; arrays in index order.
auto find_key_depth_first(Json const& node, std::string_view key) -> Json const*;

/// Placeholder values first, then `response_stack` newest-first.
/// Throws UnresolvableArgument.
auto resolve_argument(std::string_view key, PlaceholderValues const& values, std::span<Json const> response_stack)
    -> Json;

auto build_step_arguments(SolutionStep const& step, PlaceholderValues const& values,
                          std::span<Json const> response_stack) -> Json;

/// Applies the (placeholder-expanded) extraction path and canonicalizes.
/// Throws ExtractionPathMissing.
auto extract_answer(QueryTemplate const& tmpl, PlaceholderValues const& values, Json const& final_result)
    -> std::string;

/// Replays the solution path on a private copy of `store`.
auto compute_ground_truth(QueryTemplate const& tmpl, PlaceholderValues const& values,
                          tools::ToolRegistry const& registry, tools::FixtureStore const& store) -> std::string;

/// Required tools (declared order), then seeded distractors, then the terminal tool.
auto assemble_toolset(QueryTemplate const& tmpl, tools::ToolRegistry const& registry, std::uint64_t seed)
    -> std::vector<std::string>;

class UniquenessExhausted: public Error
{
  public:
    UniquenessExhausted(std::size_t requested, std::vector<QueryInstance> partial);

    [[nodiscard]] auto achieved() const noexcept -> std::size_t { return _partial.size(); }
    [[nodiscard]] auto requested() const noexcept -> std::size_t { return _requested; }
    [[nodiscard]] auto partial() const noexcept -> std::vector<QueryInstance> const& { return _partial; }

  private:
    std::size_t _requested;
    std::vector<QueryInstance> _partial;
};

struct GenerationContext
{
    ValueProvider& provider;
    Paraphraser& paraphraser;
    tools::ToolRegistry const& registry;
    tools::FixtureStore const& store;
};

/// Round-robin over templates, skipping templates whose value space is used
/// up. Throws UniquenessExhausted carrying the instances that were produced.
auto generate_instances(std::span<QueryTemplate const> templates, std::size_t count, GenerationContext ctx,
                        std::uint64_t seed) -> std::vector<QueryInstance>;

} // namespace trajforge::querygen

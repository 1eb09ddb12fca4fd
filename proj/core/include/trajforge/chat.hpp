// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <trajforge/agents.hpp>
#include <trajforge/query_gen.hpp>

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace trajforge::chat
{

inline constexpr double kExplorationTemperature = 1.0;
inline constexpr double kEvaluationTemperature = 0.0;
inline constexpr std::string_view kCredentialsVariable = "TRAJFORGE_API_KEY";

/// Value of the credentials environment variable, if set and non-empty.
auto credentials_from_env(std::string_view variable = kCredentialsVariable) -> std::optional<std::string>;

struct TransportResponse
{
    /// 0 when the request never got an HTTP answer.
    int status = 0;
    std::string body;
    std::string error;
};

class ChatTransport
{
  public:
    virtual ~ChatTransport() = default;
    virtual auto post(Json const& request) -> TransportResponse = 0;
};

/// POSTs JSON to a chat-completions endpoint such as
/// https://api.example.com/v1/chat/completions.
class HttpChatTransport final: public ChatTransport
{
  public:
    HttpChatTransport(std::string endpoint, std::string api_key,
                      std::chrono::seconds timeout = std::chrono::seconds(60));

    auto post(Json const& request) -> TransportResponse override;

  private:
    std::string _origin;
    std::string _path;
    std::string _apiKey;
    std::chrono::seconds _timeout;
};

struct RetryPolicy
{
    int max_attempts = 4;
    std::chrono::milliseconds initial_backoff { 250 };
    std::chrono::milliseconds max_backoff { 4000 };
};

/// Connection errors, 408, 429 and 5xx are worth retrying.
bool is_transient(TransportResponse const& response);

/// Sends `request`, retrying transient failures with doubling backoff.
/// Throws TransportFailure once attempts are used up or on a permanent error.
auto post_with_retry(ChatTransport& transport, Json const& request, RetryPolicy const& policy,
                     std::function<void(std::chrono::milliseconds)> const& sleep = {}) -> Json;

struct ChatSettings
{
    std::string model;
    double temperature = kExplorationTemperature;
    RetryPolicy retry;
    /// Test hook; defaults to std::this_thread::sleep_for.
    std::function<void(std::chrono::milliseconds)> sleep;
};

/// System, user, then assistant tool calls paired with tool results.
auto build_chat_request(agents::ConversationView const& view, ChatSettings const& settings) -> Json;

/// The first tool call of the first choice in wire syntax; a reply without a
/// tool call is returned as its prose so the environment rejects it.
auto action_from_response(Json const& response) -> std::string;

class RemoteChatAgent final: public agents::AgentPolicy
{
  public:
    RemoteChatAgent(std::shared_ptr<ChatTransport> transport, ChatSettings settings);

    auto next_action(agents::ConversationView const& view) -> std::string override;

  private:
    std::shared_ptr<ChatTransport> _transport;
    ChatSettings _settings;
};

/// Asks the model for a JSON object with one value per placeholder.
class ChatValueProvider final: public querygen::ValueProvider
{
  public:
    ChatValueProvider(std::shared_ptr<ChatTransport> transport, ChatSettings settings);

    auto provide(querygen::QueryTemplate const& tmpl, std::uint64_t seed) -> querygen::PlaceholderValues override;

  private:
    std::shared_ptr<ChatTransport> _transport;
    ChatSettings _settings;
};

class ChatParaphraser final: public querygen::Paraphraser
{
  public:
    ChatParaphraser(std::shared_ptr<ChatTransport> transport, ChatSettings settings);

    auto paraphrase(std::string_view query, std::uint64_t seed) -> std::string override;

  private:
    std::shared_ptr<ChatTransport> _transport;
    ChatSettings _settings;
};

} // namespace trajforge::chat

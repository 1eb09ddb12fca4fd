// SPDX-License-Identifier: Apache-2.0
#include <trajforge/chat.hpp>
#include <trajforge/environment.hpp>

#include <fmt/format.h>
#include <httplib.h>

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace trajforge::chat
{

auto credentials_from_env(std::string_view variable) -> std::optional<std::string>
{
    auto const* value = std::getenv(std::string(variable).c_str());
    if (value == nullptr || *value == '\0')
        return std::nullopt;
    return std::string(value);
}

// --- transport --------------------------------------------------------------

HttpChatTransport::HttpChatTransport(std::string endpoint, std::string api_key, std::chrono::seconds timeout):
    _apiKey(std::move(api_key)), _timeout(timeout)
{
    auto scheme = endpoint.find("://");
    if (scheme == std::string::npos)
        throw Error(ErrorCode::Configuration, fmt::format("endpoint '{}' needs an http:// or https:// scheme", endpoint));
    auto slash = endpoint.find('/', scheme + 3);
    _origin = endpoint.substr(0, slash);
    _path = slash == std::string::npos ? "/" : endpoint.substr(slash);
}

auto HttpChatTransport::post(Json const& request) -> TransportResponse
{
    auto client = httplib::Client(_origin);
    client.set_connection_timeout(_timeout);
    client.set_read_timeout(_timeout);
    client.set_write_timeout(_timeout);
    auto headers = httplib::Headers {};
    if (!_apiKey.empty())
        headers.emplace("Authorization", "Bearer " + _apiKey);

    auto result = client.Post(_path, headers, request.dump(), "application/json");
    if (!result)
        return { 0, {}, httplib::to_string(result.error()) };
    return { result->status, result->body, {} };
}

bool is_transient(TransportResponse const& response)
{
    return response.status == 0 || response.status == 408 || response.status == 429 || response.status >= 500;
}

auto post_with_retry(ChatTransport& transport, Json const& request, RetryPolicy const& policy,
                     std::function<void(std::chrono::milliseconds)> const& sleep) -> Json
{
    auto backoff = policy.initial_backoff;
    auto const attempts = std::max(1, policy.max_attempts);
    TransportResponse last;
    for (int attempt = 1; attempt <= attempts; ++attempt)
    {
        last = transport.post(request);
        if (last.status >= 200 && last.status < 300)
        {
            auto parsed = Json::parse(last.body, nullptr, false);
            // an unparseable body is returned as a bare string and surfaces
            // as a structure fault downstream
            return parsed.is_discarded() ? Json(last.body) : parsed;
        }
        if (!is_transient(last))
            break;
        if (attempt < attempts)
        {
            if (sleep)
                sleep(backoff);
            else
                std::this_thread::sleep_for(backoff);
            backoff = std::min(backoff * 2, policy.max_backoff);
        }
    }
    auto detail = last.status == 0 ? last.error : fmt::format("HTTP {}: {}", last.status, last.body.substr(0, 200));
    throw Error(ErrorCode::TransportFailure, fmt::format("chat request failed: {}", detail));
}

// --- agent ------------------------------------------------------------------

auto build_chat_request(agents::ConversationView const& view, ChatSettings const& settings) -> Json
{
    auto messages = Json::array();
    messages.push_back({ { "role", "system" }, { "content", view.system_prompt } });
    messages.push_back({ { "role", "user" }, { "content", view.query_text } });
    for (std::size_t i = 0; i < view.turns.size(); ++i)
    {
        auto const& turn = view.turns[i];
        auto action = env::parse_action(turn.raw);
        if (action.parsed)
        {
            auto id = fmt::format("call_{}", i + 1);
            messages.push_back({ { "role", "assistant" },
                                 { "content", action.thought.empty() ? Json(nullptr) : Json(action.thought) },
                                 { "tool_calls",
                                   Json::array({ { { "id", id },
                                                   { "type", "function" },
                                                   { "function",
                                                     { { "name", action.parsed->tool_name },
                                                       { "arguments", action.parsed->arguments.dump() } } } } }) } });
            messages.push_back({ { "role", "tool" }, { "tool_call_id", id }, { "content", turn.observation } });
        }
        else
        {
            messages.push_back({ { "role", "assistant" }, { "content", turn.raw } });
            messages.push_back({ { "role", "user" }, { "content", turn.observation } });
        }
    }

    auto toolsJson = Json::array();
    for (auto const& tool: view.tools)
        toolsJson.push_back({ { "type", "function" },
                              { "function",
                                { { "name", tool.name }, { "description", tool.description }, { "parameters", tool.parameters } } } });

    auto body = Json { { "model", settings.model }, { "temperature", settings.temperature }, { "messages", std::move(messages) } };
    if (!toolsJson.empty())
        body["tools"] = std::move(toolsJson);
    return body;
}

auto action_from_response(Json const& response) -> std::string
{
    if (!response.is_object())
        return response.is_string() ? response.get<std::string>() : response.dump();
    auto const* message = find_path(response, "choices[0].message");
    if (message == nullptr || !message->is_object())
        return response.dump();

    auto content = message->value("content", Json());
    auto prose = content.is_string() ? content.get<std::string>() : std::string {};

    auto const* call = find_path(*message, "tool_calls[0].function");
    if (call == nullptr || !call->is_object())
        return prose;

    auto name = call->value("name", Json());
    auto rawArgs = call->value("arguments", Json::object());
    auto args = rawArgs.is_string() ? Json::parse(rawArgs.get<std::string>(), nullptr, false) : rawArgs;
    if (args.is_discarded())
        args = rawArgs; // stays a string, which the parser rejects
    auto doc = Json { { "tool_name", name }, { "arguments", args } };
    return prose.empty() ? doc.dump() : fmt::format("{}\n{}", trim(prose), doc.dump());
}

RemoteChatAgent::RemoteChatAgent(std::shared_ptr<ChatTransport> transport, ChatSettings settings):
    _transport(std::move(transport)), _settings(std::move(settings))
{
    if (!_transport)
        throw Error(ErrorCode::InvalidArgument, "remote agent needs a transport");
}

auto RemoteChatAgent::next_action(agents::ConversationView const& view) -> std::string
{
    auto response = post_with_retry(*_transport, build_chat_request(view, _settings), _settings.retry, _settings.sleep);
    return action_from_response(response);
}

// --- optional generation helpers -------------------------------------------

namespace
{
    auto completion_text(ChatTransport& transport, ChatSettings const& settings, std::string prompt,
                         std::uint64_t seed) -> std::string
    {
        auto body = Json {
            { "model", settings.model },
            { "temperature", settings.temperature },
            { "seed", seed },
            { "messages", Json::array({ { { "role", "user" }, { "content", std::move(prompt) } } }) },
        };
        auto response = post_with_retry(transport, body, settings.retry, settings.sleep);
        auto const* content = find_path(response, "choices[0].message.content");
        if (content == nullptr || !content->is_string())
            throw Error(ErrorCode::MalformedResponse, "chat response has no message content");
        return content->get<std::string>();
    }
} // namespace

ChatValueProvider::ChatValueProvider(std::shared_ptr<ChatTransport> transport, ChatSettings settings):
    _transport(std::move(transport)), _settings(std::move(settings))
{
}

auto ChatValueProvider::provide(querygen::QueryTemplate const& tmpl, std::uint64_t seed) -> querygen::PlaceholderValues
{
    auto meta = Json::object();
    for (auto const& [name, spec]: tmpl.placeholders)
        meta[name] = { { "type", querygen::to_string(spec.type) }, { "description", spec.description } };
    auto prompt = fmt::format("Query template:\n{}\n\nPlaceholders:\n{}\n\n"
                              "Reply with one JSON object mapping every placeholder name to a realistic value "
                              "of the given type. No other text.",
                              tmpl.template_text, meta.dump(2));
    auto text = completion_text(*_transport, _settings, std::move(prompt), seed);

    auto open = text.find('{');
    auto close = text.rfind('}');
    auto doc = open == std::string::npos || close == std::string::npos || close < open
                   ? Json(nullptr)
                   : Json::parse(text.substr(open, close - open + 1), nullptr, false);
    if (!doc.is_object())
        throw Error(ErrorCode::MalformedResponse, "placeholder reply is not a JSON object");
    auto values = querygen::PlaceholderValues {};
    for (auto const& [k, v]: doc.items())
        values.emplace(k, v);
    return values;
}

ChatParaphraser::ChatParaphraser(std::shared_ptr<ChatTransport> transport, ChatSettings settings):
    _transport(std::move(transport)), _settings(std::move(settings))
{
}

auto ChatParaphraser::paraphrase(std::string_view query, std::uint64_t seed) -> std::string
{
    auto prompt = fmt::format("Rewrite this request in different words. Keep every name, number and value "
                              "exactly as written. Reply with the rewritten request only.\n\n{}",
                              query);
    auto text = trim(completion_text(*_transport, _settings, std::move(prompt), seed));
    return text.empty() ? std::string(query) : text;
}

} // namespace trajforge::chat

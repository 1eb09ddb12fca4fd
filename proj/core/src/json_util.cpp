// SPDX-License-Identifier: Apache-2.0
#include <trajforge/error.hpp>
#include <trajforge/json_util.hpp>

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace trajforge
{

namespace
{
    bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
} // namespace

auto trim(std::string_view text) -> std::string
{
    auto begin = text.find_first_not_of(" \t\r\n\f\v");
    if (begin == std::string_view::npos)
        return {};
    auto end = text.find_last_not_of(" \t\r\n\f\v");
    return std::string(text.substr(begin, end - begin + 1));
}

auto to_lower(std::string_view text) -> std::string
{
    auto out = std::string(text);
    for (auto& c: out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

auto normalize_text(std::string_view text) -> std::string
{
    auto out = std::string {};
    out.reserve(text.size());
    auto pendingSpace = false;
    for (char c: text)
    {
        if (is_space(c))
        {
            pendingSpace = !out.empty();
            continue;
        }
        if (pendingSpace)
        {
            out.push_back(' ');
            pendingSpace = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

auto canonical_text(Json const& value) -> std::string
{
    if (value.is_string())
        return trim(value.get_ref<std::string const&>());
    return trim(value.dump());
}

auto display_text(Json const& value) -> std::string
{
    if (value.is_string())
        return value.get<std::string>();
    return value.dump();
}

auto find_path(Json const& root, std::string_view path) -> Json const*
{
    auto const* node = &root;
    std::size_t pos = 0;
    while (pos < path.size())
    {
        if (path[pos] == '.')
        {
            ++pos;
            continue;
        }
        if (path[pos] == '[')
        {
            auto close = path.find(']', pos);
            if (close == std::string_view::npos)
                return nullptr;
            auto digits = path.substr(pos + 1, close - pos - 1);
            std::size_t index = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
            if (ec != std::errc {} || ptr != digits.data() + digits.size() || !node->is_array()
                || index >= node->size())
                return nullptr;
            node = &(*node)[index];
            pos = close + 1;
            continue;
        }
        auto end = path.find_first_of(".[", pos);
        auto key = std::string(path.substr(pos, end == std::string_view::npos ? path.size() - pos : end - pos));
        if (!node->is_object())
            return nullptr;
        auto it = node->find(key);
        if (it == node->end())
            return nullptr;
        node = &*it;
        pos = end == std::string_view::npos ? path.size() : end;
    }
    return node;
}

auto parse_document(std::string_view text, std::string_view what) -> Json
{
    try
    {
        return Json::parse(text.begin(), text.end());
    }
    catch (Json::parse_error const& e)
    {
        throw Error(ErrorCode::MalformedDocument, fmt::format("{}: {}", what, e.what()));
    }
}

auto read_text_file(std::string const& path) -> std::string
{
    auto in = std::ifstream(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, fmt::format("cannot open '{}' for reading", path));
    auto buffer = std::ostringstream {};
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(std::string const& path, std::string_view contents)
{
    auto out = std::ofstream(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::Io, fmt::format("cannot open '{}' for writing", path));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out)
        throw Error(ErrorCode::Io, fmt::format("failed writing '{}'", path));
}

} // namespace trajforge

// SPDX-License-Identifier: Apache-2.0
#include <trajforge/error.hpp>
#include <trajforge/jsonl.hpp>

#include <fmt/format.h>

namespace trajforge
{

auto parse_jsonl(std::string_view text, std::string const& source) -> JsonlDocument
{
    auto doc = JsonlDocument {};
    std::size_t lineNo = 0;
    std::size_t pos = 0;
    while (pos < text.size())
    {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++lineNo;
        if (line.empty())
            continue;

        auto value = Json::parse(line, nullptr, false);
        if (value.is_discarded() || !value.is_object())
            throw Error(ErrorCode::MalformedDocument, fmt::format("{}:{}: not a JSON object", source, lineNo));
        if (value.contains("_meta"))
        {
            if (doc.meta || !doc.records.empty())
                throw Error(ErrorCode::MalformedDocument,
                            fmt::format("{}:{}: metadata record must be the first line", source, lineNo));
            doc.meta = std::move(value["_meta"]);
            continue;
        }
        doc.records.push_back(std::move(value));
    }
    return doc;
}

auto read_jsonl(std::string const& path) -> JsonlDocument
{
    return parse_jsonl(read_text_file(path), path);
}

auto format_jsonl(std::optional<Json> const& meta, std::span<Json const> records) -> std::string
{
    auto out = std::string {};
    if (meta)
        out += Json { { "_meta", *meta } }.dump() + "\n";
    for (auto const& record: records)
        out += record.dump() + "\n";
    return out;
}

void write_jsonl(std::string const& path, std::optional<Json> const& meta, std::span<Json const> records)
{
    write_text_file(path, format_jsonl(meta, records));
}

} // namespace trajforge

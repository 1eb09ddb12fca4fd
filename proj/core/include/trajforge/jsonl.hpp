// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <trajforge/json_util.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trajforge
{

/// A JSONL file whose first line may be a {"_meta": {...}} header.
struct JsonlDocument
{
    std::optional<Json> meta;
    std::vector<Json> records;
};

/// Blank lines are skipped. Throws MalformedDocument naming the 1-based line.
auto parse_jsonl(std::string_view text, std::string const& source = "<input>") -> JsonlDocument;
auto read_jsonl(std::string const& path) -> JsonlDocument;

auto format_jsonl(std::optional<Json> const& meta, std::span<Json const> records) -> std::string;
void write_jsonl(std::string const& path, std::optional<Json> const& meta, std::span<Json const> records);

} // namespace trajforge

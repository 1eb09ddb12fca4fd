// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace trajforge
{

// std::map-backed: object keys always serialize in sorted order.
using Json = nlohmann::json;

auto trim(std::string_view text) -> std::string;

/// Trim, collapse internal whitespace runs to one space, ASCII case-fold.
auto normalize_text(std::string_view text) -> std::string;

auto to_lower(std::string_view text) -> std::string;

/// Canonical answer text: strings bare, scalars via JSON, containers as
/// sorted-key compact JSON; surrounding whitespace trimmed.
auto canonical_text(Json const& value) -> std::string;

/// Text used when a value is spliced into prose (strings unquoted).
auto display_text(Json const& value) -> std::string;

/// Walks a dot/bracket path such as `results[0].year`. An empty path yields
/// the value itself. Returns nullptr when any segment is missing.
auto find_path(Json const& root, std::string_view path) -> Json const*;

/// Parses `text` as JSON; throws Error{MalformedDocument} naming `what`.
auto parse_document(std::string_view text, std::string_view what) -> Json;

auto read_text_file(std::string const& path) -> std::string;
void write_text_file(std::string const& path, std::string_view contents);

} // namespace trajforge

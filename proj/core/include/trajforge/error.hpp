// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trajforge
{

enum class ErrorCode
{
    MalformedDocument,
    UnknownPlaceholderMarker,
    UnusedPlaceholderSpec,
    EmptySolutionPath,
    EmptyPool,
    TypeMismatch,
    MissingValue,
    UnresolvableArgument,
    ToolExecutionFailure,
    ExtractionPathMissing,
    UnknownRequiredTool,
    InsufficientDistractors,
    UniquenessExhausted,
    DuplicateToolName,
    UnknownTool,
    SteppingTerminatedEpisode,
    OracleResolutionFailure,
    TransportFailure,
    MalformedResponse,
    AgentFailure,
    TargetUnreachable,
    InstanceMismatch,
    UnacceptedTrajectory,
    EmptyReport,
    InvalidArgument,
    Io,
    Configuration,
};

auto to_string(ErrorCode code) -> std::string_view;

/// One finding inside an error that can report several at once (template validation).
struct Issue
{
    ErrorCode code;
    std::string subject;

    bool operator==(Issue const&) const = default;
};

class Error: public std::runtime_error
{
  public:
    Error(ErrorCode code, std::string const& message, std::vector<Issue> issues = {});

    [[nodiscard]] auto code() const noexcept -> ErrorCode { return _code; }
    [[nodiscard]] auto issues() const noexcept -> std::vector<Issue> const& { return _issues; }

    [[nodiscard]] bool has_issue(ErrorCode code, std::string_view subject) const;

  private:
    ErrorCode _code;
    std::vector<Issue> _issues;
};

} // namespace trajforge

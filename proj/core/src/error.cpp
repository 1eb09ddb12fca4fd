// SPDX-License-Identifier: Apache-2.0
#include <trajforge/error.hpp>

#include <algorithm>

namespace trajforge
{

auto to_string(ErrorCode code) -> std::string_view
{
    switch (code)
    {
        case ErrorCode::MalformedDocument: return "MalformedDocument";
        case ErrorCode::UnknownPlaceholderMarker: return "UnknownPlaceholderMarker";
        case ErrorCode::UnusedPlaceholderSpec: return "UnusedPlaceholderSpec";
        case ErrorCode::EmptySolutionPath: return "EmptySolutionPath";
        case ErrorCode::EmptyPool: return "EmptyPool";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::MissingValue: return "MissingValue";
        case ErrorCode::UnresolvableArgument: return "UnresolvableArgument";
        case ErrorCode::ToolExecutionFailure: return "ToolExecutionFailure";
        case ErrorCode::ExtractionPathMissing: return "ExtractionPathMissing";
        case ErrorCode::UnknownRequiredTool: return "UnknownRequiredTool";
        case ErrorCode::InsufficientDistractors: return "InsufficientDistractors";
        case ErrorCode::UniquenessExhausted: return "UniquenessExhausted";
        case ErrorCode::DuplicateToolName: return "DuplicateToolName";
        case ErrorCode::UnknownTool: return "UnknownTool";
        case ErrorCode::SteppingTerminatedEpisode: return "SteppingTerminatedEpisode";
        case ErrorCode::OracleResolutionFailure: return "OracleResolutionFailure";
        case ErrorCode::TransportFailure: return "TransportFailure";
        case ErrorCode::MalformedResponse: return "MalformedResponse";
        case ErrorCode::AgentFailure: return "AgentFailure";
        case ErrorCode::TargetUnreachable: return "TargetUnreachable";
        case ErrorCode::InstanceMismatch: return "InstanceMismatch";
        case ErrorCode::UnacceptedTrajectory: return "UnacceptedTrajectory";
        case ErrorCode::EmptyReport: return "EmptyReport";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Configuration: return "Configuration";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, std::string const& message, std::vector<Issue> issues):
    std::runtime_error(message), _code(code), _issues(std::move(issues))
{
}

bool Error::has_issue(ErrorCode code, std::string_view subject) const
{
    return std::ranges::any_of(_issues, [&](Issue const& issue) {
        return issue.code == code && issue.subject == subject;
    });
}

} // namespace trajforge

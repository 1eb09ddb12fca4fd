// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>

namespace trajforge::cli
{

enum ExitCode : int
{
    Ok = 0,
    DomainError = 1,
    UsageError = 2,
};

/// Entry point of the `trajforge` binary: gen-fixtures, gen-instances,
/// explore, filter, export, stats.
auto run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) -> int;

} // namespace trajforge::cli

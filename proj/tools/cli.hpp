#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apfree::cli {

enum ExitCode : int
{
    ok = 0,
    verification_failed = 1,
    usage_error = 2,
    unresolved = 3,
};

/// Environment variable naming the default cache file.
inline constexpr const char * cache_env = "APFREE_CACHE";

/// Runs one command; args excludes the program name.
auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

} // namespace apfree::cli

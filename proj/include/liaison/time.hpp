#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace liaison {

using Timestamp = std::chrono::sys_seconds;

// Injectable time source. Services read "now" through this so expiry and
// ordering can be driven deterministically in tests.
using Clock = std::function<Timestamp()>;

Clock system_clock();

/// Formats as RFC 3339 UTC with second precision, e.g. "2024-01-01T00:00:00Z".
std::string to_rfc3339(Timestamp t);

/// Accepts exactly the shape produced by to_rfc3339.
std::optional<Timestamp> parse_rfc3339(std::string_view text);

}  // namespace liaison

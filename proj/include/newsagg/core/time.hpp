#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>

namespace newsagg::core {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

class TimeParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// "2020-05-14T10:00:00Z", with ".123" when the milliseconds are non-zero.
std::string to_rfc3339(Timestamp t);

// Accepts RFC 3339 date-times with 'Z' or a numeric offset and optional
// fractional seconds (truncated to milliseconds), or a bare "YYYY-MM-DD"
// meaning midnight UTC.
Timestamp parse_rfc3339(std::string_view s);

Timestamp now_utc();

}  // namespace newsagg::core

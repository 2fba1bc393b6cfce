#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace streamint {

// Accepts epoch seconds ("1696159800") or ISO-8601 UTC
// ("2023-10-01T12:10:00", optional trailing 'Z', fractional seconds ignored).
std::optional<std::int64_t> parse_timestamp(const std::string& text);

// ISO-8601 UTC with trailing 'Z'.
std::string format_timestamp(std::int64_t epoch_seconds);

} // namespace streamint

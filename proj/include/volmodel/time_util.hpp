#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace volmodel {

// Timestamps are UTC epoch seconds. Parsing/formatting is hand-rolled
// (days-from-civil arithmetic) so results do not depend on the host zone
// database or libc quirks.

/// Parses `YYYY-MM-DDTHH:MM:SSZ`; throws ParseError on anything else.
std::int64_t parse_iso8601_utc(std::string_view text);

/// Formats epoch seconds back to `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601_utc(std::int64_t epoch_seconds);

/// Floor division that is exact for negative numerators too.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace volmodel

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace mcport {

/// Calendar day. Trading calendars are sequences of these.
using Date = std::chrono::sys_days;

/// Parses a strict `YYYY-MM-DD` date. Returns nullopt on malformed or
/// nonexistent dates (e.g. 2021-02-30).
std::optional<Date> parse_date(std::string_view text);

/// Like parse_date but throws std::invalid_argument naming `what`.
Date parse_date_or_throw(std::string_view text, std::string_view what);

std::string format_date(Date d);

} // namespace mcport

#pragma once

// Minimal RFC 4180 reading and writing shared by the ingest and report code.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gcproi::csv {

/// Splits one record. Quoted fields may contain commas and doubled quotes;
/// embedded newlines are not supported. Returns nullopt on an unterminated
/// quote.
std::optional<std::vector<std::string>> split(std::string_view line);

/// Quotes a field when it holds a comma, quote, or leading/trailing space.
std::string quote(std::string_view field);

std::string join(const std::vector<std::string>& fields);

std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

/// Shortest representation that reads back to the same double.
std::string shortest(double v);

/// Fixed-point with the given number of decimals; "-0.000" prints as "0.000".
std::string fixed(double v, int decimals);

} // namespace gcproi::csv

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aggbench::csv {

using Row = std::vector<std::string>;

// RFC-4180 reader: quoted fields may contain the delimiter, doubled quotes and
// line breaks. Both LF and CRLF line endings are accepted. Blank lines are
// skipped. Throws Error(ParseError) on an unterminated quoted field.
std::vector<Row> read(std::istream& in, char delimiter = ',');

// Quote a field when it contains the delimiter, a quote or a line break.
std::string escape(std::string_view field, char delimiter = ',');

// Shortest decimal representation that round-trips to the same double.
// NaN is written as "NaN".
std::string format_double(double value);

// Strict real-number parse of a whole (whitespace-trimmed) cell.
std::optional<double> parse_double(std::string_view cell);

std::string_view trim(std::string_view s) noexcept;

} // namespace aggbench::csv

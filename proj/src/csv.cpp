#include "aggbench/csv.hpp"
#include "aggbench/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>

namespace aggbench::csv {

std::vector<Row> read(std::istream& in, char delimiter)
{
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    // UTF-8 byte order mark
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0)
        text.erase(0, 3);

    std::vector<Row> rows;
    Row row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        bool blank = row.size() == 1 && trim(row.front()).empty();
        if (!blank)
            rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n')
                    ++line;
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && !field_started && trim(field).empty()) {
            field.clear();
            in_quotes = true;
            field_started = true;
        } else if (c == delimiter) {
            end_field();
        } else if (c == '\r') {
            if (i + 1 < text.size() && text[i + 1] == '\n')
                continue;
            end_row();
            ++line;
        } else if (c == '\n') {
            end_row();
            ++line;
        } else {
            field.push_back(c);
            if (c != ' ' && c != '\t')
                field_started = true;
        }
    }
    if (in_quotes)
        throw Error(ErrorCode::ParseError, "unterminated quoted field near line " + std::to_string(line));
    if (field_started || !field.empty() || !row.empty())
        end_row();
    return rows;
}

std::string escape(std::string_view field, char delimiter)
{
    bool needs_quotes = field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string_view::npos;
    if (!needs_quotes)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_double(double value)
{
    if (std::isnan(value))
        return "NaN";
    std::array<char, 64> buffer{};
    auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), end);
}

std::string_view trim(std::string_view s) noexcept
{
    constexpr std::string_view whitespace = " \t\r\n";
    auto first = s.find_first_not_of(whitespace);
    if (first == std::string_view::npos)
        return {};
    auto last = s.find_last_not_of(whitespace);
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view cell)
{
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+')
        cell.remove_prefix(1);
    if (cell.empty())
        return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        return std::nullopt;
    return value;
}

} // namespace aggbench::csv

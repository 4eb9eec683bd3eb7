#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aggbench/csv.hpp"
#include "aggbench/error.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace aggbench;

namespace {
std::vector<csv::Row> read(const std::string& text, char delimiter = ',')
{
    std::istringstream in(text);
    return csv::read(in, delimiter);
}
} // namespace

TEST_CASE("quoted fields keep delimiters, quotes and line breaks")
{
    auto rows = read("a,b,c\n\"x,1\",\"say \"\"hi\"\"\",\"two\nlines\"\r\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "x,1");
    CHECK(rows[1][1] == "say \"hi\"");
    CHECK(rows[1][2] == "two\nlines");
}

TEST_CASE("semicolon delimiter, CRLF endings, blank lines and a missing final newline")
{
    auto rows = read("a;b\r\n1;2\r\n\r\n3;4", ';');
    REQUIRE(rows.size() == 3);
    CHECK(rows[2] == csv::Row{"3", "4"});
}

TEST_CASE("empty trailing field is kept")
{
    auto rows = read("a,b\n1,\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[1] == csv::Row{"1", ""});
}

TEST_CASE("unterminated quote is a parse error")
{
    try {
        read("a,b\n\"oops,1\n");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
    }
}

TEST_CASE("parse_double accepts whole numeric cells only")
{
    CHECK(csv::parse_double(" 1.5 ") == 1.5);
    CHECK(csv::parse_double("+2e3") == 2000.0);
    CHECK(csv::parse_double("-0.25") == -0.25);
    CHECK_FALSE(csv::parse_double("1.5x"));
    CHECK_FALSE(csv::parse_double("abc"));
    CHECK_FALSE(csv::parse_double(""));
}

TEST_CASE("format_double round-trips exactly")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) / 3.0;
        CHECK(*csv::parse_double(csv::format_double(v)) == v);
    }
    CHECK(csv::format_double(0.5) == "0.5");
    CHECK(csv::format_double(std::nan("")) == "NaN");
    CHECK(*csv::parse_double(csv::format_double(std::numeric_limits<double>::denorm_min())) == std::numeric_limits<double>::denorm_min());
}

TEST_CASE("escape quotes only when needed")
{
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
    CHECK(csv::escape("say \"x\"") == "\"say \"\"x\"\"\"");
    auto rows = read(csv::escape("a,\"b\"\nc") + ",z\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == "a,\"b\"\nc");
}

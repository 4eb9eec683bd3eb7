#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aggbench/error.hpp"
#include "aggbench/ingest.hpp"
#include "aggbench/log.hpp"

#include <filesystem>
#include <fstream>

using namespace aggbench;

namespace {

ErrorCode error_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an aggbench::Error");
    return ErrorCode::ParseError;
}

DatasetConfig config_with(std::optional<std::string> response, std::vector<std::string> drop = {})
{
    DatasetConfig c;
    c.response_column = std::move(response);
    c.drop_columns = std::move(drop);
    return c;
}

} // namespace

TEST_CASE("textual column removed, id dropped by config")
{
    WarningCapture capture;
    auto d = parse_dataset("id,a,label,b\n1,0.5,red,3\n2,0.7,blue,4\n3,0.1,red,5\n", config_with(std::nullopt, {"id"}));
    CHECK(d.k() == 2);
    CHECK(d.n() == 3);
    CHECK(d.column_names == std::vector<std::string>{"a", "b"});
    CHECK_FALSE(d.response);
    REQUIRE(capture.messages().size() == 1);
    CHECK(capture.messages()[0].find("label") != std::string::npos);
}

TEST_CASE("row with an empty response cell is removed")
{
    WarningCapture capture;
    auto d = parse_dataset("a,b,y\n1,2,3\n4,5,\n7,8,9\n", config_with("y"));
    CHECK(d.n() == 2);
    REQUIRE(d.response);
    CHECK((*d.response)(0) == 3);
    CHECK((*d.response)(1) == 9);
    CHECK(d.source_rows == std::vector<std::size_t>{0, 2});
    CHECK(d.source_row_count == 3);
}

TEST_CASE("all missing markers are recognised")
{
    WarningCapture capture;
    auto d = parse_dataset("a,b\n1,2\nNA,2\n1,NaN\n?,3\n,4\n5,6\n", {});
    CHECK(d.n() == 2);
    CHECK(d.inputs(1, 0) == 5);
}

TEST_CASE("numeric-ness ignores missing cells")
{
    WarningCapture capture;
    auto d = parse_dataset("a,b,c\n1,?,5\n?,2,6\n3,4,7\n", {});
    CHECK(d.k() == 3);
    CHECK(d.n() == 1);
    // a single text cell makes the column non-numeric, leaving one column
    CHECK(error_of([] { parse_dataset("a,b\n1,x\n?,2\n3,4\n", {}); }) == ErrorCode::EmptyDataset);
}

TEST_CASE("every input column textual gives EmptyDataset")
{
    WarningCapture capture;
    CHECK(error_of([] { parse_dataset("a,b,y\nx,y,1\nz,w,2\n", config_with("y")); }) == ErrorCode::EmptyDataset);
}

TEST_CASE("errors")
{
    WarningCapture capture;
    DatasetConfig missing;
    missing.path = "/nonexistent/file.csv";
    CHECK(error_of([&] { load_csv(missing); }) == ErrorCode::FileNotFound);
    CHECK(error_of([] { parse_dataset("a,b\n1,2,3\n", {}); }) == ErrorCode::ParseError);
    CHECK(error_of([] { parse_dataset("a,b,y\n1,2,3\n", config_with("nope")); }) == ErrorCode::ParseError);
    CHECK(error_of([] { parse_dataset("a,b,y\n1,2,oops\n", config_with("y")); }) == ErrorCode::ParseError);
    CHECK(error_of([] { parse_dataset("a,b,y\n1,2,3\n", config_with("y", {"y"})); }) == ErrorCode::InvalidConfig);
    CHECK(error_of([] { parse_dataset("a,b\n", {}); }) == ErrorCode::EmptyDataset);
    CHECK(error_of([] { parse_dataset("", {}); }) == ErrorCode::EmptyDataset);
}

TEST_CASE("headerless files and index references")
{
    DatasetConfig c;
    c.has_header = false;
    c.response_column = "2";
    c.delimiter = ';';
    auto d = parse_dataset("1;2;3\n4;5;6\n", c);
    CHECK(d.k() == 2);
    CHECK(d.column_names == std::vector<std::string>{"x1", "x2"});
    CHECK((*d.response)(1) == 6);
}

TEST_CASE("input column selection ignores other columns")
{
    DatasetConfig c;
    c.input_columns = {"b", "a"};
    auto d = parse_dataset("a,junk,b\n1,,2\n3,x,4\n", c);
    CHECK(d.n() == 2);
    CHECK(d.column_names == std::vector<std::string>{"a", "b"});
    c.input_columns = {"a", "zzz"};
    CHECK(error_of([&] { parse_dataset("a,b\n1,2\n", c); }) == ErrorCode::ArityMismatch);
}

TEST_CASE("load_csv is deterministic")
{
    const auto path = std::filesystem::temp_directory_path() / "aggbench_ingest_det.csv";
    {
        std::ofstream out(path);
        out << "id,x,z,y\n1,0.3,5,1\n2,0.1,?,2\n3,0.9,7,3\n4,0.4,1,4\n";
    }
    DatasetConfig c;
    c.path = path;
    c.response_column = "y";
    c.drop_columns = {"id"};
    WarningCapture capture;
    auto a = load_csv(c);
    auto b = load_csv(c);
    CHECK(a.inputs == b.inputs);
    CHECK(*a.response == *b.response);
    CHECK(a.column_names == b.column_names);
    // 4 rows minus the one with a missing value
    CHECK(a.n() == 3);
    std::filesystem::remove(path);
}

TEST_CASE("min-max scaling")
{
    Dataset d;
    d.inputs.resize(3, 3);
    d.inputs << 2, 0, 5,
                4, 1, 5,
                6, 0, 5;
    d.column_names = {"a", "flag", "const"};
    d.response = Eigen::Vector3d(10, 20, 30);
    WarningCapture capture;
    auto s = minmax_scale(d);
    CHECK(s.k() == 2);
    CHECK(s.column_names == std::vector<std::string>{"a", "flag"});
    CHECK(s.inputs(0, 0) == 0.0);
    CHECK(s.inputs(1, 0) == 0.5);
    CHECK(s.inputs(2, 0) == 1.0);
    // already in {0, 1}
    CHECK(s.inputs.col(1) == d.inputs.col(1));
    CHECK(*s.response == *d.response);
    REQUIRE(capture.messages().size() == 1);
    CHECK(capture.messages()[0].find("const") != std::string::npos);
}

TEST_CASE("scaled columns span exactly [0, 1]")
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Random(40, 5) * 123.0;
    Dataset d{m, std::nullopt, {"a", "b", "c", "d", "e"}};
    auto s = minmax_scale(d);
    for (Eigen::Index c = 0; c < s.inputs.cols(); ++c) {
        CHECK(s.inputs.col(c).minCoeff() == 0.0);
        CHECK(s.inputs.col(c).maxCoeff() == 1.0);
    }
}

TEST_CASE("dropping constants below two columns is EmptyDataset")
{
    Dataset d;
    d.inputs.resize(3, 2);
    d.inputs << 1, 5, 2, 5, 3, 5;
    d.column_names = {"a", "b"};
    WarningCapture capture;
    CHECK(error_of([&] { minmax_scale(d); }) == ErrorCode::EmptyDataset);
}

TEST_CASE("scaler re-applied to new data selects columns by name")
{
    Dataset train{Eigen::MatrixXd(2, 2), std::nullopt, {"a", "b"}};
    train.inputs << 0, 10, 4, 20;
    auto scaler = fit_minmax(train);
    Dataset other{Eigen::MatrixXd(1, 2), std::nullopt, {"b", "a"}};
    other.inputs << 15, 8;
    auto s = scaler.apply(other);
    CHECK(s.inputs(0, 0) == 2.0);
    CHECK(s.inputs(0, 1) == 0.5);
    Dataset missing{Eigen::MatrixXd(1, 2), std::nullopt, {"a", "c"}};
    CHECK(error_of([&] { scaler.apply(missing); }) == ErrorCode::ArityMismatch);
}

TEST_CASE("dataset config file")
{
    const auto dir = std::filesystem::temp_directory_path() / "aggbench_cfg_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "cfg.json");
        out << R"({"datasets": [{"path": "a.csv", "response": "y", "drop": ["id"], "delimiter": ";", "family": "f"},
                                 {"path": "/abs/b.csv", "name": "bee", "has_header": false, "response": 3}]})";
    }
    auto configs = load_dataset_configs(dir / "cfg.json");
    REQUIRE(configs.size() == 2);
    CHECK(configs[0].path == dir / "a.csv");
    CHECK(configs[0].delimiter == ';');
    CHECK(configs[0].drop_columns == std::vector<std::string>{"id"});
    CHECK(configs[0].id() == "a");
    CHECK(configs[0].family == "f");
    CHECK(configs[1].path == "/abs/b.csv");
    CHECK(configs[1].id() == "bee");
    CHECK_FALSE(configs[1].has_header);
    CHECK(configs[1].response_column == "3");
    std::filesystem::remove_all(dir);
}

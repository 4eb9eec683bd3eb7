#include "aggbench/ingest.hpp"
#include "aggbench/csv.hpp"
#include "aggbench/error.hpp"
#include "aggbench/log.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace aggbench {

namespace {

std::optional<std::size_t> resolve_column(const std::vector<std::string>& header, const std::string& ref)
{
    auto it = std::find(header.begin(), header.end(), ref);
    if (it != header.end())
        return static_cast<std::size_t>(it - header.begin());
    auto trimmed = csv::trim(ref);
    if (!trimmed.empty() && std::all_of(trimmed.begin(), trimmed.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        std::size_t index = std::stoul(std::string(trimmed));
        if (index < header.size())
            return index;
    }
    return std::nullopt;
}

// Missing cells become NaN.
std::optional<std::vector<double>> parse_numeric_column(const std::vector<csv::Row>& rows, std::size_t first, std::size_t col)
{
    std::vector<double> values;
    values.reserve(rows.size() - first);
    for (std::size_t r = first; r < rows.size(); ++r) {
        const auto& cell = rows[r][col];
        if (is_missing_marker(cell)) {
            values.push_back(std::nan(""));
            continue;
        }
        auto v = csv::parse_double(cell);
        if (!v)
            return std::nullopt;
        values.push_back(std::isfinite(*v) ? *v : std::nan(""));
    }
    return values;
}

} // namespace

std::string DatasetConfig::id() const
{
    if (!name.empty())
        return name;
    return path.stem().string();
}

bool is_missing_marker(std::string_view cell) noexcept
{
    cell = csv::trim(cell);
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "?";
}

Dataset load_csv(const DatasetConfig& config)
{
    std::ifstream in(config.path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::FileNotFound, "cannot open '" + config.path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str(), config);
}

Dataset parse_dataset(std::string_view text, const DatasetConfig& config)
{
    const std::string source = config.path.empty() ? std::string("<memory>") : config.path.string();
    if (config.response_column
        && std::find(config.drop_columns.begin(), config.drop_columns.end(), *config.response_column)
            != config.drop_columns.end())
        throw Error(ErrorCode::InvalidConfig, "response column '" + *config.response_column + "' is also listed in drop columns");

    std::istringstream stream{std::string(text)};
    auto rows = csv::read(stream, config.delimiter);
    if (rows.empty())
        throw Error(ErrorCode::EmptyDataset, source + " contains no rows");

    const std::size_t width = rows.front().size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width)
            throw Error(ErrorCode::ParseError, source + ": record " + std::to_string(r + 1) + " has "
                    + std::to_string(rows[r].size()) + " fields, expected " + std::to_string(width));
    }

    std::vector<std::string> header;
    std::size_t first_data = 0;
    if (config.has_header) {
        for (const auto& h : rows.front())
            header.emplace_back(csv::trim(h));
        first_data = 1;
    } else {
        for (std::size_t c = 0; c < width; ++c)
            header.push_back("x" + std::to_string(c + 1));
    }
    const std::size_t row_count = rows.size() - first_data;

    std::vector<bool> excluded(width, false);
    for (const auto& ref : config.drop_columns) {
        auto c = resolve_column(header, ref);
        if (!c) {
            warn(source + ": drop column '" + ref + "' not found");
            continue;
        }
        excluded[*c] = true;
    }

    if (!config.input_columns.empty()) {
        std::vector<bool> selected(width, false);
        for (const auto& ref : config.input_columns) {
            auto c = resolve_column(header, ref);
            if (!c)
                throw Error(ErrorCode::ArityMismatch, source + ": input column '" + ref + "' not present");
            selected[*c] = true;
        }
        for (std::size_t c = 0; c < width; ++c)
            excluded[c] = excluded[c] || !selected[c];
    }

    std::optional<std::size_t> response_index;
    std::vector<double> response_values;
    if (config.response_column) {
        response_index = resolve_column(header, *config.response_column);
        if (!response_index)
            throw Error(ErrorCode::ParseError, source + ": response column '" + *config.response_column + "' not found");
        if (excluded[*response_index] && config.input_columns.empty())
            throw Error(ErrorCode::InvalidConfig, "response column '" + *config.response_column + "' is also listed in drop columns");
        excluded[*response_index] = true;
        auto parsed = parse_numeric_column(rows, first_data, *response_index);
        if (!parsed)
            throw Error(ErrorCode::ParseError, source + ": response column '" + header[*response_index] + "' is not numeric");
        response_values = std::move(*parsed);
    }

    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    for (std::size_t c = 0; c < width; ++c) {
        if (excluded[c])
            continue;
        auto parsed = parse_numeric_column(rows, first_data, c);
        if (!parsed) {
            warn(source + ": dropping non-numeric column '" + header[c] + "'");
            continue;
        }
        if (std::all_of(parsed->begin(), parsed->end(), [](double v) { return std::isnan(v); })) {
            warn(source + ": dropping column '" + header[c] + "' with no values");
            continue;
        }
        names.push_back(header[c]);
        columns.push_back(std::move(*parsed));
    }

    std::vector<std::size_t> kept;
    for (std::size_t r = 0; r < row_count; ++r) {
        bool complete = std::none_of(columns.begin(), columns.end(), [r](const auto& col) { return std::isnan(col[r]); });
        if (response_index && std::isnan(response_values[r]))
            complete = false;
        if (complete)
            kept.push_back(r);
    }
    if (kept.size() < row_count)
        warn(source + ": removed " + std::to_string(row_count - kept.size()) + " rows with missing values");

    if (columns.size() < 2)
        throw Error(ErrorCode::EmptyDataset, source + ": " + std::to_string(columns.size()) + " numeric input columns after cleaning, need at least 2");
    if (kept.empty())
        throw Error(ErrorCode::EmptyDataset, source + ": no complete rows after cleaning");

    Dataset d;
    d.column_names = std::move(names);
    d.source_rows = kept;
    d.source_row_count = row_count;
    d.inputs.resize(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (std::size_t j = 0; j < kept.size(); ++j)
            d.inputs(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) = columns[c][kept[j]];
    if (response_index) {
        d.response_name = header[*response_index];
        Eigen::VectorXd y(static_cast<Eigen::Index>(kept.size()));
        for (std::size_t j = 0; j < kept.size(); ++j)
            y(static_cast<Eigen::Index>(j)) = response_values[kept[j]];
        d.response = std::move(y);
    }
    return d;
}

MinMaxScaler fit_minmax(const Dataset& d)
{
    MinMaxScaler scaler;
    for (Eigen::Index c = 0; c < d.inputs.cols(); ++c) {
        double lo = d.inputs.col(c).minCoeff();
        double hi = d.inputs.col(c).maxCoeff();
        const auto& name = d.column_names[static_cast<std::size_t>(c)];
        if (!(hi > lo)) {
            warn("dropping constant column '" + name + "'");
            continue;
        }
        scaler.column_names.push_back(name);
        scaler.minimum.push_back(lo);
        scaler.maximum.push_back(hi);
    }
    if (scaler.k() < 2)
        throw Error(ErrorCode::EmptyDataset, std::to_string(scaler.k()) + " non-constant input columns, need at least 2");
    return scaler;
}

Dataset MinMaxScaler::apply(const Dataset& d) const
{
    Dataset out;
    out.response = d.response;
    out.response_name = d.response_name;
    out.source_rows = d.source_rows;
    out.source_row_count = d.source_row_count;
    out.column_names = column_names;
    out.inputs.resize(d.inputs.rows(), static_cast<Eigen::Index>(k()));
    for (std::size_t c = 0; c < k(); ++c) {
        auto it = std::find(d.column_names.begin(), d.column_names.end(), column_names[c]);
        if (it == d.column_names.end())
            throw Error(ErrorCode::ArityMismatch, "input column '" + column_names[c] + "' not present");
        auto src = d.inputs.col(it - d.column_names.begin());
        const double lo = minimum[c];
        const double range = maximum[c] - minimum[c];
        auto dst = out.inputs.col(static_cast<Eigen::Index>(c));
        for (Eigen::Index j = 0; j < src.size(); ++j)
            dst(j) = (src(j) - lo) / range;
    }
    return out;
}

Dataset minmax_scale(const Dataset& d) { return fit_minmax(d).apply(d); }

std::vector<DatasetConfig> load_dataset_configs(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw Error(ErrorCode::FileNotFound, "cannot open '" + file.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, file.string() + ": " + e.what());
    }
    const nlohmann::json* entries = &doc;
    if (doc.is_object()) {
        if (!doc.contains("datasets"))
            throw Error(ErrorCode::InvalidConfig, file.string() + ": missing \"datasets\"");
        entries = &doc.at("datasets");
    }
    if (!entries->is_array())
        throw Error(ErrorCode::InvalidConfig, file.string() + ": \"datasets\" must be an array");

    const auto base = file.parent_path();
    std::vector<DatasetConfig> configs;
    try {
        for (const auto& e : *entries) {
            DatasetConfig c;
            std::filesystem::path p = e.at("path").get<std::string>();
            c.path = p.is_absolute() ? p : base / p;
            if (e.contains("response") && !e.at("response").is_null()) {
                const auto& r = e.at("response");
                c.response_column = r.is_number_integer() ? std::to_string(r.get<long long>()) : r.get<std::string>();
            }
            if (e.contains("drop"))
                c.drop_columns = e.at("drop").get<std::vector<std::string>>();
            if (e.contains("delimiter")) {
                auto delim = e.at("delimiter").get<std::string>();
                if (delim.size() != 1)
                    throw Error(ErrorCode::InvalidConfig, "delimiter must be a single character");
                c.delimiter = delim.front();
            }
            c.has_header = e.value("has_header", true);
            c.name = e.value("name", std::string{});
            c.family = e.value("family", std::string{});
            configs.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, file.string() + ": " + e.what());
    }
    return configs;
}

} // namespace aggbench

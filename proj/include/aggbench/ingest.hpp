#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aggbench {

/// Per-dataset loading rules.
///
/// `response_column` and the entries of `drop_columns` name header columns.
/// A value that is not a header name but parses as a non-negative integer is
/// taken as a 0-based column index (required when `has_header` is false).
struct DatasetConfig {
    std::filesystem::path path;
    std::optional<std::string> response_column;
    std::vector<std::string> drop_columns;
    bool has_header = true;
    char delimiter = ',';
    /// Report identifier; defaults to the file stem.
    std::string name;
    /// Optional grouping label, used to exclude a family of related datasets
    /// from summaries.
    std::string family;
    /// When non-empty, only these columns (by name or index) are read as
    /// inputs and every other non-response column is ignored silently.
    /// Throws ArityMismatch at load time if one is absent.
    std::vector<std::string> input_columns;

    std::string id() const;
};

/// Clean numeric data: n rows by k input columns, optional response.
struct Dataset {
    Eigen::MatrixXd inputs;
    std::optional<Eigen::VectorXd> response;
    std::vector<std::string> column_names;
    std::string response_name;
    /// 0-based data-row index in the source file of every retained row.
    std::vector<std::size_t> source_rows;
    /// Number of data rows in the source file, before removal.
    std::size_t source_row_count = 0;

    std::size_t n() const noexcept { return static_cast<std::size_t>(inputs.rows()); }
    std::size_t k() const noexcept { return static_cast<std::size_t>(inputs.cols()); }
};

/// Values treated as missing: empty, "NA", "NaN", "?". Cells that parse to a
/// non-finite value count as missing as well.
bool is_missing_marker(std::string_view cell) noexcept;

/// Read a CSV file. Drops `drop_columns`, then every non-numeric input column
/// (with a warning), then every row with a missing value in a retained input
/// or the response.
///
/// Throws Error with FileNotFound, ParseError or EmptyDataset (no rows, or
/// fewer than two input columns left).
Dataset load_csv(const DatasetConfig& config);

/// Same rules as load_csv applied to in-memory text.
Dataset parse_dataset(std::string_view text, const DatasetConfig& config);

/// Column-wise min-max scaling fitted on one dataset and re-applicable to
/// others with the same named columns.
struct MinMaxScaler {
    std::vector<std::string> column_names;
    std::vector<double> minimum;
    std::vector<double> maximum;

    std::size_t k() const noexcept { return column_names.size(); }

    /// Selects this scaler's columns from `d` by name and maps each through
    /// (x - min) / (max - min). Values outside the fitted range are kept.
    /// Throws ArityMismatch when a column is missing.
    Dataset apply(const Dataset& d) const;
};

/// Record each input column's range. Constant columns are left out with a
/// warning. Throws EmptyDataset if fewer than two columns remain.
MinMaxScaler fit_minmax(const Dataset& d);

/// fit_minmax(d).apply(d): every kept column spans exactly [0, 1].
Dataset minmax_scale(const Dataset& d);

/// Dataset entries from a JSON file: either an array of entries or an object
/// with a "datasets" array. Relative paths resolve against the file's
/// directory. Entry keys: path, response, drop, delimiter, has_header, name,
/// family.
std::vector<DatasetConfig> load_dataset_configs(const std::filesystem::path& file);

} // namespace aggbench

#pragma once

#include "aggbench/aggregate.hpp"
#include "aggbench/ingest.hpp"
#include "aggbench/metrics.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aggbench {

struct BenchmarkConfig {
    std::vector<DatasetConfig> datasets;
    std::vector<Kind> approaches{all_kinds.begin(), all_kinds.end()};
    std::uint64_t seed = 0;
    std::size_t dominance_cap = 20000;
    bool exact_dominance = false;
    std::size_t workers = 1;
    double solver_tolerance = 1e-9;
    std::size_t solver_max_iterations = 50000;
    std::filesystem::path output_dir = "bench_out";
    std::optional<std::string> exclude_family;
};

/// Reads a JSON benchmark config: {"datasets": [...], "approaches": [...],
/// "seed", "dominance_cap", "exact_dominance", "workers", "output_dir",
/// "exclude_family", "solver": {"tolerance", "max_iterations"}}.
/// Relative paths resolve against the config file's directory.
BenchmarkConfig load_benchmark_config(const std::filesystem::path& file);

/// Throws InvalidConfig when there is no dataset or no approach.
void validate(const BenchmarkConfig& c);

struct Cell {
    std::string dataset;
    Kind approach = Kind::Sum;
    bool ok = false;
    MeasureSet measures;
    std::size_t distinct_outputs = 0;
    std::vector<double> weights;
    std::string error;
};

struct DatasetRecord {
    std::string id;
    std::string family;
    std::string path;
    bool ok = false;
    std::string error;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t source_rows = 0;
    std::size_t distinct_rows = 0;
    std::vector<std::string> columns;
    std::vector<std::string> warnings;
};

struct EvaluationReport {
    std::vector<Kind> approaches;
    std::vector<DatasetRecord> datasets;
    /// Dataset-major, approaches in `approaches` order.
    std::vector<Cell> cells;

    const Cell* find(std::string_view dataset, Kind approach) const noexcept;
    const DatasetRecord* dataset(std::string_view id) const noexcept;
};

/// Load, scale, fit every approach and measure one dataset. Never throws for
/// data problems: failures are recorded in the returned record and cells.
/// Unsupervised approaches only ever receive the input matrix.
std::pair<DatasetRecord, std::vector<Cell>> evaluate_dataset(const DatasetConfig& config,
    std::span<const Kind> approaches, const FitOptions& options);

/// Runs every dataset (in parallel across `workers` threads). Output order
/// and content do not depend on the worker count.
/// Throws NoUsableDatasets when every dataset failed to load.
EvaluationReport run_benchmark(const BenchmarkConfig& c);

enum class Measure { PredictivePower, Similarity, Consensus, Sensitivity };
inline constexpr std::array<Measure, 4> all_measures{
    Measure::PredictivePower, Measure::Similarity, Measure::Consensus, Measure::Sensitivity};

std::string_view to_string(Measure m) noexcept;
Measure measure_from_string(std::string_view s);
double value_of(const MeasureSet& s, Measure m) noexcept;

/// Linear-interpolation quantile (Hyndman-Fan type 7). NaN when empty.
double quantile(std::vector<double> values, double p);

struct Quartiles {
    double p25 = 0.0;
    double median = 0.0;
    double p75 = 0.0;
    std::size_t count = 0;
};

struct SummaryRow {
    Kind approach;
    Measure measure;
    Quartiles all;
    std::optional<Quartiles> excluded;
};

struct SummaryTable {
    std::vector<Kind> approaches;
    std::optional<std::string> excluded_family;
    std::vector<SummaryRow> rows;

    const SummaryRow* find(Kind approach, Measure measure) const noexcept;
};

/// Quartiles per approach and measure. For each measure the same datasets
/// are used for every approach: those where every approach has a finite
/// value. With `exclude_family`, a second set of quartiles leaves out the
/// datasets of that family. Throws EmptyReport.
SummaryTable summarize(const EvaluationReport& r, std::optional<std::string> exclude_family = std::nullopt);

struct CorrelationMatrix {
    std::vector<Kind> approaches;
    Eigen::MatrixXd values;
    /// Datasets used for each entry (pairwise complete).
    Eigen::MatrixXi counts;
};

/// Pearson correlation between the per-dataset values of each approach pair,
/// using the datasets where both are finite. Entries with fewer than three
/// such datasets, or constant values, are NaN; the diagonal is 1.
/// Throws InsufficientData with fewer than two approaches or fewer than
/// three datasets complete for all approaches.
CorrelationMatrix correlation_matrix(const EvaluationReport& r, Measure m);

/// Tukey box-plot statistics: whiskers at the most extreme values within
/// 1.5 IQR of the quartiles.
struct BoxStats {
    std::size_t count = 0;
    double lower_whisker = 0.0;
    double p25 = 0.0;
    double median = 0.0;
    double p75 = 0.0;
    double upper_whisker = 0.0;
    std::size_t outliers = 0;
};
BoxStats box_stats(std::vector<double> values);

} // namespace aggbench

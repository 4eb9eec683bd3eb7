#pragma once

#include "aggbench/bench.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aggbench {

/// dataset,approach,n,k,predictive_power,similarity,consensus,sensitivity,flags
void write_report_csv(const EvaluationReport& r, std::ostream& out);
/// approach,measure,n_datasets,p25,median,p75, then the same four for the
/// family-excluded variant (empty when there is none).
void write_summary_csv(const SummaryTable& s, std::ostream& out);
void write_correlation_csv(const CorrelationMatrix& m, std::ostream& out);
/// approach,n,lower_whisker,p25,median,p75,upper_whisker,outliers
void write_boxplot_csv(const EvaluationReport& r, Measure m, std::ostream& out);

/// Median table, "median (median without family)" per cell.
void print_summary(const SummaryTable& s, std::ostream& out);

nlohmann::json to_json(const EvaluationReport& r);
/// Throws InvalidConfig on a malformed document.
EvaluationReport report_from_json(const nlohmann::json& j);
EvaluationReport load_report_json(const std::filesystem::path& path);

/// Writes report.csv, report.json, summary.csv, corr_<measure>.csv and
/// boxplot_<measure>.csv into `dir` (created if needed). Correlation files
/// are skipped, with a warning, when there is not enough data for them.
/// Returns the paths written.
std::vector<std::filesystem::path> write_benchmark_outputs(const EvaluationReport& r, const SummaryTable& s,
    const std::filesystem::path& dir);

} // namespace aggbench

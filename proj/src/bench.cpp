#include "aggbench/bench.hpp"
#include "aggbench/error.hpp"
#include "aggbench/log.hpp"
#include "aggbench/stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

namespace aggbench {

BenchmarkConfig load_benchmark_config(const std::filesystem::path& file)
{
    BenchmarkConfig c;
    c.datasets = load_dataset_configs(file);
    std::ifstream in(file);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
        if (!doc.is_object())
            return c;
        if (doc.contains("approaches")) {
            c.approaches.clear();
            for (const auto& a : doc.at("approaches")) {
                Kind k = kind_from_string(a.get<std::string>());
                if (std::find(c.approaches.begin(), c.approaches.end(), k) == c.approaches.end())
                    c.approaches.push_back(k);
            }
        }
        c.seed = doc.value("seed", c.seed);
        c.dominance_cap = doc.value("dominance_cap", c.dominance_cap);
        c.exact_dominance = doc.value("exact_dominance", c.exact_dominance);
        c.workers = doc.value("workers", c.workers);
        if (doc.contains("output_dir")) {
            std::filesystem::path out = doc.at("output_dir").get<std::string>();
            c.output_dir = out.is_absolute() ? out : file.parent_path() / out;
        }
        if (doc.contains("exclude_family") && !doc.at("exclude_family").is_null())
            c.exclude_family = doc.at("exclude_family").get<std::string>();
        if (doc.contains("solver")) {
            const auto& s = doc.at("solver");
            c.solver_tolerance = s.value("tolerance", c.solver_tolerance);
            c.solver_max_iterations = s.value("max_iterations", c.solver_max_iterations);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, file.string() + ": " + e.what());
    }
    validate(c);
    return c;
}

void validate(const BenchmarkConfig& c)
{
    if (c.datasets.empty())
        throw Error(ErrorCode::InvalidConfig, "benchmark config lists no datasets");
    if (c.approaches.empty())
        throw Error(ErrorCode::InvalidConfig, "benchmark config lists no approaches");
    for (std::size_t i = 0; i < c.datasets.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (c.datasets[i].id() == c.datasets[j].id())
                throw Error(ErrorCode::InvalidConfig, "duplicate dataset name '" + c.datasets[i].id() + "'");
}

const Cell* EvaluationReport::find(std::string_view dataset, Kind approach) const noexcept
{
    for (const auto& c : cells)
        if (c.dataset == dataset && c.approach == approach)
            return &c;
    return nullptr;
}

const DatasetRecord* EvaluationReport::dataset(std::string_view id) const noexcept
{
    for (const auto& d : datasets)
        if (d.id == id)
            return &d;
    return nullptr;
}

std::pair<DatasetRecord, std::vector<Cell>> evaluate_dataset(const DatasetConfig& config,
    std::span<const Kind> approaches, const FitOptions& options)
{
    DatasetRecord record;
    record.id = config.id();
    record.family = config.family;
    record.path = config.path.string();
    std::vector<Cell> cells;
    for (Kind kind : approaches) {
        Cell cell;
        cell.dataset = record.id;
        cell.approach = kind;
        cells.push_back(std::move(cell));
    }

    WarningCapture capture;
    Dataset scaled;
    // raw values of the kept columns, for distinct-tuple counting
    Eigen::MatrixXd raw_inputs;
    try {
        Dataset raw = load_csv(config);
        if (!raw.response)
            throw Error(ErrorCode::MissingResponse, "benchmark datasets need a response column");
        const auto scaler = fit_minmax(raw);
        scaled = scaler.apply(raw);
        raw_inputs.resize(raw.inputs.rows(), static_cast<Eigen::Index>(scaler.k()));
        for (std::size_t c = 0; c < scaler.k(); ++c) {
            auto it = std::find(raw.column_names.begin(), raw.column_names.end(), scaler.column_names[c]);
            raw_inputs.col(static_cast<Eigen::Index>(c)) = raw.inputs.col(it - raw.column_names.begin());
        }
        record.n = scaled.n();
        record.k = scaled.k();
        record.source_rows = scaled.source_row_count;
        record.columns = scaled.column_names;
        record.ok = true;
    } catch (const std::exception& e) {
        record.ok = false;
        record.error = e.what();
        warn("dataset '" + record.id + "' skipped: " + e.what());
        for (auto& c : cells)
            c.error = record.error;
        record.warnings = capture.take();
        return {std::move(record), std::move(cells)};
    }

    const Eigen::VectorXd& y = *scaled.response;
    // rankings from scaled inputs; tuple distinctness from the raw values
    Evaluator evaluator(scaled.inputs, std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
    record.distinct_rows = count_distinct_rows(raw_inputs);
    const double distinct_rows = static_cast<double>(record.distinct_rows);

    for (auto& cell : cells) {
        try {
            // the response is only handed to the supervised fit
            AggregationModel model = is_supervised(cell.approach)
                ? fit_regression(scaled.inputs, y, options)
                : fit_unsupervised(cell.approach, scaled.inputs, options);
            const Eigen::VectorXd out = model.predict_all(scaled.inputs);
            const std::span<const double> outputs(out.data(), static_cast<std::size_t>(out.size()));
            cell.measures = evaluator(outputs);
            cell.distinct_outputs = count_distinct(outputs);
            cell.measures.sensitivity = static_cast<double>(cell.distinct_outputs) / distinct_rows;
            auto w = model.weights();
            cell.weights.assign(w.begin(), w.end());
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.error = e.what();
            warn(std::string(to_string(cell.approach)) + " failed on '" + record.id + "': " + e.what());
        }
    }
    record.warnings = capture.take();
    return {std::move(record), std::move(cells)};
}

EvaluationReport run_benchmark(const BenchmarkConfig& c)
{
    validate(c);
    const std::size_t count = c.datasets.size();
    std::vector<std::pair<DatasetRecord, std::vector<Cell>>> results(count);

    auto run_one = [&](std::size_t index) {
        FitOptions options;
        options.dominance.cap = c.dominance_cap;
        options.dominance.exact = c.exact_dominance;
        options.dominance.seed = c.seed + index;
        options.solver_tolerance = c.solver_tolerance;
        options.solver_max_iterations = c.solver_max_iterations;
        results[index] = evaluate_dataset(c.datasets[index], c.approaches, options);
    };

    const std::size_t workers = std::clamp<std::size_t>(c.workers, 1, count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++)
                    run_one(i);
            });
    }

    EvaluationReport report;
    report.approaches = c.approaches;
    bool any_ok = false;
    for (auto& [record, cells] : results) {
        any_ok = any_ok || record.ok;
        report.datasets.push_back(std::move(record));
        for (auto& cell : cells)
            report.cells.push_back(std::move(cell));
    }
    if (!any_ok)
        throw Error(ErrorCode::NoUsableDatasets, "every dataset failed to load");
    return report;
}

std::string_view to_string(Measure m) noexcept
{
    switch (m) {
    case Measure::PredictivePower: return "predictive_power";
    case Measure::Similarity: return "similarity";
    case Measure::Consensus: return "consensus";
    case Measure::Sensitivity: return "sensitivity";
    }
    return "?";
}

Measure measure_from_string(std::string_view s)
{
    for (Measure m : all_measures)
        if (to_string(m) == s)
            return m;
    throw Error(ErrorCode::InvalidConfig, "unknown measure '" + std::string(s) + "'");
}

double value_of(const MeasureSet& s, Measure m) noexcept
{
    switch (m) {
    case Measure::PredictivePower: return s.predictive_power;
    case Measure::Similarity: return s.similarity;
    case Measure::Consensus: return s.consensus;
    case Measure::Sensitivity: return s.sensitivity;
    }
    return std::nan("");
}

double quantile(std::vector<double> values, double p)
{
    if (values.empty())
        return std::nan("");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

std::optional<double> finite_value(const EvaluationReport& r, const std::string& dataset, Kind kind, Measure m)
{
    const Cell* cell = r.find(dataset, kind);
    if (cell == nullptr || !cell->ok)
        return std::nullopt;
    const double v = value_of(cell->measures, m);
    if (!std::isfinite(v))
        return std::nullopt;
    return v;
}

// Datasets where every approach has a finite value of `m`.
std::vector<std::string> complete_datasets(const EvaluationReport& r, Measure m)
{
    std::vector<std::string> ids;
    for (const auto& d : r.datasets) {
        bool complete = d.ok && std::all_of(r.approaches.begin(), r.approaches.end(),
                                    [&](Kind k) { return finite_value(r, d.id, k, m).has_value(); });
        if (complete)
            ids.push_back(d.id);
    }
    return ids;
}

Quartiles quartiles_of(std::vector<double> values)
{
    Quartiles q;
    q.count = values.size();
    q.p25 = quantile(values, 0.25);
    q.median = quantile(values, 0.5);
    q.p75 = quantile(std::move(values), 0.75);
    return q;
}

} // namespace

const SummaryRow* SummaryTable::find(Kind approach, Measure measure) const noexcept
{
    for (const auto& row : rows)
        if (row.approach == approach && row.measure == measure)
            return &row;
    return nullptr;
}

SummaryTable summarize(const EvaluationReport& r, std::optional<std::string> exclude_family)
{
    if (r.cells.empty() || r.approaches.empty())
        throw Error(ErrorCode::EmptyReport, "report has no cells");
    if (std::none_of(r.cells.begin(), r.cells.end(), [](const Cell& c) { return c.ok; }))
        throw Error(ErrorCode::EmptyReport, "report has no successful cells");

    SummaryTable table;
    table.approaches = r.approaches;
    table.excluded_family = exclude_family;
    for (Kind kind : r.approaches) {
        for (Measure m : all_measures) {
            const auto ids = complete_datasets(r, m);
            std::vector<double> all, excluded;
            for (const auto& id : ids) {
                const double v = *finite_value(r, id, kind, m);
                all.push_back(v);
                if (exclude_family && r.dataset(id)->family != *exclude_family)
                    excluded.push_back(v);
            }
            SummaryRow row{kind, m, quartiles_of(std::move(all)), std::nullopt};
            if (exclude_family)
                row.excluded = quartiles_of(std::move(excluded));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

CorrelationMatrix correlation_matrix(const EvaluationReport& r, Measure m)
{
    const std::size_t a = r.approaches.size();
    if (a < 2)
        throw Error(ErrorCode::InsufficientData, "correlation needs at least two approaches");
    if (complete_datasets(r, m).size() < 3)
        throw Error(ErrorCode::InsufficientData,
            "correlation of " + std::string(to_string(m)) + " needs at least three datasets with complete cells");

    CorrelationMatrix out;
    out.approaches = r.approaches;
    out.values = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a), std::nan(""));
    out.counts = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a));
    for (std::size_t p = 0; p < a; ++p) {
        for (std::size_t q = p; q < a; ++q) {
            std::vector<double> x, y;
            for (const auto& d : r.datasets) {
                auto vx = finite_value(r, d.id, r.approaches[p], m);
                auto vy = finite_value(r, d.id, r.approaches[q], m);
                if (vx && vy) {
                    x.push_back(*vx);
                    y.push_back(*vy);
                }
            }
            const auto ip = static_cast<Eigen::Index>(p);
            const auto iq = static_cast<Eigen::Index>(q);
            out.counts(ip, iq) = out.counts(iq, ip) = static_cast<int>(x.size());
            double v = std::nan("");
            if (x.size() >= 3)
                v = p == q ? 1.0 : pearson(x, y);
            out.values(ip, iq) = out.values(iq, ip) = v;
        }
    }
    return out;
}

BoxStats box_stats(std::vector<double> values)
{
    BoxStats b;
    b.count = values.size();
    if (values.empty()) {
        b.lower_whisker = b.p25 = b.median = b.p75 = b.upper_whisker = std::nan("");
        return b;
    }
    std::sort(values.begin(), values.end());
    b.p25 = quantile(values, 0.25);
    b.median = quantile(values, 0.5);
    b.p75 = quantile(values, 0.75);
    const double reach = 1.5 * (b.p75 - b.p25);
    const double lo_fence = b.p25 - reach;
    const double hi_fence = b.p75 + reach;
    b.lower_whisker = *std::find_if(values.begin(), values.end(), [&](double v) { return v >= lo_fence; });
    b.upper_whisker = *std::find_if(values.rbegin(), values.rend(), [&](double v) { return v <= hi_fence; });
    b.outliers = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [&](double v) { return v < lo_fence || v > hi_fence; }));
    return b;
}

} // namespace aggbench

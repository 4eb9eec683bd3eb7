#include "aggbench/aggregate.hpp"
#include "aggbench/bench.hpp"
#include "aggbench/csv.hpp"
#include "aggbench/error.hpp"
#include "aggbench/ingest.hpp"
#include "aggbench/model_io.hpp"
#include "aggbench/report_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

using namespace aggbench;

namespace {

struct DataFlags {
    std::string path;
    std::string response;
    std::vector<std::string> drop;
    std::string delimiter = ",";
    bool no_header = false;
};

struct LearningFlags {
    std::uint64_t seed = 0;
    std::size_t dominance_cap = 20000;
    bool exact_dominance = false;
};

void add_data_flags(CLI::App* cmd, DataFlags& f)
{
    cmd->add_option("--response", f.response, "Response column (name, or 0-based index)");
    cmd->add_option("--drop", f.drop, "Columns to remove before use, e.g. id,time")->delimiter(',');
    cmd->add_option("--delimiter", f.delimiter, "Field delimiter")->capture_default_str();
    cmd->add_flag("--no-header", f.no_header, "The file has no header row");
}

void add_learning_flags(CLI::App* cmd, LearningFlags& f)
{
    cmd->add_option("--seed", f.seed, "Seed for dominance subsampling")->capture_default_str();
    cmd->add_option("--dominance-cap", f.dominance_cap, "Row count above which dominance ranking is subsampled")
        ->capture_default_str();
    cmd->add_flag("--exact-dominance", f.exact_dominance, "Always compute dominance ranking on every row");
}

DatasetConfig to_config(const DataFlags& f)
{
    if (f.delimiter.size() != 1)
        throw Error(ErrorCode::InvalidConfig, "--delimiter must be a single character");
    DatasetConfig c;
    c.path = f.path;
    if (!f.response.empty())
        c.response_column = f.response;
    c.drop_columns = f.drop;
    c.delimiter = f.delimiter.front();
    c.has_header = !f.no_header;
    return c;
}

FitOptions to_options(const LearningFlags& f)
{
    FitOptions o;
    o.dominance.seed = f.seed;
    o.dominance.cap = f.dominance_cap;
    o.dominance.exact = f.exact_dominance;
    return o;
}

void write_outputs(const Dataset& d, const Eigen::VectorXd& out, std::ostream& os)
{
    // one line per source data row; rows removed for missing values stay blank
    std::size_t next = 0;
    for (std::size_t r = 0; r < d.source_row_count; ++r) {
        if (next < d.source_rows.size() && d.source_rows[next] == r)
            os << csv::format_double(out(static_cast<Eigen::Index>(next++)));
        os << '\n';
    }
}

void write_outputs_to(const std::string& path, const Dataset& d, const Eigen::VectorXd& out)
{
    if (path.empty() || path == "-") {
        write_outputs(d, out, std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os)
        throw Error(ErrorCode::FileNotFound, "cannot write '" + path + "'");
    write_outputs(d, out, os);
    if (!os)
        throw Error(ErrorCode::FileNotFound, "failed writing '" + path + "'");
}

void print_weights(const AggregationModel& m, const std::vector<std::string>& names)
{
    auto w = m.weights();
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::cout << "  " << std::left << std::setw(24) << names[i] << csv::format_double(w[i]);
        if (!m.score_functions().empty())
            std::cout << "  (" << to_string(m.score_functions()[i].direction()) << ")";
        std::cout << '\n';
    }
}

int cmd_fit(const std::string& kind_name, const DataFlags& data, const LearningFlags& learning,
    const std::string& model_out, const std::string& predictions_out)
{
    const Kind kind = kind_from_string(kind_name);
    const Dataset raw = load_csv(to_config(data));
    if (is_supervised(kind) && !raw.response)
        throw Error(ErrorCode::MissingResponse, "REG needs a response column (--response)");
    const auto scaler = fit_minmax(raw);
    const Dataset scaled = scaler.apply(raw);
    ModelFile file{scaler, fit(kind, scaled, to_options(learning)), raw.response_name};
    save_model_file(file, model_out);

    std::cout << to_string(kind) << " model: k = " << file.model.k() << ", n = " << scaled.n() << " -> " << model_out << '\n';
    if (!file.model.weights().empty()) {
        std::cout << "weights:\n";
        print_weights(file.model, scaler.column_names);
    }
    if (!predictions_out.empty())
        write_outputs_to(predictions_out, scaled, file.model.predict_all(scaled.inputs));
    return 0;
}

int cmd_predict(const std::string& model_path, DataFlags data, const std::string& out_path)
{
    const ModelFile file = load_model_file(model_path);
    auto config = to_config(data);
    if (config.has_header)
        config.input_columns = file.scaler.column_names;
    config.response_column.reset();
    const Dataset raw = load_csv(config);
    if (!config.has_header) {
        if (raw.k() != file.model.k())
            throw Error(ErrorCode::ArityMismatch, "model expects " + std::to_string(file.model.k()) + " inputs, file has "
                    + std::to_string(raw.k()));
        Dataset renamed = raw;
        renamed.column_names = file.scaler.column_names;
        write_outputs_to(out_path, raw, file.model.predict_all(file.scaler.apply(renamed).inputs));
        return 0;
    }
    const Dataset scaled = file.scaler.apply(raw);
    write_outputs_to(out_path, scaled, file.model.predict_all(scaled.inputs));
    return 0;
}

int cmd_evaluate(const DataFlags& data, const LearningFlags& learning, const std::string& approaches,
    const std::string& out_path)
{
    auto config = to_config(data);
    if (!config.response_column)
        throw Error(ErrorCode::MissingResponse, "evaluate needs a response column (--response)");
    const auto kinds = parse_kind_list(approaches);
    auto [record, cells] = evaluate_dataset(config, kinds, to_options(learning));
    for (const auto& w : record.warnings)
        std::cerr << "warning: " << w << '\n';
    if (!record.ok)
        throw Error(ErrorCode::EmptyDataset, record.error);

    std::cout << record.id << ": n = " << record.n << ", k = " << record.k << '\n';
    std::cout << std::left << std::setw(8) << "approach";
    for (Measure m : all_measures)
        std::cout << std::setw(18) << to_string(m);
    std::cout << "flags\n";
    int status = 0;
    for (const auto& c : cells) {
        std::cout << std::setw(8) << to_string(c.approach);
        if (!c.ok) {
            std::cout << "failed: " << c.error << '\n';
            status = 1;
            continue;
        }
        for (Measure m : all_measures)
            std::cout << std::setw(18) << csv::format_double(value_of(c.measures, m));
        std::cout << describe_flags(c.measures.flags) << '\n';
    }
    if (!out_path.empty()) {
        EvaluationReport r;
        r.approaches = kinds;
        r.datasets.push_back(record);
        r.cells = cells;
        std::ofstream os(out_path);
        write_report_csv(r, os);
        if (!os)
            throw Error(ErrorCode::FileNotFound, "failed writing '" + out_path + "'");
    }
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Learn, apply and benchmark aggregation models over CSV datasets"};
    app.require_subcommand(1);

    DataFlags data;
    LearningFlags learning;

    auto* fit_cmd = app.add_subcommand("fit", "Fit an aggregation model and save it");
    std::string kind_name, model_out = "model.json", predictions_out;
    fit_cmd->add_option("kind", kind_name, "prod, min, max, sum, wsm, wpm or reg")->required();
    fit_cmd->add_option("data", data.path, "Training CSV file")->required();
    fit_cmd->add_option("-o,--output", model_out, "Model file to write")->capture_default_str();
    fit_cmd->add_option("--predictions", predictions_out, "Also write the fitted outputs on the training rows");
    add_data_flags(fit_cmd, data);
    add_learning_flags(fit_cmd, learning);

    auto* predict_cmd = app.add_subcommand("predict", "Apply a saved model to a CSV file");
    std::string model_path, predict_out;
    predict_cmd->add_option("model", model_path, "Model file written by fit")->required();
    predict_cmd->add_option("data", data.path, "CSV file with the model's input columns")->required();
    predict_cmd->add_option("-o,--output", predict_out, "Output CSV (one value per input row; default stdout)");
    add_data_flags(predict_cmd, data);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Fit and evaluate approaches on one dataset");
    std::string approaches = "prod,min,max,sum,wsm,wpm,reg", evaluate_out;
    evaluate_cmd->add_option("data", data.path, "CSV file")->required();
    evaluate_cmd->add_option("--approaches", approaches, "Comma-separated approaches")->capture_default_str();
    evaluate_cmd->add_option("-o,--output", evaluate_out, "Write the measures as report CSV");
    add_data_flags(evaluate_cmd, data);
    add_learning_flags(evaluate_cmd, learning);

    auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark described by a config file");
    std::string config_path, bench_approaches, bench_out, exclude_family;
    std::size_t workers = 1;
    bench_cmd->add_option("config", config_path, "Benchmark config (JSON)")->required();
    bench_cmd->add_option("--approaches", bench_approaches, "Comma-separated approaches (overrides config)");
    bench_cmd->add_option("-o,--output-dir", bench_out, "Output directory (overrides config)");
    bench_cmd->add_option("--exclude-family", exclude_family, "Also summarize without this dataset family");
    auto* workers_opt = bench_cmd->add_option("--workers", workers, "Datasets processed in parallel");
    add_learning_flags(bench_cmd, learning);

    auto* summarize_cmd = app.add_subcommand("summarize", "Quartile summary of a saved report.json");
    std::string report_path, summary_out;
    summarize_cmd->add_option("report", report_path, "report.json written by bench")->required();
    summarize_cmd->add_option("--exclude-family", exclude_family, "Also summarize without this dataset family");
    summarize_cmd->add_option("-o,--output", summary_out, "Write summary CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit_cmd->parsed())
            return cmd_fit(kind_name, data, learning, model_out, predictions_out);
        if (predict_cmd->parsed())
            return cmd_predict(model_path, data, predict_out);
        if (evaluate_cmd->parsed())
            return cmd_evaluate(data, learning, approaches, evaluate_out);
        if (bench_cmd->parsed()) {
            auto config = load_benchmark_config(config_path);
            if (!bench_approaches.empty())
                config.approaches = parse_kind_list(bench_approaches);
            if (!bench_out.empty())
                config.output_dir = bench_out;
            if (!exclude_family.empty())
                config.exclude_family = exclude_family;
            if (workers_opt->count() > 0)
                config.workers = workers;
            if (bench_cmd->get_option("--seed")->count() > 0)
                config.seed = learning.seed;
            if (bench_cmd->get_option("--dominance-cap")->count() > 0)
                config.dominance_cap = learning.dominance_cap;
            if (learning.exact_dominance)
                config.exact_dominance = true;

            const auto report = run_benchmark(config);
            for (const auto& d : report.datasets)
                for (const auto& w : d.warnings)
                    std::cerr << "warning: [" << d.id << "] " << w << '\n';
            const auto summary = summarize(report, config.exclude_family);
            write_benchmark_outputs(report, summary, config.output_dir);
            print_summary(summary, std::cout);
            std::cout << "wrote " << config.output_dir.string() << '\n';
            return 0;
        }
        if (summarize_cmd->parsed()) {
            const auto report = load_report_json(report_path);
            std::optional<std::string> family;
            if (!exclude_family.empty())
                family = exclude_family;
            const auto summary = summarize(report, family);
            print_summary(summary, std::cout);
            if (!summary_out.empty()) {
                std::ofstream os(summary_out);
                write_summary_csv(summary, os);
                if (!os)
                    throw Error(ErrorCode::FileNotFound, "failed writing '" + summary_out + "'");
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

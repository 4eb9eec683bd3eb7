#include "aggbench/report_io.hpp"
#include "aggbench/csv.hpp"
#include "aggbench/error.hpp"
#include "aggbench/log.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace aggbench {

using nlohmann::json;

namespace {

std::string number(double v) { return csv::format_double(v); }

json number_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from_json(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out)
        throw Error(ErrorCode::FileNotFound, "failed writing '" + path.string() + "'");
}

} // namespace

void write_report_csv(const EvaluationReport& r, std::ostream& out)
{
    out << "dataset,approach,n,k,predictive_power,similarity,consensus,sensitivity,flags\n";
    for (const auto& cell : r.cells) {
        const DatasetRecord* d = r.dataset(cell.dataset);
        out << csv::escape(cell.dataset) << ',' << to_string(cell.approach) << ',';
        if (d != nullptr && d->ok)
            out << d->n << ',' << d->k << ',';
        else
            out << ",,";
        if (cell.ok) {
            const auto& m = cell.measures;
            out << number(m.predictive_power) << ',' << number(m.similarity) << ',' << number(m.consensus) << ','
                << number(m.sensitivity) << ',' << csv::escape(describe_flags(m.flags));
        } else {
            out << ",,,," << csv::escape("failed: " + cell.error);
        }
        out << '\n';
    }
}

void write_summary_csv(const SummaryTable& s, std::ostream& out)
{
    out << "approach,measure,n_datasets,p25,median,p75,n_datasets_excluded,p25_excluded,median_excluded,p75_excluded\n";
    for (const auto& row : s.rows) {
        out << to_string(row.approach) << ',' << to_string(row.measure) << ',' << row.all.count << ','
            << number(row.all.p25) << ',' << number(row.all.median) << ',' << number(row.all.p75) << ',';
        if (row.excluded)
            out << row.excluded->count << ',' << number(row.excluded->p25) << ',' << number(row.excluded->median) << ','
                << number(row.excluded->p75);
        else
            out << ",,,";
        out << '\n';
    }
}

void write_correlation_csv(const CorrelationMatrix& m, std::ostream& out)
{
    out << "approach";
    for (Kind k : m.approaches)
        out << ',' << to_string(k);
    out << '\n';
    for (std::size_t p = 0; p < m.approaches.size(); ++p) {
        out << to_string(m.approaches[p]);
        for (std::size_t q = 0; q < m.approaches.size(); ++q)
            out << ',' << number(m.values(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)));
        out << '\n';
    }
}

void write_boxplot_csv(const EvaluationReport& r, Measure measure, std::ostream& out)
{
    out << "approach,n,lower_whisker,p25,median,p75,upper_whisker,outliers\n";
    for (Kind kind : r.approaches) {
        std::vector<double> values;
        for (const auto& cell : r.cells) {
            if (cell.approach != kind || !cell.ok)
                continue;
            const double v = value_of(cell.measures, measure);
            if (std::isfinite(v))
                values.push_back(v);
        }
        const auto b = box_stats(std::move(values));
        out << to_string(kind) << ',' << b.count << ',' << number(b.lower_whisker) << ',' << number(b.p25) << ','
            << number(b.median) << ',' << number(b.p75) << ',' << number(b.upper_whisker) << ',' << b.outliers << '\n';
    }
}

void print_summary(const SummaryTable& s, std::ostream& out)
{
    auto fmt = [](double v) {
        std::ostringstream o;
        o << std::fixed << std::setprecision(2) << v;
        return o.str();
    };
    out << "Median values";
    if (s.excluded_family)
        out << " (in parentheses: without family '" << *s.excluded_family << "')";
    out << '\n';
    out << std::left << std::setw(8) << "approach";
    for (Measure m : all_measures)
        out << std::setw(20) << to_string(m);
    out << '\n';
    for (Kind kind : s.approaches) {
        out << std::setw(8) << to_string(kind);
        for (Measure m : all_measures) {
            const SummaryRow* row = s.find(kind, m);
            std::string cell = row == nullptr ? "-" : fmt(row->all.median);
            if (row != nullptr && row->excluded)
                cell += " (" + fmt(row->excluded->median) + ")";
            out << std::setw(20) << cell;
        }
        out << '\n';
    }
}

json to_json(const EvaluationReport& r)
{
    json j;
    j["format"] = "aggbench-report";
    j["version"] = 1;
    json approaches = json::array();
    for (Kind k : r.approaches)
        approaches.push_back(std::string(to_string(k)));
    j["approaches"] = std::move(approaches);

    json datasets = json::array();
    for (const auto& d : r.datasets) {
        json e;
        e["id"] = d.id;
        e["family"] = d.family;
        e["path"] = d.path;
        e["ok"] = d.ok;
        if (!d.ok)
            e["error"] = d.error;
        e["n"] = d.n;
        e["k"] = d.k;
        e["source_rows"] = d.source_rows;
        e["distinct_rows"] = d.distinct_rows;
        e["columns"] = d.columns;
        e["warnings"] = d.warnings;
        datasets.push_back(std::move(e));
    }
    j["datasets"] = std::move(datasets);

    json cells = json::array();
    for (const auto& c : r.cells) {
        json e;
        e["dataset"] = c.dataset;
        e["approach"] = std::string(to_string(c.approach));
        e["ok"] = c.ok;
        if (c.ok) {
            e["predictive_power"] = number_json(c.measures.predictive_power);
            e["similarity"] = number_json(c.measures.similarity);
            e["consensus"] = number_json(c.measures.consensus);
            e["sensitivity"] = number_json(c.measures.sensitivity);
            e["flags"] = describe_flags(c.measures.flags);
            e["flag_bits"] = c.measures.flags;
            e["distinct_outputs"] = c.distinct_outputs;
            e["weights"] = c.weights;
        } else {
            e["error"] = c.error;
        }
        cells.push_back(std::move(e));
    }
    j["cells"] = std::move(cells);
    return j;
}

EvaluationReport report_from_json(const json& j)
{
    try {
        if (j.value("format", std::string{}) != "aggbench-report")
            throw Error(ErrorCode::InvalidConfig, "not an aggbench report");
        EvaluationReport r;
        for (const auto& a : j.at("approaches"))
            r.approaches.push_back(kind_from_string(a.get<std::string>()));
        for (const auto& e : j.at("datasets")) {
            DatasetRecord d;
            d.id = e.at("id").get<std::string>();
            d.family = e.value("family", std::string{});
            d.path = e.value("path", std::string{});
            d.ok = e.at("ok").get<bool>();
            d.error = e.value("error", std::string{});
            d.n = e.value("n", std::size_t{0});
            d.k = e.value("k", std::size_t{0});
            d.source_rows = e.value("source_rows", std::size_t{0});
            d.distinct_rows = e.value("distinct_rows", std::size_t{0});
            d.columns = e.value("columns", std::vector<std::string>{});
            d.warnings = e.value("warnings", std::vector<std::string>{});
            r.datasets.push_back(std::move(d));
        }
        for (const auto& e : j.at("cells")) {
            Cell c;
            c.dataset = e.at("dataset").get<std::string>();
            c.approach = kind_from_string(e.at("approach").get<std::string>());
            c.ok = e.at("ok").get<bool>();
            if (c.ok) {
                c.measures.predictive_power = number_from_json(e.at("predictive_power"));
                c.measures.similarity = number_from_json(e.at("similarity"));
                c.measures.consensus = number_from_json(e.at("consensus"));
                c.measures.sensitivity = number_from_json(e.at("sensitivity"));
                c.measures.flags = e.value("flag_bits", std::uint32_t{0});
                c.distinct_outputs = e.value("distinct_outputs", std::size_t{0});
                c.weights = e.value("weights", std::vector<double>{});
            } else {
                c.error = e.value("error", std::string{});
            }
            r.cells.push_back(std::move(c));
        }
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("malformed report: ") + e.what());
    }
}

EvaluationReport load_report_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
    try {
        return report_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
    }
}

std::vector<std::filesystem::path> write_benchmark_outputs(const EvaluationReport& r, const SummaryTable& s,
    const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(dir / name, content);
        written.push_back(dir / name);
    };

    std::ostringstream report_csv;
    write_report_csv(r, report_csv);
    emit("report.csv", report_csv.str());
    emit("report.json", to_json(r).dump(2) + "\n");

    std::ostringstream summary_csv;
    write_summary_csv(s, summary_csv);
    emit("summary.csv", summary_csv.str());

    for (Measure m : all_measures) {
        std::ostringstream box;
        write_boxplot_csv(r, m, box);
        emit("boxplot_" + std::string(to_string(m)) + ".csv", box.str());
        try {
            auto corr = correlation_matrix(r, m);
            std::ostringstream out;
            write_correlation_csv(corr, out);
            emit("corr_" + std::string(to_string(m)) + ".csv", out.str());
        } catch (const Error& e) {
            if (e.code() != ErrorCode::InsufficientData)
                throw;
            warn(std::string("skipping corr_") + std::string(to_string(m)) + ".csv: " + e.what());
        }
    }
    return written;
}

} // namespace aggbench

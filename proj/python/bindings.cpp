#include "aggbench/aggregate.hpp"
#include "aggbench/bench.hpp"
#include "aggbench/error.hpp"
#include "aggbench/ingest.hpp"
#include "aggbench/metrics.hpp"
#include "aggbench/model_io.hpp"
#include "aggbench/report_io.hpp"
#include "aggbench/scoring.hpp"
#include "aggbench/solver.hpp"
#include "aggbench/weights.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace aggbench;

namespace {

std::span<const double> as_span(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

FitOptions make_options(std::uint64_t seed, std::size_t dominance_cap, bool exact_dominance)
{
    FitOptions o;
    o.dominance.seed = seed;
    o.dominance.cap = dominance_cap;
    o.dominance.exact = exact_dominance;
    return o;
}

py::dict measures_dict(const MeasureSet& m)
{
    py::dict d;
    d["predictive_power"] = m.predictive_power;
    d["similarity"] = m.similarity;
    d["consensus"] = m.consensus;
    d["sensitivity"] = m.sensitivity;
    d["flags"] = describe_flags(m.flags);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Unsupervised aggregation models and their rank-based evaluation";

    static py::exception<Error> error_type(m, "AggbenchError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error_type, e.what());
        }
    });

    py::enum_<Kind>(m, "Kind")
        .value("PROD", Kind::Prod)
        .value("MIN", Kind::Min)
        .value("MAX", Kind::Max)
        .value("SUM", Kind::Sum)
        .value("WSM", Kind::Wsm)
        .value("WPM", Kind::Wpm)
        .value("REG", Kind::Reg);

    py::enum_<Direction>(m, "Direction")
        .value("ASCENDING", Direction::Ascending)
        .value("DESCENDING", Direction::Descending);

    py::class_<Dataset>(m, "Dataset")
        .def_readonly("inputs", &Dataset::inputs)
        .def_readonly("response", &Dataset::response)
        .def_readonly("column_names", &Dataset::column_names)
        .def_readonly("response_name", &Dataset::response_name)
        .def_property_readonly("n", &Dataset::n)
        .def_property_readonly("k", &Dataset::k);

    m.def("load_csv",
        [](const std::filesystem::path& path, std::optional<std::string> response, std::vector<std::string> drop,
            char delimiter, bool has_header) {
            DatasetConfig c;
            c.path = path;
            c.response_column = std::move(response);
            c.drop_columns = std::move(drop);
            c.delimiter = delimiter;
            c.has_header = has_header;
            return load_csv(c);
        },
        py::arg("path"), py::arg("response") = py::none(), py::arg("drop") = std::vector<std::string>{},
        py::arg("delimiter") = ',', py::arg("has_header") = true);
    m.def("minmax_scale", &minmax_scale, py::arg("dataset"));

    py::class_<ScoreFunction>(m, "ScoreFunction")
        .def("__call__", &ScoreFunction::operator(), py::arg("value"))
        .def_property_readonly("direction", &ScoreFunction::direction)
        .def_property_readonly("n", &ScoreFunction::n)
        .def_property_readonly("sorted_values", [](const ScoreFunction& f) {
            auto v = f.sorted_values();
            return std::vector<double>(v.begin(), v.end());
        });
    m.def("fit_score", [](std::vector<double> column, Direction d) { return fit_score(column, d); },
        py::arg("column"), py::arg("direction") = Direction::Ascending);
    m.def("detect_direction", [](std::vector<double> column, std::vector<double> anchor) {
        return detect_direction(column, anchor);
    });
    m.def("score_matrix", [](const Eigen::MatrixXd& inputs) { return fit_score_matrix(inputs).scores; },
        py::arg("inputs"));

    m.def("entropy", [](std::vector<double> column) { return entropy(column); }, py::arg("column"));
    m.def("entropy_weights", [](const Eigen::MatrixXd& scores) { return entropy_weights(scores); }, py::arg("scores"));
    m.def("dominance_rank",
        [](const Eigen::MatrixXd& scores, std::size_t cap, bool exact, std::uint64_t seed) {
            return dominance_rank(scores, DominanceOptions{cap, exact, seed}).r_values;
        },
        py::arg("scores"), py::arg("cap") = 20000, py::arg("exact") = false, py::arg("seed") = 0);
    m.def("dependency_weights_from_rhos", [](std::vector<double> rhos) { return dependency_weights_from_rhos(rhos); });
    m.def("combine_weights", [](std::vector<double> ent, std::vector<double> dep) {
        return combine_weights(ent, dep).weights;
    });

    m.def("project_to_simplex", [](std::vector<double> v) { return project_to_simplex(v); });
    m.def("solve_simplex_ls",
        [](Eigen::MatrixXd X, Eigen::VectorXd y, double tolerance, std::size_t max_iterations) {
            SimplexLsProblem p{std::move(X), std::move(y), tolerance, max_iterations};
            auto r = solve_simplex_ls(p);
            py::dict d;
            d["weights"] = r.weights;
            d["objective"] = r.objective;
            d["iterations"] = r.iterations;
            d["converged"] = r.converged;
            return d;
        },
        py::arg("X"), py::arg("y"), py::arg("tolerance") = 1e-9, py::arg("max_iterations") = 50000);

    py::class_<AggregationModel>(m, "AggregationModel")
        .def_property_readonly("kind", &AggregationModel::kind)
        .def_property_readonly("k", &AggregationModel::k)
        .def_property_readonly("weights", [](const AggregationModel& a) {
            auto w = a.weights();
            return std::vector<double>(w.begin(), w.end());
        })
        .def_property_readonly("score_functions", &AggregationModel::score_functions)
        .def("predict", [](const AggregationModel& a, std::vector<double> row) { return a.predict(row); })
        .def("predict_all", &AggregationModel::predict_all, py::arg("inputs"))
        .def("to_json", [](const AggregationModel& a) { return to_json(a).dump(); })
        .def_static("from_json", [](const std::string& s) { return model_from_json(nlohmann::json::parse(s)); });

    m.def("fit",
        [](Kind kind, const Eigen::MatrixXd& inputs, std::optional<Eigen::VectorXd> response, std::uint64_t seed,
            std::size_t dominance_cap, bool exact_dominance) {
            auto options = make_options(seed, dominance_cap, exact_dominance);
            if (is_supervised(kind)) {
                if (!response)
                    throw Error(ErrorCode::MissingResponse, "REG needs a response");
                return fit_regression(inputs, *response, options);
            }
            return fit_unsupervised(kind, inputs, options);
        },
        py::arg("kind"), py::arg("inputs"), py::arg("response") = py::none(), py::arg("seed") = 0,
        py::arg("dominance_cap") = 20000, py::arg("exact_dominance") = false);

    m.def("spearman_rho", [](std::vector<double> a, std::vector<double> b) { return spearman_rho(a, b); });
    m.def("kendall_tau_distance", [](std::vector<double> a, std::vector<double> b) {
        return kendall_tau_distance(Ranking(a), Ranking(b));
    });
    m.def("kemeny_distance", [](std::vector<double> output, const Eigen::MatrixXd& inputs) {
        std::vector<Ranking> rankings;
        for (Eigen::Index i = 0; i < inputs.cols(); ++i) {
            Eigen::VectorXd col = inputs.col(i);
            rankings.emplace_back(as_span(col));
        }
        return kemeny_distance(Ranking(output), rankings);
    });
    m.def("sensitivity_ratio", [](std::vector<double> outputs, const Eigen::MatrixXd& inputs) {
        return sensitivity_ratio(outputs, inputs);
    });
    m.def("evaluate",
        [](const Eigen::VectorXd& outputs, const Eigen::VectorXd& response, const Eigen::MatrixXd& inputs) {
            return measures_dict(evaluate(as_span(outputs), as_span(response), inputs));
        },
        py::arg("outputs"), py::arg("response"), py::arg("inputs"));

    m.def("run_benchmark_json",
        [](const std::filesystem::path& config_path, std::optional<std::filesystem::path> output_dir,
            std::optional<std::string> approaches, std::optional<std::uint64_t> seed) {
            auto c = load_benchmark_config(config_path);
            if (approaches)
                c.approaches = parse_kind_list(*approaches);
            if (seed)
                c.seed = *seed;
            EvaluationReport report;
            {
                py::gil_scoped_release release;
                report = run_benchmark(c);
            }
            if (output_dir)
                write_benchmark_outputs(report, summarize(report, c.exclude_family), *output_dir);
            return to_json(report).dump();
        },
        py::arg("config"), py::arg("output_dir") = py::none(), py::arg("approaches") = py::none(),
        py::arg("seed") = py::none());
    m.def("summarize_json",
        [](const std::string& report_json, std::optional<std::string> exclude_family) {
            auto table = summarize(report_from_json(nlohmann::json::parse(report_json)), exclude_family);
            py::list rows;
            for (const auto& r : table.rows) {
                py::dict d;
                d["approach"] = std::string(to_string(r.approach));
                d["measure"] = std::string(to_string(r.measure));
                d["p25"] = r.all.p25;
                d["median"] = r.all.median;
                d["p75"] = r.all.p75;
                d["n_datasets"] = r.all.count;
                if (r.excluded) {
                    d["median_excluded"] = r.excluded->median;
                    d["n_datasets_excluded"] = r.excluded->count;
                }
                rows.append(d);
            }
            return rows;
        },
        py::arg("report_json"), py::arg("exclude_family") = py::none());
}

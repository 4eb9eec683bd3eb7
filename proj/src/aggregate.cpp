#include "aggbench/aggregate.hpp"
#include "aggbench/error.hpp"
#include "aggbench/log.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <string>

namespace aggbench {

namespace {

std::atomic<bool> warned_out_of_range{false};

void check_unit_range(Kind kind, std::span<const double> row)
{
    if (kind == Kind::Wsm || kind == Kind::Wpm)
        return;
    if (std::all_of(row.begin(), row.end(), [](double v) { return v >= 0.0 && v <= 1.0; }))
        return;
    if (!warned_out_of_range.exchange(true))
        warn("aggregating values outside [0, 1]; inputs were probably not min-max scaled");
}

} // namespace

std::string_view to_string(Kind kind) noexcept
{
    switch (kind) {
    case Kind::Prod: return "PROD";
    case Kind::Min: return "MIN";
    case Kind::Max: return "MAX";
    case Kind::Sum: return "SUM";
    case Kind::Wsm: return "WSM";
    case Kind::Wpm: return "WPM";
    case Kind::Reg: return "REG";
    }
    return "?";
}

Kind kind_from_string(std::string_view name)
{
    std::string upper;
    for (char c : name)
        upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    for (Kind k : all_kinds)
        if (to_string(k) == upper)
            return k;
    throw Error(ErrorCode::InvalidConfig, "unknown aggregation kind '" + std::string(name) + "'");
}

std::vector<Kind> parse_kind_list(std::string_view list)
{
    std::vector<Kind> kinds;
    std::size_t start = 0;
    while (start <= list.size()) {
        auto end = list.find(',', start);
        if (end == std::string_view::npos)
            end = list.size();
        auto item = list.substr(start, end - start);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (!item.empty()) {
            Kind k = kind_from_string(item);
            if (std::find(kinds.begin(), kinds.end(), k) == kinds.end())
                kinds.push_back(k);
        }
        start = end + 1;
    }
    if (kinds.empty())
        throw Error(ErrorCode::InvalidConfig, "empty approach list");
    return kinds;
}

AggregationModel AggregationModel::basic(Kind kind, std::size_t k)
{
    if (!is_basic(kind))
        throw Error(ErrorCode::InvalidConfig, std::string(to_string(kind)) + " is not a basic aggregation");
    if (k < 2)
        throw Error(ErrorCode::ArityMismatch, "aggregation needs at least two inputs");
    return AggregationModel(kind, k);
}

AggregationModel AggregationModel::weighted_scoring(Kind kind, std::vector<ScoreFunction> functions, WeightVector weights)
{
    if (kind != Kind::Wsm && kind != Kind::Wpm)
        throw Error(ErrorCode::InvalidConfig, std::string(to_string(kind)) + " is not a weighted scoring aggregation");
    if (functions.size() < 2 || functions.size() != weights.k())
        throw Error(ErrorCode::ArityMismatch, "weighted scoring needs k >= 2 score functions and k weights");
    AggregationModel m(kind, functions.size());
    m.wpm_floor_ = 1.0 / (2.0 * static_cast<double>(functions.front().n()));
    m.functions_ = std::move(functions);
    m.weight_parts_ = std::move(weights);
    return m;
}

AggregationModel AggregationModel::regression(std::vector<double> weights, double objective, std::size_t iterations, bool converged)
{
    if (weights.size() < 2)
        throw Error(ErrorCode::ArityMismatch, "aggregation needs at least two inputs");
    AggregationModel m(Kind::Reg, weights.size());
    m.reg_weights_ = std::move(weights);
    m.regression_fit_ = {objective, iterations, converged};
    return m;
}

std::span<const double> AggregationModel::weights() const noexcept
{
    if (kind_ == Kind::Reg)
        return reg_weights_;
    if (weight_parts_)
        return weight_parts_->weights;
    return {};
}

double AggregationModel::predict(std::span<const double> row) const
{
    if (row.size() != k_)
        throw Error(ErrorCode::ArityMismatch, "model expects " + std::to_string(k_) + " inputs, got " + std::to_string(row.size()));
    check_unit_range(kind_, row);
    switch (kind_) {
    case Kind::Prod: {
        double p = 1.0;
        for (double v : row)
            p *= v;
        return p;
    }
    case Kind::Min: return *std::min_element(row.begin(), row.end());
    case Kind::Max: return *std::max_element(row.begin(), row.end());
    case Kind::Sum: {
        double s = 0.0;
        for (double v : row)
            s += v;
        return s;
    }
    case Kind::Reg: {
        double s = 0.0;
        for (std::size_t i = 0; i < k_; ++i)
            s += reg_weights_[i] * row[i];
        return s;
    }
    case Kind::Wsm: {
        const auto& w = weight_parts_->weights;
        double s = 0.0;
        for (std::size_t i = 0; i < k_; ++i)
            s += w[i] * functions_[i](row[i]);
        return s;
    }
    case Kind::Wpm: {
        const auto& w = weight_parts_->weights;
        double log_sum = 0.0;
        for (std::size_t i = 0; i < k_; ++i) {
            if (w[i] == 0.0)
                continue;
            log_sum += w[i] * std::log(std::max(functions_[i](row[i]), wpm_floor_));
        }
        return std::exp(log_sum);
    }
    }
    return std::nan("");
}

Eigen::VectorXd AggregationModel::predict_all(const Eigen::MatrixXd& inputs) const
{
    if (static_cast<std::size_t>(inputs.cols()) != k_)
        throw Error(ErrorCode::ArityMismatch, "model expects " + std::to_string(k_) + " inputs, got " + std::to_string(inputs.cols()));
    // row-major so every row is a contiguous span
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = inputs;
    Eigen::VectorXd out(inputs.rows());
    for (Eigen::Index j = 0; j < rows.rows(); ++j)
        out(j) = predict(std::span<const double>(rows.row(j).data(), k_));
    return out;
}

AggregationModel fit_unsupervised(Kind kind, const Eigen::MatrixXd& inputs, const FitOptions& options)
{
    if (is_supervised(kind))
        throw Error(ErrorCode::InvalidConfig, "REG is supervised; use fit_regression");
    const auto k = static_cast<std::size_t>(inputs.cols());
    if (is_basic(kind))
        return AggregationModel::basic(kind, k);
    if (k < 2)
        throw Error(ErrorCode::ArityMismatch, "aggregation needs at least two inputs");
    if (inputs.rows() == 0)
        throw Error(ErrorCode::EmptyColumn, "cannot learn scores from zero rows");
    auto scores = fit_score_matrix(inputs);
    auto weights = learn_weights(scores, options.dominance);
    return AggregationModel::weighted_scoring(kind, std::move(scores.functions), std::move(weights));
}

AggregationModel fit_regression(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& response, const FitOptions& options)
{
    if (inputs.cols() < 2)
        throw Error(ErrorCode::ArityMismatch, "aggregation needs at least two inputs");
    SimplexLsProblem problem;
    problem.X = inputs;
    problem.y = response;
    if (response.size() > 0) {
        const double lo = response.minCoeff();
        const double hi = response.maxCoeff();
        if (hi > lo)
            problem.y = (response.array() - lo) / (hi - lo);
    }
    problem.tolerance = options.solver_tolerance;
    problem.max_iterations = options.solver_max_iterations;
    auto solved = solve_simplex_ls(problem);
    if (!solved.converged)
        warn("REG solver stopped after " + std::to_string(solved.iterations) + " iterations without converging");
    return AggregationModel::regression(std::move(solved.weights), solved.objective, solved.iterations, solved.converged);
}

AggregationModel fit(Kind kind, const Dataset& d, const FitOptions& options)
{
    if (is_supervised(kind)) {
        if (!d.response)
            throw Error(ErrorCode::MissingResponse, "REG needs a response column");
        return fit_regression(d.inputs, *d.response, options);
    }
    return fit_unsupervised(kind, d.inputs, options);
}

Eigen::VectorXd predict_all(const AggregationModel& m, const Dataset& d) { return m.predict_all(d.inputs); }

} // namespace aggbench

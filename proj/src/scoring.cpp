#include "aggbench/scoring.hpp"
#include "aggbench/error.hpp"
#include "aggbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aggbench {

std::string_view to_string(Direction d) noexcept
{
    return d == Direction::Ascending ? "ascending" : "descending";
}

Direction direction_from_string(std::string_view s)
{
    if (s == "ascending")
        return Direction::Ascending;
    if (s == "descending")
        return Direction::Descending;
    throw Error(ErrorCode::InvalidModel, "unknown direction '" + std::string(s) + "'");
}

ScoreFunction::ScoreFunction(std::vector<double> sorted_values, Direction direction)
    : sorted_(std::move(sorted_values))
    , direction_(direction)
{
    if (sorted_.empty())
        throw Error(ErrorCode::EmptyColumn, "score function needs at least one training value");
    if (!std::is_sorted(sorted_.begin(), sorted_.end()))
        throw Error(ErrorCode::InvalidModel, "score function training values must be sorted");
}

double ScoreFunction::operator()(double v) const noexcept
{
    std::size_t count = 0;
    if (direction_ == Direction::Ascending)
        count = static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), v) - sorted_.begin());
    else
        count = static_cast<std::size_t>(sorted_.end() - std::lower_bound(sorted_.begin(), sorted_.end(), v));
    return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

Direction detect_direction(std::span<const double> column, std::span<const double> anchor)
{
    const double r = pearson(column, anchor);
    if (std::isnan(r))
        return Direction::Ascending;
    return r >= 0.0 ? Direction::Ascending : Direction::Descending;
}

ScoreFunction fit_score(std::span<const double> column, Direction direction)
{
    if (column.empty())
        throw Error(ErrorCode::EmptyColumn, "cannot fit a score function on an empty column");
    if (!std::all_of(column.begin(), column.end(), [](double v) { return std::isfinite(v); }))
        throw Error(ErrorCode::NonFiniteInput, "score column contains NaN or Inf");
    std::vector<double> sorted(column.begin(), column.end());
    std::sort(sorted.begin(), sorted.end());
    return ScoreFunction(std::move(sorted), direction);
}

ScoreMatrix fit_score_matrix(const Eigen::MatrixXd& inputs)
{
    const auto n = inputs.rows();
    const auto k = inputs.cols();
    auto column = [&](Eigen::Index i) {
        return std::span<const double>(inputs.col(i).data(), static_cast<std::size_t>(n));
    };

    ScoreMatrix result;
    result.scores.resize(n, k);
    result.functions.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        auto dir = i == 0 ? Direction::Ascending : detect_direction(column(i), column(0));
        result.functions.push_back(fit_score(column(i), dir));
        const auto& f = result.functions.back();
        for (Eigen::Index j = 0; j < n; ++j)
            result.scores(j, i) = f(inputs(j, i));
    }
    return result;
}

} // namespace aggbench

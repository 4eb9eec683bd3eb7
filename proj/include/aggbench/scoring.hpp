#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace aggbench {

enum class Direction { Ascending, Descending };

std::string_view to_string(Direction d) noexcept;
Direction direction_from_string(std::string_view s);

/// Empirical CDF of one training column.
///
/// Ascending: score(v) = #{training values <= v} / n.
/// Descending: score(v) = #{training values >= v} / n.
///
/// Every training value scores at least 1/n. A query below (ascending) or
/// above (descending) all training values scores 0.
class ScoreFunction {
public:
    ScoreFunction(std::vector<double> sorted_values, Direction direction);

    double operator()(double v) const noexcept;

    Direction direction() const noexcept { return direction_; }
    std::size_t n() const noexcept { return sorted_.size(); }
    std::span<const double> sorted_values() const noexcept { return sorted_; }

    friend bool operator==(const ScoreFunction&, const ScoreFunction&) = default;

private:
    std::vector<double> sorted_;
    Direction direction_;
};

/// Ascending iff Pearson correlation of `column` with `anchor` is >= 0.
/// Constant inputs (correlation undefined) give Ascending.
/// Throws LengthMismatch; requires n >= 2 for a meaningful answer.
Direction detect_direction(std::span<const double> column, std::span<const double> anchor);

/// Throws EmptyColumn on an empty column, NonFiniteInput on NaN or Inf.
ScoreFunction fit_score(std::span<const double> column, Direction direction);

inline double apply_score(const ScoreFunction& f, double v) noexcept { return f(v); }

struct ScoreMatrix {
    /// n x k, scores(j, i) = functions[i](x(j, i))
    Eigen::MatrixXd scores;
    std::vector<ScoreFunction> functions;
};

/// Fit one score function per input column, directions anchored on column 0.
ScoreMatrix fit_score_matrix(const Eigen::MatrixXd& inputs);

} // namespace aggbench

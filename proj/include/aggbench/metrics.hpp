#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aggbench {

/// Ascending fractional ranks (ties share the average position).
class Ranking {
public:
    Ranking() = default;
    explicit Ranking(std::span<const double> values);

    std::span<const double> ranks() const noexcept { return ranks_; }
    std::size_t size() const noexcept { return ranks_.size(); }

private:
    std::vector<double> ranks_;
};

/// Spearman's rho. NaN when either argument is constant.
/// Throws LengthMismatch.
double spearman_rho(std::span<const double> a, std::span<const double> b);

/// Number of discordant pairs; a pair tied in either ranking is not
/// discordant. O(n log n) via merge-sort inversion counting.
std::uint64_t discordant_pairs(std::span<const double> a, std::span<const double> b);

/// Discordant pairs / (n (n - 1) / 2), in [0, 1]. NaN when n < 2.
/// Throws LengthMismatch.
double kendall_tau_distance(const Ranking& a, const Ranking& b);

/// Mean Kendall tau distance between `output` and each input ranking.
/// Throws LengthMismatch.
double kemeny_distance(const Ranking& output, std::span<const Ranking> inputs);

/// Distinct outputs / distinct input rows, distinctness by exact bit pattern.
/// Throws LengthMismatch.
double sensitivity_ratio(std::span<const double> outputs, const Eigen::MatrixXd& input_rows);

std::size_t count_distinct(std::span<const double> values);
std::size_t count_distinct_rows(const Eigen::MatrixXd& rows);

namespace flags {
inline constexpr std::uint32_t constant_output = 1u << 0;
inline constexpr std::uint32_t constant_response = 1u << 1;
inline constexpr std::uint32_t too_few_rows = 1u << 2;
} // namespace flags

struct MeasureSet {
    /// Spearman's rho between output and response.
    double predictive_power = 0.0;
    /// Kendall tau distance between output and response rankings.
    double similarity = 0.0;
    /// Kemeny distance (mean over inputs) between output and input rankings.
    double consensus = 0.0;
    /// Distinct outputs / distinct input rows.
    double sensitivity = 0.0;
    std::uint32_t flags = 0;
};

/// Comma-free, semicolon-separated flag names ("constant_output;...").
std::string describe_flags(std::uint32_t f);

/// Precomputes the input rankings, response ranking and distinct-row count
/// of one dataset so several aggregation outputs can be scored against it.
class Evaluator {
public:
    /// `inputs` is n x k; `response` may be empty for internal-only use.
    Evaluator(const Eigen::MatrixXd& inputs, std::span<const double> response);

    /// All four measures. External measures are NaN without a response.
    /// An undefined predictive power (constant output or constant response)
    /// is recorded as 0 and flagged. With n < 2 every measure except
    /// sensitivity is NaN and too_few_rows is set.
    MeasureSet operator()(std::span<const double> outputs) const;

    std::size_t n() const noexcept { return n_; }
    std::size_t distinct_rows() const noexcept { return distinct_rows_; }

private:
    std::size_t n_;
    std::vector<Ranking> input_rankings_;
    std::vector<double> response_;
    Ranking response_ranking_;
    bool response_constant_ = false;
    std::size_t distinct_rows_;
};

MeasureSet evaluate(std::span<const double> outputs, std::span<const double> response, const Eigen::MatrixXd& inputs);

} // namespace aggbench

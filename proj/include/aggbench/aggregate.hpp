#pragma once

#include "aggbench/ingest.hpp"
#include "aggbench/scoring.hpp"
#include "aggbench/solver.hpp"
#include "aggbench/weights.hpp"

#include <Eigen/Core>

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace aggbench {

enum class Kind { Prod, Min, Max, Sum, Wsm, Wpm, Reg };

inline constexpr std::array<Kind, 7> all_kinds{Kind::Prod, Kind::Min, Kind::Max, Kind::Sum, Kind::Wsm, Kind::Wpm, Kind::Reg};

/// Upper-case name as used in reports ("PROD", ..., "REG").
std::string_view to_string(Kind kind) noexcept;
/// Case-insensitive parse. Throws InvalidConfig.
Kind kind_from_string(std::string_view name);
/// Comma-separated list, e.g. "wpm,wsm,reg".
std::vector<Kind> parse_kind_list(std::string_view list);

constexpr bool is_basic(Kind kind) noexcept
{
    return kind == Kind::Prod || kind == Kind::Min || kind == Kind::Max || kind == Kind::Sum;
}
constexpr bool is_supervised(Kind kind) noexcept { return kind == Kind::Reg; }

struct FitOptions {
    DominanceOptions dominance;
    double solver_tolerance = 1e-9;
    std::size_t solver_max_iterations = 50000;
};

/// A fitted aggregation. Immutable once built; predict is reentrant.
///
///   PROD  prod x_i          WSM  sum w_i s_i(x_i)
///   MIN   min x_i           WPM  prod s_i(x_i)^w_i
///   MAX   max x_i           REG  sum w_i x_i
///   SUM   sum x_i
///
/// WPM evaluates exp(sum w_i log s_i) with each score clamped to at least
/// 1 / (2n), n the training size, so unseen values below the training range
/// do not annihilate the product.
class AggregationModel {
public:
    static AggregationModel basic(Kind kind, std::size_t k);
    static AggregationModel weighted_scoring(Kind kind, std::vector<ScoreFunction> functions, WeightVector weights);
    static AggregationModel regression(std::vector<double> weights, double objective = 0.0, std::size_t iterations = 0,
        bool converged = true);

    Kind kind() const noexcept { return kind_; }
    std::size_t k() const noexcept { return k_; }
    const std::vector<ScoreFunction>& score_functions() const noexcept { return functions_; }
    /// WSM/WPM: learned weights; REG: simplex weights; basic kinds: empty.
    std::span<const double> weights() const noexcept;
    const std::optional<WeightVector>& weight_parts() const noexcept { return weight_parts_; }
    double wpm_floor() const noexcept { return wpm_floor_; }

    struct RegressionFit {
        double objective = 0.0;
        std::size_t iterations = 0;
        bool converged = true;
    };
    const RegressionFit& regression_fit() const noexcept { return regression_fit_; }

    /// Throws ArityMismatch.
    double predict(std::span<const double> row) const;
    /// One output per row of `inputs`. Throws ArityMismatch.
    Eigen::VectorXd predict_all(const Eigen::MatrixXd& inputs) const;

private:
    AggregationModel(Kind kind, std::size_t k)
        : kind_(kind)
        , k_(k)
    {
    }

    Kind kind_;
    std::size_t k_;
    std::vector<ScoreFunction> functions_;
    std::optional<WeightVector> weight_parts_;
    std::vector<double> reg_weights_;
    RegressionFit regression_fit_;
    double wpm_floor_ = 0.0;
};

/// Fit an unsupervised kind (PROD, MIN, MAX, SUM, WSM, WPM). Only the input
/// matrix is visible here. Throws InvalidConfig for REG.
AggregationModel fit_unsupervised(Kind kind, const Eigen::MatrixXd& inputs, const FitOptions& options = {});

/// Fit REG: simplex-constrained least squares of the min-max scaled response
/// on the inputs. A constant response is used as is.
AggregationModel fit_regression(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& response, const FitOptions& options = {});

/// Dispatches on kind; only REG reads d.response. Throws MissingResponse for
/// REG without a response.
AggregationModel fit(Kind kind, const Dataset& d, const FitOptions& options = {});

inline double predict(const AggregationModel& m, std::span<const double> row) { return m.predict(row); }
Eigen::VectorXd predict_all(const AggregationModel& m, const Dataset& d);

} // namespace aggbench

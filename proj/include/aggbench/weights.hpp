#pragma once

#include "aggbench/scoring.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace aggbench {

/// Learned weights for WSM and WPM together with the two factors they were
/// built from. All three vectors are on the probability simplex.
struct WeightVector {
    std::vector<double> weights;
    std::vector<double> entropy_parts;
    std::vector<double> dependency_parts;

    std::size_t k() const noexcept { return weights.size(); }
};

/// Joint dominance ranking over score rows.
///
/// r_values[j] = #{rows j' : scores(j', i) <= scores(j, i) for all i} / m
/// where m is the number of rows evaluated. When the row count exceeds the
/// subsampling cap, only the rows listed in `rows` take part (both as the
/// ranked rows and as the reference population).
struct DominanceRanking {
    std::vector<std::size_t> rows;
    Eigen::VectorXd r_values;
    /// The score matrix restricted to `rows`.
    Eigen::MatrixXd r_i_values;
};

struct DominanceOptions {
    /// Row count above which dominance is computed on a random subsample.
    std::size_t cap = 20000;
    /// Ignore the cap and always use every row.
    bool exact = false;
    std::uint64_t seed = 0;
};

/// Shannon entropy of the distribution of distinct values in `column`,
/// -sum_v p(v) log p(v) with p(v) the relative frequency of v.
/// `log_base` defaults to e; throws InvalidConfig unless it is above 1.
double entropy(std::span<const double> column, double log_base = std::exp(1.0));

/// H_i / sum H. Falls back to uniform 1/k (with a warning) when every column
/// has zero entropy.
std::vector<double> entropy_weights(const Eigen::MatrixXd& scores, double log_base = std::exp(1.0));

DominanceRanking dominance_rank(const Eigen::MatrixXd& scores, const DominanceOptions& options = {});

/// rho_i = |spearman(score column i, r)| restricted to the ranked rows.
/// An undefined correlation (constant column) counts as 0.
std::vector<double> dependency_rhos(const DominanceRanking& ranking);

/// (1 - rho_i) / (k - sum rho). Falls back to uniform 1/k (with a warning)
/// when sum rho is within 1e-12 of k.
std::vector<double> dependency_weights_from_rhos(std::span<const double> rhos);

std::vector<double> dependency_weights(const DominanceRanking& ranking);

/// Normalised elementwise product. Falls back to uniform 1/k (with a warning)
/// when every product is zero. Throws LengthMismatch.
WeightVector combine_weights(std::span<const double> entropy_parts, std::span<const double> dependency_parts);

/// Entropy and dependency weights of a fitted score matrix, combined.
WeightVector learn_weights(const ScoreMatrix& s, const DominanceOptions& options = {});

} // namespace aggbench

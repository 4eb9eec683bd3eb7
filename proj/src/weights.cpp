#include "aggbench/weights.hpp"
#include "aggbench/error.hpp"
#include "aggbench/log.hpp"
#include "aggbench/stats.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace aggbench {

namespace {

std::vector<double> uniform(std::size_t k)
{
    return std::vector<double>(k, 1.0 / static_cast<double>(k));
}

std::span<const double> column_span(const Eigen::MatrixXd& m, Eigen::Index i)
{
    return {m.col(i).data(), static_cast<std::size_t>(m.rows())};
}

// Indices of `count` rows out of `n`, drawn uniformly without replacement and
// returned in ascending order.
std::vector<std::size_t> sample_rows(std::size_t n, std::size_t count, std::uint64_t seed)
{
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace

double entropy(std::span<const double> column, double log_base)
{
    if (!(log_base > 1.0) || !std::isfinite(log_base))
        throw Error(ErrorCode::InvalidConfig, "entropy log base must be a finite number above 1");
    if (column.empty())
        return 0.0;
    std::vector<double> sorted(column.begin(), column.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double h = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        const double p = static_cast<double>(j - i) / n;
        h -= p * std::log(p);
        i = j;
    }
    // p = 1 for a single atom gives -0.0
    return h <= 0.0 ? 0.0 : h / std::log(log_base);
}

std::vector<double> entropy_weights(const Eigen::MatrixXd& scores, double log_base)
{
    const auto k = static_cast<std::size_t>(scores.cols());
    std::vector<double> h(k);
    for (std::size_t i = 0; i < k; ++i)
        h[i] = entropy(column_span(scores, static_cast<Eigen::Index>(i)), log_base);
    const double total = std::accumulate(h.begin(), h.end(), 0.0);
    if (!(total > 0.0)) {
        warn("AllZeroEntropy: every score column is constant, using uniform entropy weights");
        return uniform(k);
    }
    for (auto& v : h)
        v /= total;
    return h;
}

DominanceRanking dominance_rank(const Eigen::MatrixXd& scores, const DominanceOptions& options)
{
    const auto n = static_cast<std::size_t>(scores.rows());
    const auto k = static_cast<std::size_t>(scores.cols());

    DominanceRanking out;
    if (!options.exact && n > options.cap && options.cap > 0) {
        out.rows = sample_rows(n, options.cap, options.seed);
    } else {
        out.rows.resize(n);
        std::iota(out.rows.begin(), out.rows.end(), std::size_t{0});
    }
    const std::size_t m = out.rows.size();

    out.r_i_values.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < m; ++j)
        out.r_i_values.row(static_cast<Eigen::Index>(j)) = scores.row(static_cast<Eigen::Index>(out.rows[j]));

    // row-major copy so the inner comparison walks contiguous memory
    std::vector<double> rows(m * k);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < k; ++i)
            rows[j * k + i] = out.r_i_values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));

    out.r_values.resize(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
        const double* top = &rows[j * k];
        std::size_t count = 0;
        for (std::size_t other = 0; other < m; ++other) {
            const double* below = &rows[other * k];
            std::size_t i = 0;
            while (i < k && below[i] <= top[i])
                ++i;
            count += i == k;
        }
        out.r_values(static_cast<Eigen::Index>(j)) = static_cast<double>(count) / static_cast<double>(m);
    }
    return out;
}

std::vector<double> dependency_rhos(const DominanceRanking& ranking)
{
    const auto k = static_cast<std::size_t>(ranking.r_i_values.cols());
    std::span<const double> r(ranking.r_values.data(), static_cast<std::size_t>(ranking.r_values.size()));
    std::vector<double> rhos(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double rho = spearman(column_span(ranking.r_i_values, static_cast<Eigen::Index>(i)), r);
        rhos[i] = std::isnan(rho) ? 0.0 : std::clamp(std::abs(rho), 0.0, 1.0);
    }
    return rhos;
}

std::vector<double> dependency_weights_from_rhos(std::span<const double> rhos)
{
    const std::size_t k = rhos.size();
    const double denom = static_cast<double>(k) - std::accumulate(rhos.begin(), rhos.end(), 0.0);
    if (denom <= 1e-12) {
        warn("DegenerateDependency: every column determines the joint ranking, using uniform dependency weights");
        return uniform(k);
    }
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i)
        w[i] = (1.0 - rhos[i]) / denom;
    return w;
}

std::vector<double> dependency_weights(const DominanceRanking& ranking)
{
    return dependency_weights_from_rhos(dependency_rhos(ranking));
}

WeightVector combine_weights(std::span<const double> entropy_parts, std::span<const double> dependency_parts)
{
    if (entropy_parts.size() != dependency_parts.size())
        throw Error(ErrorCode::LengthMismatch, "entropy and dependency weights differ in length");
    const std::size_t k = entropy_parts.size();
    WeightVector out;
    out.entropy_parts.assign(entropy_parts.begin(), entropy_parts.end());
    out.dependency_parts.assign(dependency_parts.begin(), dependency_parts.end());
    out.weights.resize(k);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        out.weights[i] = entropy_parts[i] * dependency_parts[i];
        total += out.weights[i];
    }
    if (!(total > 0.0)) {
        warn("ZeroProduct: entropy and dependency weights have disjoint support, using uniform weights");
        out.weights = uniform(k);
        return out;
    }
    for (auto& w : out.weights)
        w /= total;
    return out;
}

WeightVector learn_weights(const ScoreMatrix& s, const DominanceOptions& options)
{
    auto ent = entropy_weights(s.scores);
    auto ranking = dominance_rank(s.scores, options);
    auto dep = dependency_weights(ranking);
    return combine_weights(ent, dep);
}

} // namespace aggbench

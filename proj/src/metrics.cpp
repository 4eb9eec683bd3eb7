#include "aggbench/metrics.hpp"
#include "aggbench/error.hpp"
#include "aggbench/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace aggbench {

namespace {

void check_lengths(std::size_t a, std::size_t b)
{
    if (a != b)
        throw Error(ErrorCode::LengthMismatch, "lengths " + std::to_string(a) + " and " + std::to_string(b));
}

// Pairs i < j with seq[i] > seq[j]; sorts seq.
std::uint64_t count_strict_inversions(std::vector<double>& seq)
{
    std::vector<double> buffer(seq.size());
    std::uint64_t inversions = 0;
    for (std::size_t width = 1; width < seq.size(); width *= 2) {
        for (std::size_t lo = 0; lo < seq.size(); lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, seq.size());
            const std::size_t hi = std::min(lo + 2 * width, seq.size());
            std::size_t i = lo, j = mid, out = lo;
            while (i < mid && j < hi) {
                if (seq[i] <= seq[j]) {
                    buffer[out++] = seq[i++];
                } else {
                    inversions += mid - i;
                    buffer[out++] = seq[j++];
                }
            }
            while (i < mid)
                buffer[out++] = seq[i++];
            while (j < hi)
                buffer[out++] = seq[j++];
        }
        std::swap(seq, buffer);
    }
    return inversions;
}

} // namespace

Ranking::Ranking(std::span<const double> values)
    : ranks_(fractional_ranks(values))
{
}

double spearman_rho(std::span<const double> a, std::span<const double> b) { return spearman(a, b); }

std::uint64_t discordant_pairs(std::span<const double> a, std::span<const double> b)
{
    check_lengths(a.size(), b.size());
    std::vector<std::size_t> order(a.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // ties in a are ordered by b so they never form a strict inversion
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a[x] < a[y] || (a[x] == a[y] && b[x] < b[y]);
    });
    std::vector<double> seq(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        seq[i] = b[order[i]];
    return count_strict_inversions(seq);
}

double kendall_tau_distance(const Ranking& a, const Ranking& b)
{
    check_lengths(a.size(), b.size());
    const std::size_t n = a.size();
    if (n < 2)
        return std::nan("");
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(discordant_pairs(a.ranks(), b.ranks())) / pairs;
}

double kemeny_distance(const Ranking& output, std::span<const Ranking> inputs)
{
    if (inputs.empty())
        return std::nan("");
    double total = 0.0;
    for (const auto& r : inputs)
        total += kendall_tau_distance(output, r);
    return total / static_cast<double>(inputs.size());
}

std::size_t count_distinct(std::span<const double> values)
{
    std::vector<std::uint64_t> bits(values.size());
    std::transform(values.begin(), values.end(), bits.begin(), [](double v) { return std::bit_cast<std::uint64_t>(v); });
    std::sort(bits.begin(), bits.end());
    return static_cast<std::size_t>(std::unique(bits.begin(), bits.end()) - bits.begin());
}

std::size_t count_distinct_rows(const Eigen::MatrixXd& rows)
{
    const auto n = static_cast<std::size_t>(rows.rows());
    const auto k = static_cast<std::size_t>(rows.cols());
    std::vector<std::uint64_t> bits(n * k);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < k; ++i)
            bits[j * k + i] = std::bit_cast<std::uint64_t>(rows(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)));
    auto row_less = [&](std::size_t x, std::size_t y) {
        return std::lexicographical_compare(&bits[x * k], &bits[x * k] + k, &bits[y * k], &bits[y * k] + k);
    };
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), row_less);
    std::size_t distinct = n == 0 ? 0 : 1;
    for (std::size_t t = 1; t < n; ++t)
        distinct += row_less(order[t - 1], order[t]) ? 1 : 0;
    return distinct;
}

double sensitivity_ratio(std::span<const double> outputs, const Eigen::MatrixXd& input_rows)
{
    check_lengths(outputs.size(), static_cast<std::size_t>(input_rows.rows()));
    const std::size_t rows = count_distinct_rows(input_rows);
    if (rows == 0)
        return std::nan("");
    return static_cast<double>(count_distinct(outputs)) / static_cast<double>(rows);
}

std::string describe_flags(std::uint32_t f)
{
    std::string out;
    auto add = [&](std::uint32_t bit, const char* name) {
        if ((f & bit) == 0)
            return;
        if (!out.empty())
            out += ';';
        out += name;
    };
    add(flags::constant_output, "constant_output");
    add(flags::constant_response, "constant_response");
    add(flags::too_few_rows, "too_few_rows");
    return out;
}

Evaluator::Evaluator(const Eigen::MatrixXd& inputs, std::span<const double> response)
    : n_(static_cast<std::size_t>(inputs.rows()))
    , response_(response.begin(), response.end())
    , response_ranking_(response)
    , distinct_rows_(count_distinct_rows(inputs))
{
    if (!response.empty())
        check_lengths(response.size(), n_);
    input_rankings_.reserve(static_cast<std::size_t>(inputs.cols()));
    for (Eigen::Index i = 0; i < inputs.cols(); ++i)
        input_rankings_.emplace_back(std::span<const double>(inputs.col(i).data(), n_));
    response_constant_ = !response.empty() && is_constant(response);
}

MeasureSet Evaluator::operator()(std::span<const double> outputs) const
{
    check_lengths(outputs.size(), n_);
    MeasureSet m;
    m.sensitivity = distinct_rows_ == 0 ? std::nan("") : static_cast<double>(count_distinct(outputs)) / static_cast<double>(distinct_rows_);
    if (n_ < 2) {
        m.predictive_power = m.similarity = m.consensus = std::nan("");
        m.flags |= flags::too_few_rows;
        return m;
    }
    const Ranking output_ranking(outputs);
    m.consensus = kemeny_distance(output_ranking, input_rankings_);
    if (response_.empty()) {
        m.predictive_power = m.similarity = std::nan("");
        return m;
    }
    m.similarity = kendall_tau_distance(output_ranking, response_ranking_);
    const bool constant_output = is_constant(outputs);
    if (constant_output)
        m.flags |= flags::constant_output;
    if (response_constant_)
        m.flags |= flags::constant_response;
    if (constant_output || response_constant_)
        m.predictive_power = 0.0;
    else
        m.predictive_power = pearson(output_ranking.ranks(), response_ranking_.ranks());
    return m;
}

MeasureSet evaluate(std::span<const double> outputs, std::span<const double> response, const Eigen::MatrixXd& inputs)
{
    return Evaluator(inputs, response)(outputs);
}

} // namespace aggbench

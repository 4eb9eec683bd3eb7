#include "aggbench/stats.hpp"
#include "aggbench/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace aggbench {

namespace {
void check_lengths(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::LengthMismatch,
            "vectors of length " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
}
} // namespace

bool is_constant(std::span<const double> values) noexcept
{
    return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
}

double pearson(std::span<const double> a, std::span<const double> b)
{
    check_lengths(a, b);
    const std::size_t n = a.size();
    if (n < 2 || is_constant(a) || is_constant(b))
        return std::nan("");
    const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
    const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double da = a[j] - mean_a;
        const double db = b[j] - mean_b;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0)
        return std::nan("");
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> values)
{
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]])
            ++j;
        // positions i..j-1 (0-based) hold ranks i+1..j
        const double rank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t)
            ranks[order[t]] = rank;
        i = j;
    }
    return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b)
{
    check_lengths(a, b);
    auto ra = fractional_ranks(a);
    auto rb = fractional_ranks(b);
    return pearson(ra, rb);
}

} // namespace aggbench

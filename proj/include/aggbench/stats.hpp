#pragma once

#include <span>
#include <vector>

namespace aggbench {

// Pearson correlation. NaN when either vector is constant or n < 2.
// Throws Error(LengthMismatch) on unequal lengths.
double pearson(std::span<const double> a, std::span<const double> b);

// 1-based ascending ranks; tied values share the average of their positions.
std::vector<double> fractional_ranks(std::span<const double> values);

// Pearson correlation of fractional ranks. NaN when either vector is constant.
double spearman(std::span<const double> a, std::span<const double> b);

bool is_constant(std::span<const double> values) noexcept;

} // namespace aggbench

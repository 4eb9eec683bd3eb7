#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

namespace aggbench {

/// minimize ||X w - y||^2 subject to w >= 0, sum w = 1.
struct SimplexLsProblem {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    /// Stop once the norm of the projected-gradient mapping falls below
    /// tolerance * max(1, norm of the gradient at the starting point).
    double tolerance = 1e-9;
    std::size_t max_iterations = 50000;
};

struct SimplexLsResult {
    std::vector<double> weights;
    double objective = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Euclidean projection onto the probability simplex (sort and threshold).
std::vector<double> project_to_simplex(std::span<const double> v);

/// Projected gradient descent from the uniform point with step 1/L, L the
/// largest eigenvalue of 2 X^T X estimated by 100 power iterations. The step
/// is shortened whenever an iterate would increase the objective, so the
/// objective never increases. The returned weights are always feasible; their
/// left-to-right floating-point sum is exactly 1 whenever that is
/// representable by nudging the largest weight.
///
/// Throws NonFiniteInput, LengthMismatch.
SimplexLsResult solve_simplex_ls(const SimplexLsProblem& p);

/// Same, starting from `start` (projected onto the simplex first).
SimplexLsResult solve_simplex_ls(const SimplexLsProblem& p, std::span<const double> start);

double simplex_ls_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::span<const double> w);

} // namespace aggbench

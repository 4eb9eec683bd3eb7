#include "aggbench/solver.hpp"
#include "aggbench/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace aggbench {

namespace {

Eigen::VectorXd to_vector(std::span<const double> v)
{
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

double largest_eigenvalue(const Eigen::MatrixXd& sym)
{
    const auto k = sym.rows();
    Eigen::VectorXd v(k);
    for (Eigen::Index i = 0; i < k; ++i)
        v(i) = 1.0 + 0.01 * static_cast<double>(i);
    v.normalize();
    double lambda = 0.0;
    for (int step = 0; step < 100; ++step) {
        Eigen::VectorXd next = sym * v;
        const double norm = next.norm();
        if (!(norm > 0.0))
            return 0.0;
        v = next / norm;
        lambda = v.dot(sym * v);
    }
    return lambda;
}

// Nudge the largest entry until the sequential sum is exactly 1 in floating
// point. The entries stay non-negative.
void snap_sum_to_one(std::vector<double>& w)
{
    for (int attempt = 0; attempt < 8; ++attempt) {
        double s = 0.0;
        for (double v : w)
            s += v;
        if (s == 1.0)
            return;
        auto largest = std::max_element(w.begin(), w.end());
        *largest = std::max(0.0, *largest + (1.0 - s));
    }
}

} // namespace

std::vector<double> project_to_simplex(std::span<const double> v)
{
    const std::size_t k = v.size();
    if (k == 0)
        return {};
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        cumulative += u[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0)
            theta = t;
    }
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i)
        w[i] = std::max(v[i] - theta, 0.0);
    return w;
}

double simplex_ls_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::span<const double> w)
{
    return (X * to_vector(w) - y).squaredNorm();
}

SimplexLsResult solve_simplex_ls(const SimplexLsProblem& p)
{
    const auto k = static_cast<std::size_t>(p.X.cols());
    std::vector<double> start(k, k == 0 ? 0.0 : 1.0 / static_cast<double>(k));
    return solve_simplex_ls(p, start);
}

SimplexLsResult solve_simplex_ls(const SimplexLsProblem& p, std::span<const double> start)
{
    if (p.X.rows() != p.y.size())
        throw Error(ErrorCode::LengthMismatch, "X has " + std::to_string(p.X.rows()) + " rows but y has "
                + std::to_string(p.y.size()) + " entries");
    if (static_cast<Eigen::Index>(start.size()) != p.X.cols())
        throw Error(ErrorCode::LengthMismatch, "starting point has the wrong length");
    if (p.X.cols() == 0)
        throw Error(ErrorCode::LengthMismatch, "problem has no columns");
    if (!p.X.allFinite() || !p.y.allFinite())
        throw Error(ErrorCode::NonFiniteInput, "X or y contains NaN or Inf");

    // f(w) = w'Gw - 2b'w + c, gradient 2(Gw - b)
    const Eigen::MatrixXd gram = p.X.transpose() * p.X;
    const Eigen::VectorXd xty = p.X.transpose() * p.y;
    const double yty = p.y.squaredNorm();
    auto objective = [&](const Eigen::VectorXd& w) { return w.dot(gram * w) - 2.0 * xty.dot(w) + yty; };
    auto gradient = [&](const Eigen::VectorXd& w) -> Eigen::VectorXd { return 2.0 * (gram * w - xty); };

    SimplexLsResult result;
    Eigen::VectorXd w = to_vector(project_to_simplex(start));
    double lipschitz = largest_eigenvalue(2.0 * gram);

    if (lipschitz > 0.0) {
        double f = objective(w);
        const double threshold = p.tolerance * std::max(1.0, gradient(w).norm());
        while (result.iterations < p.max_iterations) {
            const Eigen::VectorXd g = gradient(w);
            Eigen::VectorXd trial = w - g / lipschitz;
            Eigen::VectorXd next = to_vector(project_to_simplex(std::span<const double>(trial.data(), static_cast<std::size_t>(trial.size()))));
            const double step_norm = lipschitz * (next - w).norm();
            ++result.iterations;
            if (step_norm <= threshold) {
                result.converged = true;
                break;
            }
            const double f_next = objective(next);
            if (f_next > f + 1e-12 * std::max(1.0, std::abs(f))) {
                lipschitz *= 2.0;
                continue;
            }
            w = std::move(next);
            f = f_next;
        }
    } else {
        result.converged = true;
    }

    result.weights = to_std(w);
    snap_sum_to_one(result.weights);
    result.objective = simplex_ls_objective(p.X, p.y, result.weights);
    return result;
}

} // namespace aggbench

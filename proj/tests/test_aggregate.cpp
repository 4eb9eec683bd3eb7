#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aggbench/aggregate.hpp"
#include "aggbench/error.hpp"
#include "aggbench/log.hpp"
#include "aggbench/metrics.hpp"

#include <numeric>
#include <random>

using namespace aggbench;
using doctest::Approx;

namespace {

Eigen::MatrixXd uniform_matrix(std::mt19937_64& rng, Eigen::Index n, Eigen::Index k)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd x(n, k);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < k; ++i)
            x(j, i) = u(rng);
    return x;
}

std::vector<AggregationModel> fitted_models(const Eigen::MatrixXd& x, const Eigen::VectorXd& y)
{
    std::vector<AggregationModel> models;
    for (Kind kind : all_kinds)
        models.push_back(kind == Kind::Reg ? fit_regression(x, y) : fit_unsupervised(kind, x));
    return models;
}

} // namespace

TEST_CASE("names")
{
    CHECK(to_string(Kind::Wpm) == "WPM");
    CHECK(kind_from_string("wsm") == Kind::Wsm);
    CHECK(parse_kind_list("wpm, WSM,reg,wpm") == std::vector<Kind>{Kind::Wpm, Kind::Wsm, Kind::Reg});
    CHECK_THROWS_AS(kind_from_string("avg"), Error);
}

TEST_CASE("basic kinds: examples and boundaries")
{
    auto prod = AggregationModel::basic(Kind::Prod, 3);
    auto min = AggregationModel::basic(Kind::Min, 3);
    auto max = AggregationModel::basic(Kind::Max, 3);
    auto sum = AggregationModel::basic(Kind::Sum, 3);
    std::vector<double> ones{1, 1, 1}, zeros{0, 0, 0}, row{0.2, 0.5, 0.9};
    for (const auto* m : {&prod, &min, &max}) {
        CHECK(m->predict(ones) == 1.0);
        CHECK(m->predict(zeros) == 0.0);
        CHECK(m->weights().empty());
        CHECK(m->score_functions().empty());
    }
    CHECK(sum.predict(zeros) == 0.0);
    CHECK(sum.predict(ones) == 3.0);
    CHECK(sum.predict(row) == Approx(1.6));
    CHECK(prod.predict(row) == Approx(0.09));
    CHECK(min.predict(row) == 0.2);
    CHECK(max.predict(row) == 0.9);

    Eigen::MatrixXd rows(2, 2);
    rows << 0.1, 0.9, 0.1, 0.8;
    auto m2 = AggregationModel::basic(Kind::Min, 2);
    CHECK(m2.predict_all(rows) == Eigen::Vector2d(0.1, 0.1));
}

TEST_CASE("out-of-range input to basic kinds is accepted")
{
    WarningCapture capture;
    auto sum = AggregationModel::basic(Kind::Sum, 2);
    CHECK(sum.predict(std::vector<double>{2.0, -1.0}) == 1.0);
}

TEST_CASE("WPM hand example")
{
    // one training column per input, weights fixed to (0.5, 0.5)
    std::vector<ScoreFunction> fs{ScoreFunction({0.1, 0.2, 0.3, 0.4}, Direction::Ascending),
        ScoreFunction({0.1, 0.2, 0.3, 0.4}, Direction::Ascending)};
    WeightVector w{{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}};
    auto wpm = AggregationModel::weighted_scoring(Kind::Wpm, fs, w);
    // scores 0.25 and 1
    CHECK(wpm.predict(std::vector<double>{0.1, 0.4}) == Approx(0.5));
    CHECK(wpm.wpm_floor() == 1.0 / 8.0);
    // below the training range: clamped, never zero
    CHECK(wpm.predict(std::vector<double>{0.0, 0.4}) == Approx(std::sqrt(0.125)));

    auto wsm = AggregationModel::weighted_scoring(Kind::Wsm, fs, w);
    CHECK(wsm.predict(std::vector<double>{0.1, 0.4}) == Approx(0.625));
}

TEST_CASE("REG examples")
{
    auto reg = AggregationModel::regression({0.5, 0.5});
    Eigen::MatrixXd rows(2, 2);
    rows << 0, 0, 1, 1;
    CHECK(reg.predict_all(rows) == Eigen::Vector2d(0, 1));

    std::mt19937_64 rng(1);
    Eigen::MatrixXd x = uniform_matrix(rng, 50, 2);
    x(0, 1) = 0.0;
    x(1, 1) = 1.0;
    Eigen::VectorXd y = x.col(1);
    auto fitted = fit_regression(x, y);
    CHECK(fitted.weights()[0] == Approx(0.0).epsilon(1e-6));
    CHECK(fitted.weights()[1] == Approx(1.0).epsilon(1e-6));

    Dataset d{x, std::nullopt, {"a", "b"}};
    try {
        fit(Kind::Reg, d);
        FAIL("expected MissingResponse");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingResponse);
    }
}

TEST_CASE("WSM on identical columns is symmetric")
{
    std::mt19937_64 rng(6);
    Eigen::MatrixXd x(40, 2);
    x.col(0) = uniform_matrix(rng, 40, 1);
    x.col(1) = x.col(0);
    auto m = fit_unsupervised(Kind::Wsm, x);
    CHECK(m.weights()[0] == Approx(0.5));
    CHECK(m.weights()[1] == Approx(0.5));
    auto out = m.predict_all(x);
    CHECK(out.minCoeff() > 0.0);
    CHECK(out.maxCoeff() <= 1.0);
}

TEST_CASE("arity is enforced")
{
    auto m = AggregationModel::basic(Kind::Max, 3);
    try {
        m.predict(std::vector<double>{1, 2});
        FAIL("expected ArityMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ArityMismatch);
    }
    CHECK_THROWS_AS(m.predict_all(Eigen::MatrixXd::Zero(2, 4)), Error);
}

TEST_CASE("monotonicity, bounds and simplex weights on random data")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Eigen::Index k : {2, 5, 9}) {
        auto x = uniform_matrix(rng, 80, k);
        Eigen::VectorXd y = x.rowwise().mean() + 0.05 * uniform_matrix(rng, 80, 1);
        auto models = fitted_models(x, y);
        for (const auto& m : models) {
            if (!is_basic(m.kind())) {
                double total = 0.0;
                for (double w : m.weights()) {
                    CHECK(w >= 0.0);
                    total += w;
                }
                CHECK(std::abs(total - 1.0) <= 1e-9);
            }
        }
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> row(static_cast<std::size_t>(k));
            for (auto& v : row)
                v = u(rng);
            const auto i = static_cast<std::size_t>(trial) % row.size();
            for (const auto& m : models) {
                std::vector<double> raised(row);
                const bool descending = !m.score_functions().empty() && m.score_functions()[i].direction() == Direction::Descending;
                raised[i] = descending ? u(rng) * row[i] : row[i] + u(rng) * (1.0 - row[i]);
                CHECK(m.predict(raised) >= m.predict(row));
            }
            const double lo = *std::min_element(row.begin(), row.end());
            const double hi = *std::max_element(row.begin(), row.end());
            CHECK(models[0].predict(row) <= lo);
            CHECK(models[1].predict(row) <= lo);
            CHECK(models[2].predict(row) >= hi);
            CHECK(models[3].predict(row) >= hi);
        }
        std::vector<double> ones(static_cast<std::size_t>(k), 1.0), zeros(static_cast<std::size_t>(k), 0.0);
        CHECK(models[6].predict(ones) == 1.0);
        CHECK(models[6].predict(zeros) == 0.0);
    }
}

TEST_CASE("SUM and the mean rank identically")
{
    std::mt19937_64 rng(13);
    auto x = uniform_matrix(rng, 100, 4);
    auto sum = AggregationModel::basic(Kind::Sum, 4).predict_all(x);
    Eigen::VectorXd mean = x.rowwise().mean();
    CHECK(kendall_tau_distance(Ranking({sum.data(), 100}), Ranking({mean.data(), 100})) == 0.0);
}

TEST_CASE("unsupervised kinds never see the response")
{
    std::mt19937_64 rng(14);
    auto x = uniform_matrix(rng, 60, 3);
    Dataset a{x, Eigen::VectorXd(x.rowwise().sum()), {"a", "b", "c"}};
    Dataset b = a;
    b.response = uniform_matrix(rng, 60, 1).col(0);
    for (Kind kind : all_kinds) {
        if (is_supervised(kind))
            continue;
        auto ma = fit(kind, a);
        auto mb = fit(kind, b);
        CHECK(ma.score_functions() == mb.score_functions());
        CHECK(std::equal(ma.weights().begin(), ma.weights().end(), mb.weights().begin(), mb.weights().end()));
        CHECK(predict_all(ma, a) == predict_all(mb, b));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aggbench/error.hpp"
#include "aggbench/metrics.hpp"
#include "oracles.hpp"

#include <numeric>
#include <random>

using namespace aggbench;
using doctest::Approx;

namespace {

double kendall(const std::vector<double>& a, const std::vector<double>& b)
{
    return kendall_tau_distance(Ranking(a), Ranking(b));
}

std::vector<double> distinct_values(std::mt19937_64& rng, std::size_t n)
{
    std::vector<double> v(n);
    std::iota(v.begin(), v.end(), 0.0);
    std::shuffle(v.begin(), v.end(), rng);
    return v;
}

} // namespace

TEST_CASE("rankings")
{
    Ranking r(std::vector<double>{0.3, 0.1, 0.3, 0.2});
    std::vector<double> ranks(r.ranks().begin(), r.ranks().end());
    CHECK(ranks == std::vector<double>{3.5, 1, 3.5, 2});
    CHECK(std::accumulate(ranks.begin(), ranks.end(), 0.0) == 10.0);
}

TEST_CASE("spearman examples")
{
    std::vector<double> a{0.3, 1.2, -4, 7, 2};
    std::vector<double> up(a), down(a);
    for (auto& v : up)
        v = 2 * v + 1;
    for (auto& v : down)
        v = -v;
    CHECK(spearman_rho(a, up) == Approx(1.0));
    CHECK(spearman_rho(a, down) == Approx(-1.0));
    CHECK(spearman_rho(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}) == Approx(0.5));
    CHECK(std::isnan(spearman_rho(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3})));
    CHECK_THROWS_AS(spearman_rho(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("kendall examples")
{
    std::vector<double> a{1, 2, 3};
    CHECK(kendall(a, a) == 0.0);
    CHECK(kendall(a, {3, 2, 1}) == 1.0);
    CHECK(kendall(a, {1, 3, 2}) == Approx(1.0 / 3.0));
    CHECK(kendall(a, {2, 2, 2}) == 0.0);
    CHECK(std::isnan(kendall({1}, {1})));
}

TEST_CASE("kendall matches pair enumeration, and its metric properties")
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::size_t> size(2, 100);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = size(rng);
        auto a = oracle::tied_column(rng, n);
        auto b = trial % 3 ? oracle::tied_column(rng, n) : distinct_values(rng, n);
        CHECK(discordant_pairs(a, b) == oracle::naive_discordant(a, b));
        CHECK(kendall(a, b) == oracle::naive_kendall_distance(a, b));
        CHECK(kendall(a, b) == kendall(b, a));
        CHECK(kendall(a, a) == 0.0);
    }
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = size(rng);
        auto a = distinct_values(rng, n), b = distinct_values(rng, n), c = distinct_values(rng, n);
        CHECK(kendall(a, c) <= kendall(a, b) + kendall(b, c) + 1e-15);
        std::vector<double> reversed(a);
        for (auto& v : reversed)
            v = -v;
        CHECK(kendall(a, reversed) == 1.0);
    }
}

TEST_CASE("spearman is invariant under increasing maps and row permutations")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = oracle::tied_column(rng, 50);
        auto b = oracle::tied_column(rng, 50);
        std::vector<double> cubed(a);
        for (auto& v : cubed)
            v = v * v * v + 3.0;
        const double rho = spearman_rho(a, b);
        if (std::isnan(rho))
            continue;
        CHECK(spearman_rho(cubed, b) == Approx(rho).epsilon(1e-12));

        std::vector<std::size_t> perm(50);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> pa(50), pb(50);
        for (std::size_t i = 0; i < 50; ++i) {
            pa[i] = a[perm[i]];
            pb[i] = b[perm[i]];
        }
        CHECK(spearman_rho(pa, pb) == Approx(rho).epsilon(1e-12));
        CHECK(kendall(pa, pb) == kendall(a, b));
    }
}

TEST_CASE("kemeny examples")
{
    Ranking out(std::vector<double>{1, 2, 3, 4, 5});
    std::vector<Ranking> same{out, out, out};
    CHECK(kemeny_distance(out, same) == 0.0);
    std::vector<Ranking> reversed{Ranking(std::vector<double>{5, 4, 3, 2, 1}), Ranking(std::vector<double>{50, 40, 30, 20, 10})};
    CHECK(kemeny_distance(out, reversed) == 1.0);

    // one swap among 5 items is 0.1, two swaps 0.2
    std::vector<Ranking> mixed{Ranking(std::vector<double>{2, 1, 3, 4, 5}), Ranking(std::vector<double>{2, 1, 3, 5, 4})};
    CHECK(kemeny_distance(out, mixed) == Approx(0.15));

    // distances 0.2 and 0.4 over 6 items (3 and 6 of 15 pairs)
    Ranking six(std::vector<double>{1, 2, 3, 4, 5, 6});
    std::vector<Ranking> inputs{Ranking(std::vector<double>{2, 1, 4, 3, 6, 5}), Ranking(std::vector<double>{3, 2, 1, 6, 5, 4})};
    CHECK(kendall_tau_distance(six, inputs[0]) == Approx(0.2));
    CHECK(kendall_tau_distance(six, inputs[1]) == Approx(0.4));
    CHECK(kemeny_distance(six, inputs) == Approx(0.3));
}

TEST_CASE("sensitivity examples")
{
    Eigen::MatrixXd distinct(3, 2);
    distinct << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
    CHECK(sensitivity_ratio(std::vector<double>{0.3, 0.7, 1.1}, distinct) == 1.0);

    Eigen::MatrixXd two(2, 2);
    two << 0.1, 0.9, 0.1, 0.8;
    CHECK(sensitivity_ratio(std::vector<double>{0.1, 0.1}, two) == 0.5);

    Eigen::MatrixXd dup(2, 2);
    dup << 0.4, 0.6, 0.4, 0.6;
    CHECK(sensitivity_ratio(std::vector<double>{0.5, 0.5}, dup) == 1.0);

    CHECK(count_distinct(std::vector<double>{0.0, -0.0, 1.0}) == 3);
    CHECK_THROWS_AS(sensitivity_ratio(std::vector<double>{1.0}, two), Error);
}

TEST_CASE("evaluate")
{
    Eigen::MatrixXd x(4, 2);
    x << 0.1, 0.2, 0.2, 0.1, 0.3, 0.4, 0.4, 0.3;
    std::vector<double> y{1, 2, 3, 4};
    std::vector<double> out{0.15, 0.15, 0.35, 0.35};
    auto m = evaluate(out, y, x);
    CHECK(m.predictive_power == Approx(spearman_rho(out, y)));
    CHECK(m.similarity == 0.0);
    CHECK(m.sensitivity == 0.5);
    CHECK(m.flags == 0);
    // ties in the output never count against it
    CHECK(m.consensus == 0.0);

    std::vector<double> flat{0.5, 0.5, 0.5, 0.5};
    auto c = evaluate(flat, y, x);
    CHECK(c.predictive_power == 0.0);
    CHECK(((c.flags & flags::constant_output) != 0));
    CHECK(describe_flags(c.flags) == "constant_output");
    CHECK(c.sensitivity == 0.25);

    auto r = evaluate(out, flat, x);
    CHECK(r.predictive_power == 0.0);
    CHECK(((r.flags & flags::constant_response) != 0));

    Eigen::MatrixXd single(1, 2);
    single << 0.5, 0.5;
    auto s = evaluate(std::vector<double>{1.0}, std::vector<double>{1.0}, single);
    CHECK(((s.flags & flags::too_few_rows) != 0));
    CHECK(std::isnan(s.similarity));
    CHECK(s.sensitivity == 1.0);

    Evaluator ev(x, y);
    CHECK(ev.n() == 4);
    CHECK(ev.distinct_rows() == 4);
    CHECK(ev(out).consensus == m.consensus);
}

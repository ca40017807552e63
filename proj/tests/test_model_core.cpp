#include <cmath>

#include "doctest.h"
#include "maoii/params.hpp"

using namespace maoii;

TEST_CASE("parameter validation names the offending field") {
    CHECK_THROWS_AS(make_params(1, 0.5, 0.5, 1.0), OutOfRange);
    CHECK_THROWS_AS(make_params(5, 0.0, 0.5, 1.0), OutOfRange);
    CHECK_THROWS_AS(make_params(5, 0.26, 0.5, 1.0), OutOfRange);  // > 1/(N-1)
    CHECK_THROWS_AS(make_params(5, 0.1, 0.0, 1.0), OutOfRange);
    CHECK_THROWS_AS(make_params(5, 0.1, 1.1, 1.0), OutOfRange);
    CHECK_THROWS_AS(make_params(5, 0.1, 0.5, -1.0), OutOfRange);
    CHECK_NOTHROW(make_params(5, 0.25, 1.0, 0.0));
}

TEST_CASE("derived fields: stay probability, regime, volatility") {
    const auto params = make_params(5, 0.1, 0.5, 8.0);
    CHECK(params.p == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(params.regime == Regime::Smooth);
    CHECK_FALSE(params.volatile_source);

    // N = 2 with large r flips the ladder into the alternating regime
    const auto osc = make_params(2, 0.9, 0.5, 1.0);
    CHECK(osc.regime == Regime::Oscillating);
    CHECK(osc.volatile_source);  // r >= 4p at r = 0.9

    const auto border = make_params(2, 0.7, 0.5, 1.0);
    CHECK(border.regime == Regime::Oscillating);
    CHECK_FALSE(border.volatile_source);  // 0.7 < 4 * 0.3

    // only N = 2 can oscillate: 1 - r >= |p - r| holds for all N >= 3
    for (int N : {3, 4, 5, 8, 16})
        for (double r : {1e-6, 0.01, 0.5 / (N - 1), 1.0 / (N - 1)})
            CHECK(make_params(N, r, 0.5, 1.0).regime == Regime::Smooth);
}

TEST_CASE("belief values and recursion") {
    const auto params = make_params(5, 0.1, 0.5, 8.0);
    CHECK(belief(params, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(belief(params, 1) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(belief(params, 2) == doctest::Approx(0.4).epsilon(1e-12));
    // pi_{k+1} = p pi_k + r (1 - pi_k)
    for (int k = 0; k < 40; ++k) {
        const double next = params.p * belief(params, k) +
                            params.r * (1.0 - belief(params, k));
        CHECK(belief(params, k + 1) == doctest::Approx(next).epsilon(1e-12));
    }
}

TEST_CASE("closed-form ladder values") {
    const auto params = make_params(5, 0.1, 0.5, 8.0);
    CHECK(age_closed(params, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(age_closed(params, 1) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(age_limit(params) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(age_limit(make_params(5, 0.25, 0.5, 8.0)) == doctest::Approx(3.2));
    CHECK(age_limit(make_params(2, 0.5, 0.5, 8.0)) == doctest::Approx(1.0));
}

TEST_CASE("closed form matches the defining sum across both regimes") {
    for (auto [N, r] : std::vector<std::pair<int, double>>{
             {2, 0.1}, {2, 0.5}, {2, 0.9}, {2, 0.99}, {3, 0.3},
             {5, 0.01}, {5, 0.1}, {5, 0.25}, {8, 0.05}, {16, 1.0 / 15}}) {
        const auto params = make_params(N, r, 0.5, 1.0);
        for (int j = 0; j <= 200; ++j)
            CHECK(std::abs(age_closed(params, j) - age_by_sum(params, j)) < 1e-10);
    }
}

TEST_CASE("step identity a_{j+1} - a_j = (1-r)^{j+1} - (p-r)^{j+1}") {
    for (auto [N, r] : std::vector<std::pair<int, double>>{{5, 0.1}, {2, 0.9}}) {
        const auto params = make_params(N, r, 0.5, 1.0);
        for (int j = 0; j < 60; ++j) {
            const double lhs = age_closed(params, j + 1) - age_closed(params, j);
            const double rhs = std::pow(1.0 - params.r, j + 1) -
                               std::pow(params.p - params.r, j + 1);
            CHECK(std::abs(lhs - rhs) < 1e-11);
        }
    }
}

TEST_CASE("regime monotonicity of the ladder") {
    // smooth: nondecreasing
    const auto smooth = make_params(5, 0.1, 0.5, 1.0);
    for (int j = 0; j < 200; ++j)
        CHECK(age_closed(smooth, j + 1) >= age_closed(smooth, j) - 1e-12);
    // oscillating: even subsequence increasing, odd decreasing,
    // odd values above the limit, even below
    const auto osc = make_params(2, 0.9, 0.5, 1.0);
    const double al = age_limit(osc);
    for (int k = 0; k < 40; ++k) {
        CHECK(age_closed(osc, 2 * k + 2) > age_closed(osc, 2 * k));
        CHECK(age_closed(osc, 2 * k + 3) < age_closed(osc, 2 * k + 1));
        CHECK(age_closed(osc, 2 * k) < al);
        CHECK(age_closed(osc, 2 * k + 1) > al);
    }
}

TEST_CASE("age table clamps to the limit beyond its envelope cutoff") {
    const auto params = make_params(5, 0.1, 0.5, 1.0);
    const AgeTable table(params, 1e-9);
    CHECK(table.at(0) == 0.0);
    CHECK(table.at(1) == doctest::Approx(0.4));
    const int jm = table.j_max();
    CHECK(jm > 10);
    // at the cutoff the table still matches the closed form
    CHECK(table.at(jm) == doctest::Approx(age_closed(params, jm)).epsilon(1e-12));
    // beyond it the clamp error is below the tolerance
    CHECK(std::abs(table.at(jm + 1) - age_closed(params, jm + 1)) < 1e-9);
    CHECK(table.at(10 * jm) == table.limit());
    CHECK_THROWS_AS(AgeTable(params, 0.0), OutOfRange);
}

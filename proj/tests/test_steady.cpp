#include <cmath>
#include <vector>

#include "doctest.h"
#include "maoii/steady.hpp"

using namespace maoii;

namespace {

// Brute-force time averages from the stationary distribution, summing the
// geometric tail far past the tolerance.
double avg_age_by_sum(const SourceParams& params, int n) {
    const auto dist = stationary(params, ThresholdPolicy::finite(n));
    double s = 0.0;
    for (int i = 0; i <= n + 2000; ++i) s += dist.at(i) * age_closed(params, i);
    return s;
}

double avg_active_by_sum(const SourceParams& params, int n) {
    const auto policy = ThresholdPolicy::finite(n);
    const auto dist = stationary(params, policy);
    double s = 0.0;
    for (int i = 0; i <= n + 2000; ++i)
        if (threshold_transmits(params, policy, i)) s += dist.at(i);
    return s;
}

}  // namespace

TEST_CASE("active sets per regime") {
    const auto smooth = make_params(5, 0.1, 0.5, 8.0);
    const auto p3 = ThresholdPolicy::finite(3);
    CHECK_FALSE(threshold_transmits(smooth, p3, 0));
    CHECK_FALSE(threshold_transmits(smooth, p3, 2));
    CHECK(threshold_transmits(smooth, p3, 3));
    CHECK(threshold_transmits(smooth, p3, 10));
    CHECK_FALSE(threshold_transmits(smooth, ThresholdPolicy::infinite(), 100));

    // oscillating: odd rungs sit above the limit, so they are always active
    const auto osc = make_params(2, 0.9, 0.5, 8.0);
    const auto p4 = ThresholdPolicy::finite(4);
    CHECK_FALSE(threshold_transmits(osc, p4, 0));
    CHECK(threshold_transmits(osc, p4, 1));
    CHECK_FALSE(threshold_transmits(osc, p4, 2));
    CHECK(threshold_transmits(osc, p4, 3));
    CHECK(threshold_transmits(osc, p4, 4));
    CHECK(threshold_transmits(osc, p4, 5));
    CHECK(threshold_transmits(osc, p4, 6));
}

TEST_CASE("smooth stationary distribution: flat head, geometric tail") {
    const auto params = make_params(5, 0.1, 0.5, 8.0);
    const auto d0 = stationary(params, ThresholdPolicy::finite(0));
    CHECK(d0.at(0) == doctest::Approx(0.5));
    CHECK(d0.at(1) == doctest::Approx(0.25));
    CHECK(d0.at(2) == doctest::Approx(0.125));
    const auto d2 = stationary(params, ThresholdPolicy::finite(2));
    CHECK(d2.at(0) == doctest::Approx(0.25));
    CHECK(d2.at(1) == doctest::Approx(0.25));
    CHECK(d2.at(2) == doctest::Approx(0.25));
    CHECK(d2.at(3) == doctest::Approx(0.125));
}

TEST_CASE("stationary distributions normalize to 1 within 1e-12") {
    const auto smooth = make_params(5, 0.1, 0.5, 8.0);
    for (int n : {0, 1, 2, 5, 20})
        CHECK(stationary(smooth, ThresholdPolicy::finite(n)).total_mass() ==
              doctest::Approx(1.0).epsilon(1e-12));
    const auto osc = make_params(2, 0.9, 0.3, 8.0);
    for (int n : {0, 2, 4, 10})
        CHECK(stationary(osc, ThresholdPolicy::finite(n)).total_mass() ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stationary distribution existence") {
    const auto osc = make_params(2, 0.9, 0.5, 8.0);
    CHECK_THROWS_AS(stationary(osc, ThresholdPolicy::finite(3)), NoStationary);
    const auto smooth = make_params(5, 0.1, 0.5, 8.0);
    CHECK_NOTHROW(stationary(smooth, ThresholdPolicy::finite(3)));
    CHECK_THROWS_AS(stationary(smooth, ThresholdPolicy::infinite()), NoStationary);
    CHECK_THROWS_AS(stationary(smooth, ThresholdPolicy::finite(-1)), OutOfRange);
}

TEST_CASE("closed-form averages equal stationary-weighted sums") {
    const auto smooth = make_params(5, 0.1, 0.5, 8.0);
    for (int n : {0, 1, 2, 5, 17}) {
        const auto policy = ThresholdPolicy::finite(n);
        CHECK(avg_age(smooth, policy) ==
              doctest::Approx(avg_age_by_sum(smooth, n)).epsilon(1e-8));
        CHECK(avg_active(smooth, policy) ==
              doctest::Approx(avg_active_by_sum(smooth, n)).epsilon(1e-10));
    }
    const auto osc = make_params(2, 0.9, 0.5, 8.0);
    for (int n : {0, 2, 4, 8}) {
        const auto policy = ThresholdPolicy::finite(n);
        CHECK(avg_age(osc, policy) ==
              doctest::Approx(avg_age_by_sum(osc, n)).epsilon(1e-8));
        CHECK(avg_active(osc, policy) ==
              doctest::Approx(avg_active_by_sum(osc, n)).epsilon(1e-10));
    }
}

TEST_CASE("average values at frozen points") {
    const auto params = make_params(5, 0.1, 0.5, 8.0);
    CHECK(avg_active(params, ThresholdPolicy::finite(3)) == doctest::Approx(0.4));
    CHECK(avg_cost(params, ThresholdPolicy::finite(3)) ==
          doctest::Approx(4.3195).epsilon(1e-4));
    const auto osc = make_params(2, 0.9, 0.5, 8.0);
    CHECK(avg_active(osc, ThresholdPolicy::finite(2)) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // never transmitting drifts to the limit age at zero activity
    const auto inf = steady_averages(params, ThresholdPolicy::infinite());
    CHECK(inf.avg_age == doctest::Approx(8.0));
    CHECK(inf.avg_active == 0.0);
    CHECK(inf.avg_cost == doctest::Approx(8.0));
}

TEST_CASE("switch costs: quotient route, expanded route, limit") {
    const auto params = make_params(5, 0.1, 0.5, 8.0);
    CHECK(lambda_n(params, 0) == doctest::Approx(0.48485).epsilon(1e-4));
    CHECK(lambda_n(params, 5) == doctest::Approx(7.0876).epsilon(1e-4));
    CHECK(lambda_limit(params) == doctest::Approx(44.0).epsilon(1e-12));
    CHECK(lambda_limit(make_params(5, 0.25, 0.5, 8.0)) ==
          doctest::Approx(6.08).epsilon(1e-12));

    for (auto [N, r] : std::vector<std::pair<int, double>>{
             {3, 0.2}, {5, 0.05}, {5, 0.1}, {8, 0.1}, {16, 0.05}}) {
        const auto p = make_params(N, r, 0.7, 1.0);
        for (int n = 0; n <= 40; ++n)
            CHECK(lambda_n(p, n) ==
                  doctest::Approx(lambda_n_expanded(p, n)).epsilon(1e-8));
        // strictly increasing toward the limit
        for (int n = 0; n < 40; ++n) CHECK(lambda_n(p, n + 1) > lambda_n(p, n));
        // the quotient route saturates at the limit to rounding noise
        CHECK(lambda_n(p, 200) <= lambda_limit(p) * (1.0 + 1e-9));
    }
}

TEST_CASE("even-threshold switch costs exist in the oscillating regime") {
    const auto osc = make_params(2, 0.9, 0.5, 8.0);
    for (int n = 0; n < 10; ++n) {
        const double ln = lambda_2n(osc, n);
        CHECK(std::isfinite(ln));
        CHECK(ln > 0.0);
    }
}

TEST_CASE("head-update matrix and its spectral radius") {
    const auto Q1 = build_Q(1, 0.5);
    REQUIRE(Q1.size() == 1);
    CHECK(Q1[0][0] == doctest::Approx(-0.5));
    CHECK(spectral_radius(Q1) == doctest::Approx(0.5).epsilon(1e-8));

    const auto Q2 = build_Q(2, 0.5);
    REQUIRE(Q2.size() == 2);
    CHECK(Q2[0][0] == doctest::Approx(-0.5));
    CHECK(Q2[0][1] == doctest::Approx(-0.5));
    CHECK(Q2[1][0] == doctest::Approx(1.0));
    CHECK(Q2[1][1] == doctest::Approx(0.0));
    CHECK(spectral_radius(Q2) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));

    CHECK_THROWS_AS(build_Q(0, 0.5), OutOfRange);
}
